"""Command line front end.

Exit codes: 0 success, 1 input error, 2 budget exhausted, 3 precondition violated,
4 selftest failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .canonical import canonical_form
from .errors import DEFAULT_BUDGET, BudgetExceeded, InputError, PreconditionError, budget
from .gameform import Game, parse, serialize
from .gameprops import property_report
from .generate import distinct_games
from .order import equiv, leq, leq_contextual_oracle, outcome, tri, tri_contextual_oracle
from .poset import resolve_poset
from .rexboard import game_form, load_position, oracle_outcome, parse_manifest, run_glue


def _games(args: argparse.Namespace) -> list[Game]:
    out = []
    for path in args.inputs:
        if not os.path.exists(path):
            raise InputError(f"no such file: {path}")
        out.append(game_form(load_position(path)))
    if args.expr:
        poset = resolve_poset(args.poset)
        out.extend(parse(e, poset) for e in args.expr)
    return out


def _one(args: argparse.Namespace) -> Game:
    gs = _games(args)
    if len(gs) != 1:
        raise InputError(f"expected exactly one input, got {len(gs)}")
    return gs[0]


def _b(v: bool) -> str:
    return "true" if v else "false"


def cmd_outcome(args) -> str:
    o = outcome(_one(args))
    return f"oL: {'top' if o.oL else 'bot'}\noR: {'top' if o.oR else 'bot'}\noutcome: {o}\n"


def cmd_gameform(args) -> str:
    return serialize(_one(args)) + "\n"


def cmd_canon(args) -> str:
    c, trace = canonical_form(_one(args))
    text = serialize(c) + "\n"
    if args.trace:
        text += "trace:\n" + trace.to_text()
    return text


def cmd_compare(args) -> str:
    gs = _games(args)
    if len(gs) != 2:
        raise InputError(f"compare needs two games, got {len(gs)}")
    a, b = gs
    lines = [
        f"A <= B: {_b(leq(a, b))}",
        f"A <| B: {_b(tri(a, b))}",
        f"B <= A: {_b(leq(b, a))}",
        f"B <| A: {_b(tri(b, a))}",
        f"A == B: {_b(equiv(a, b))}",
    ]
    if args.contextual:
        for name, (x, y) in (("A <=c B", (a, b)), ("B <=c A", (b, a))):
            ok, w = leq_contextual_oracle(x, y, args.depth or 2, args.width or 2)
            lines.append(f"{name}: {_b(ok)}" + ("" if ok else f" (witness {serialize(w)})"))
        for name, (x, y) in (("A <|c B", (a, b)), ("B <|c A", (b, a))):
            ok, w = tri_contextual_oracle(x, y, args.depth or 2, args.width or 2)
            lines.append(f"{name}: {_b(ok)}" + ("" if ok else f" (witness {serialize(w)})"))
    return "\n".join(lines) + "\n"


def cmd_props(args) -> str:
    return property_report(_one(args)).to_text()


def cmd_distinct(args) -> str:
    poset = resolve_poset(args.poset)
    census = distinct_games(poset, args.depth if args.depth is not None else 3, args.width)
    lines = [f"classes: {len(census.representatives)}"]
    lines += [serialize(g) for g in census.representatives]
    return "\n".join(lines) + "\n"


def cmd_glue(args) -> str:
    if len(args.inputs) != 1:
        raise InputError("glue needs one manifest file")
    path = args.inputs[0]
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    res = run_glue(parse_manifest(text, os.path.dirname(os.path.abspath(path))))
    return f"canonical: {serialize(res.canonical)}, outcome: {res.outcome}\n"


def cmd_oracle(args) -> str:
    if len(args.inputs) != 1:
        raise InputError("oracle needs one board file")
    o = oracle_outcome(load_position(args.inputs[0]))
    return f"oL: {'top' if o.oL else 'bot'}\noR: {'top' if o.oR else 'bot'}\noutcome: {o}\n"


def cmd_selftest(args) -> str:
    from .selftest import run_selftest

    lines, ok = run_selftest()
    if not ok:
        raise _Failed("\n".join(lines) + "\n")
    return "\n".join(lines) + "\n"


class _Failed(Exception):
    pass


COMMANDS = {
    "outcome": cmd_outcome,
    "gameform": cmd_gameform,
    "canon": cmd_canon,
    "compare": cmd_compare,
    "props": cmd_props,
    "distinct": cmd_distinct,
    "glue": cmd_glue,
    "oracle": cmd_oracle,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rexcgt", description="Games over posets and Reverse Hex analysis.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("inputs", nargs="*", help="board, region or manifest files")
    ap.add_argument("--expr", action="append", default=[], help="inline game expression (repeatable)")
    ap.add_argument("--poset", default="bool", help="builtin poset name (one, bool, chain3, diamond) or poset file")
    ap.add_argument("--trace", action="store_true", help="print the simplification log after the canonical form")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget for exhaustive searches")
    ap.add_argument("--depth", "--max-depth", type=int, default=None, help="enumeration or context depth")
    ap.add_argument("--width", type=int, default=None, help="option-set width bound")
    ap.add_argument("--contextual", action="store_true", help="compare: also run the bounded contextual oracle")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_intermixed_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    try:
        with budget(args.budget):
            out = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    except _Failed as exc:
        sys.stdout.write(str(exc))
        return 4
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
