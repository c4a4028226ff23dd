"""Fast end-to-end sanity checks run by ``rexcgt selftest``."""
from __future__ import annotations

from typing import Callable

from . import data_path
from .canonical import canon
from .gameform import STAR, ZERO, add, make, parse, serialize
from .order import RIGHT, comparison_game, leq, left_wins, outcome
from .poset import BOOL
from .rexboard import dead_cells, game_form, load_position, oracle_outcome, outcome_poset, parse_manifest, run_glue


def _stars() -> bool:
    ss = add(STAR, STAR)
    return ss is make(None, [STAR], [STAR]) and canon(ss) is ZERO and leq(ss, ZERO) and leq(ZERO, ss)


def _nontransitive() -> bool:
    w = parse("{{bot|bot}|{top|top}}", BOOL)
    t, b = parse("top", BOOL), parse("bot", BOOL)
    return leq(t, w) and leq(w, b) and not leq(t, b)


def _small_board() -> bool:
    r = load_position(data_path("small_3x2.board"))
    return (
        str(outcome(game_form(r))) == "N"
        and str(oracle_outcome(r.place("r2c1", "W"))) == "P"
        and dead_cells(r) == ["r2c1"]
    )


def _posets() -> bool:
    sizes = [len(outcome_poset(load_position(data_path(f)))[0]) for f in ("two_free_cells.region", "three_terminal_chain.region", "g2.region")]
    return sizes == [4, 3, 5]


def _worked() -> bool:
    g1 = canon(game_form(load_position(data_path("g1.region"))))
    with open(data_path("worked.manifest")) as fh:
        res = run_glue(parse_manifest(fh.read(), data_path("")))
    board = oracle_outcome(load_position(data_path("worked_10x5.board")))
    return serialize(g1) == "{(1,2)|top}" and serialize(res.canonical) == "top" and str(res.outcome) == "L" == str(board)


def _copycat() -> bool:
    g = parse("{{bot|top},top|bot,{top|top}}", BOOL)
    return left_wins(comparison_game(g, g), RIGHT)


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("star identities", _stars),
    ("non-transitivity witness", _nontransitive),
    ("3x2 board outcomes and dead cell", _small_board),
    ("outcome poset sizes", _posets),
    ("worked example", _worked),
    ("copycat", _copycat),
]


def run_selftest() -> tuple[list[str], bool]:
    lines = []
    ok = True
    for name, fn in CHECKS:
        passed = bool(fn())
        ok &= passed
        lines.append(f"{'ok' if passed else 'FAIL'} {name}")
    return lines, ok
