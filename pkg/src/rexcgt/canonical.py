"""Simplification to canonical form for premotive games with parity.

Options are canonicalized first; then the parent is rewritten one step at a
time (drop a dominated option, bypass a non-simple reversible option, collapse
``{{bot|x}|{x|top}}`` to ``x``) until nothing applies.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError, charge
from .gameform import Game, Parity, atomize, bottom, followers, make, parity, serialize, sorted_options, top
from .gameprops import first_non_premotive
from .order import leq

DOMINATED = "dominated-removal"
REVERSIBLE = "reversible-bypass"
COLLAPSE = "atomize-collapse"


@dataclass(frozen=True)
class Step:
    kind: str
    path: str
    before: Game
    after: Game

    def to_text(self) -> str:
        return f"{self.kind} {self.path}: {serialize(self.before)} -> {serialize(self.after)}"


@dataclass
class SimplificationTrace:
    steps: list[Step] = field(default_factory=list)

    def to_text(self) -> str:
        return "".join(s.to_text() + "\n" for s in self.steps)

    def replay(self, g: Game) -> Game:
        """Rebuild ``g`` bottom-up, applying the recorded rewrites wherever their source appears."""
        rewrite = {s.before.uid: s.after for s in self.steps}
        memo: dict[int, Game] = {}

        def go(x: Game) -> Game:
            r = memo.get(x.uid)
            if r is None:
                r = x if x.is_atom else make(x.poset, [go(o) for o in x.left], [go(o) for o in x.right])
                while r.uid in rewrite:
                    r = rewrite[r.uid]
                memo[x.uid] = r
            return r

        return go(g)


def check_preconditions(g: Game) -> None:
    if parity(g) is Parity.NONE:
        raise PreconditionError(f"game has no parity: {_short(g)}")
    bad = first_non_premotive(g)
    if bad is not None:
        raise PreconditionError(f"game is not premotive; failing follower {_short(bad)}")


def _short(g: Game) -> str:
    s = serialize(g) if g.depth <= 8 else f"<depth {g.depth} game>"
    return s if len(s) <= 200 else s[:200] + "..."


def _ser_key(g: Game) -> str:
    return serialize(g)


def _dominated_step(g: Game) -> Game:
    left = sorted_options(g.left)
    for h in left:
        for k in left:
            if k is not h and leq(h, k) and (not leq(k, h) or _ser_key(k) < _ser_key(h)):
                return make(g.poset, [x for x in g.left if x is not h], g.right)
    right = sorted_options(g.right)
    for h in right:
        for k in right:
            if k is not h and leq(k, h) and (not leq(h, k) or _ser_key(k) < _ser_key(h)):
                return make(g.poset, g.left, [x for x in g.right if x is not h])
    return g


def is_simple_left(h: Game) -> bool:
    return len(h.left) == 1 and h.left[0] is bottom(h.poset) and len(h.right) == 1 and h.right[0].is_atom


def is_simple_right(h: Game) -> bool:
    return len(h.right) == 1 and h.right[0] is top(h.poset) and len(h.left) == 1 and h.left[0].is_atom


def _reversible_step(g: Game) -> Game:
    p = g.poset
    for h in sorted_options(g.left):
        if h.is_atom or is_simple_left(h):
            continue
        for k in sorted_options(h.right):
            if leq(k, g):
                repl = list(k.left) if not k.is_atom else [make(p, [bottom(p)], [k])]
                return make(p, [x for x in g.left if x is not h] + repl, g.right)
    for h in sorted_options(g.right):
        if h.is_atom or is_simple_right(h):
            continue
        for k in sorted_options(h.left):
            if leq(g, k):
                repl = list(k.right) if not k.is_atom else [make(p, [k], [top(p)])]
                return make(p, g.left, [x for x in g.right if x is not h] + repl)
    return g


def atomized_value(g: Game) -> Game | None:
    """``x`` if ``g`` is literally ``{{bot|x}|{x|top}}``, else None."""
    if g.is_atom or len(g.left) != 1 or len(g.right) != 1:
        return None
    a = g.left[0]
    if len(a.right) == 1 and a.right[0].is_atom:
        x = a.right[0]
        if atomize(x) is g:
            return x
    return None


def _collapse_step(g: Game) -> Game:
    x = atomized_value(g)
    return g if x is None else x


_STEPS = {DOMINATED: _dominated_step, REVERSIBLE: _reversible_step, COLLAPSE: _collapse_step}


def _simplify_node(g: Game, path: str, trace: SimplificationTrace | None, order: tuple[str, ...]) -> Game:
    cur = g
    while not cur.is_atom:
        for kind in order:
            new = _STEPS[kind](cur)
            if new is not cur:
                if trace is not None:
                    trace.steps.append(Step(kind, path, cur, new))
                cur = new
                break
        else:
            break
    return cur


def canonical_form(
    g: Game,
    order: tuple[str, ...] = (DOMINATED, REVERSIBLE, COLLAPSE),
    check: bool = True,
) -> tuple[Game, SimplificationTrace]:
    """Return the canonical form of a premotive game with parity, with the rewrite log.

    ``order`` sets the priority among the three rewrite kinds at each node.
    """
    if check:
        check_preconditions(g)
    trace = SimplificationTrace()
    memo: dict[int, Game] = {}

    def go(x: Game, path: str) -> Game:
        r = memo.get(x.uid)
        if r is None:
            charge()
            if x.is_atom:
                r = x
            else:
                ls = [go(o, f"{path}.L{i}") for i, o in enumerate(sorted_options(x.left))]
                rs = [go(o, f"{path}.R{i}") for i, o in enumerate(sorted_options(x.right))]
                r = _simplify_node(make(x.poset, ls, rs), path, trace, order)
            memo[x.uid] = r
        return r

    return go(g, "root"), trace


def canon(g: Game) -> Game:
    return canonical_form(g)[0]


def remove_dominated(g: Game) -> Game:
    """Drop dominated options of ``g`` (one per pass) until none remain."""
    check_preconditions(g)
    return _fix(g, _dominated_step)


def bypass_reversible(g: Game) -> Game:
    """Bypass non-simple reversible options of ``g`` until none remain."""
    check_preconditions(g)
    return _fix(g, _reversible_step)


def _fix(g: Game, step) -> Game:
    while not g.is_atom:
        new = step(g)
        if new is g:
            break
        g = new
    return g


def collapse_atomize(g: Game) -> Game:
    """Replace every subgame of the form ``{{bot|x}|{x|top}}`` by ``x``."""
    memo: dict[int, Game] = {}

    def go(x: Game) -> Game:
        r = memo.get(x.uid)
        if r is None:
            if x.is_atom:
                r = x
            else:
                r = make(x.poset, [go(o) for o in x.left], [go(o) for o in x.right])
                r = _collapse_step(r)
            memo[x.uid] = r
        return r

    return go(g)


def _locally_canonical(g: Game) -> bool:
    if g.is_atom:
        return True
    left, right = g.left, g.right
    if any(h is not k and leq(h, k) for h in left for k in left):
        return False
    if any(h is not k and leq(k, h) for h in right for k in right):
        return False
    for h in left:
        if not h.is_atom and not is_simple_left(h) and any(leq(k, g) for k in h.right):
            return False
    for h in right:
        if not h.is_atom and not is_simple_right(h) and any(leq(g, k) for k in h.left):
            return False
    return atomized_value(g) is None


def is_canonical(g: Game) -> bool:

    return all(_locally_canonical(f) for f in followers(g))
