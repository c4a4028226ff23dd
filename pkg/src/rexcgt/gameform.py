"""Game forms over finite posets.

A game is either an atom (an element of its poset) or a composite with
nonempty left and right option sets.  Games are hash-consed: constructing a
structurally equal game returns the existing object, so ``is`` and ``==`` coincide
with structural equality and memo tables can key on ``uid``.
"""
from __future__ import annotations

import enum
import hashlib
import itertools
import threading
from typing import Iterable, Sequence

from .errors import InputError
from .poset import (
    BOOL,
    ONE,
    MonotoneMap,
    Poset,
    dual as dual_poset,
    dual_of,
    element_label,
    product,
    product_element,
    serialize_poset,
)


class Parity(enum.Enum):
    EVEN = "Even"
    ODD = "Odd"
    NONE = "NoParity"

    def flip(self) -> "Parity":
        return {Parity.EVEN: Parity.ODD, Parity.ODD: Parity.EVEN, Parity.NONE: Parity.NONE}[self]


class Game:
    __slots__ = ("poset", "atom", "left", "right", "uid", "digest", "depth", "_ser", "_parity", "__weakref__")

    poset: Poset
    atom: object
    left: tuple["Game", ...]
    right: tuple["Game", ...]

    def __init__(self) -> None:  # pragma: no cover - guarded constructor
        raise TypeError("use atom() or make()")

    @property
    def is_atom(self) -> bool:
        return not self.left

    @property
    def options(self) -> tuple["Game", ...]:
        return self.left + self.right

    def __repr__(self) -> str:
        if self.depth <= 6:
            return f"Game({serialize(self)})"
        return f"Game(depth={self.depth}, uid={self.uid})"

    def __reduce__(self):
        if self.is_atom:
            return (atom, (self.poset, self.atom))
        return (make, (self.poset, self.left, self.right))

    def __lt__(self, other: "Game") -> bool:
        return (self.digest, self.uid) < (other.digest, other.uid)


_table: dict[tuple, Game] = {}
_lock = threading.Lock()
_uids = itertools.count()
_poset_digests: dict[int, bytes] = {}


def _poset_digest(p: Poset) -> bytes:
    d = _poset_digests.get(id(p))
    if d is None:
        d = hashlib.blake2b(serialize_poset(p).encode(), digest_size=8).digest()
        _poset_digests[id(p)] = d
    return d


def _new(key: tuple, poset: Poset, atom_value: object, left: tuple, right: tuple, digest: int) -> Game:
    with _lock:
        g = _table.get(key)
        if g is not None:
            return g
        g = object.__new__(Game)
        g.poset = poset
        g.atom = atom_value
        g.left = left
        g.right = right
        g.uid = next(_uids)
        g.digest = digest
        g.depth = 0 if not left else 1 + max(o.depth for o in left + right)
        g._ser = None
        g._parity = None
        _table[key] = g
        return g


def atom(poset: Poset, value: object) -> Game:
    key = (poset, value)
    g = _table.get(key)
    if g is not None:
        return g
    if value not in poset:
        raise InputError(f"{value!r} is not an element of poset {poset.name}")
    h = hashlib.blake2b(_poset_digest(poset) + b"a" + element_label(value).encode(), digest_size=8)
    return _new(key, poset, value, (), (), int.from_bytes(h.digest(), "big"))


def make(poset: Poset | None, left: Iterable[Game], right: Iterable[Game]) -> Game:
    """The composite ``{left | right}``; duplicate options collapse."""
    ls = sorted(set(left))
    rs = sorted(set(right))
    if not ls or not rs:
        raise InputError("composite games need nonempty left and right option sets")
    if poset is None:
        poset = ls[0].poset
    for o in itertools.chain(ls, rs):
        if o.poset is not poset:
            raise InputError(f"option over {o.poset.name} inside a game over {poset.name}")
    lt = tuple(ls)
    rt = tuple(rs)
    key = (poset, tuple(o.uid for o in lt), tuple(o.uid for o in rt))
    g = _table.get(key)
    if g is not None:
        return g
    h = hashlib.blake2b(digest_size=8)
    h.update(b"c")
    for o in lt:
        h.update(o.digest.to_bytes(8, "big"))
    h.update(b"|")
    for o in rt:
        h.update(o.digest.to_bytes(8, "big"))
    return _new(key, poset, None, lt, rt, int.from_bytes(h.digest(), "big"))


def game(left: Iterable[Game], right: Iterable[Game]) -> Game:
    return make(None, left, right)


ZERO = atom(ONE, "0")
STAR = make(ONE, [ZERO], [ZERO])


def top(p: Poset = BOOL) -> Game:
    return atom(p, p.top)


def bottom(p: Poset = BOOL) -> Game:
    return atom(p, p.bottom)


def atomize(x: Game) -> Game:
    """``{{bot|x} | {x|top}}`` for an atomic ``x``."""
    if not x.is_atom:
        raise InputError("atomize expects an atomic game")
    p = x.poset
    return make(p, [make(p, [bottom(p)], [x])], [make(p, [x], [top(p)])])


_sum_memo: dict[tuple[int, int], Game] = {}


def add(g: Game, h: Game) -> Game:
    """Disjunctive sum; atoms pair up in the product poset."""
    key = (g.uid, h.uid)
    r = _sum_memo.get(key)
    if r is not None:
        return r
    p, q = g.poset, h.poset
    pq = product(p, q)
    if g.is_atom and h.is_atom:
        r = atom(pq, product_element(p, q, g.atom, h.atom))
    elif h.is_atom:
        r = make(pq, [add(x, h) for x in g.left], [add(x, h) for x in g.right])
    elif g.is_atom:
        r = make(pq, [add(g, x) for x in h.left], [add(g, x) for x in h.right])
    else:
        r = make(
            pq,
            [add(x, h) for x in g.left] + [add(g, x) for x in h.left],
            [add(x, h) for x in g.right] + [add(g, x) for x in h.right],
        )
    _sum_memo[key] = r
    return r


def add_all(games: Sequence[Game]) -> Game:
    """Left-nested sum ``((g0 + g1) + g2) + ...``."""
    acc = games[0]
    for g in games[1:]:
        acc = add(acc, g)
    return acc


def map_game(phi: MonotoneMap, g: Game) -> Game:
    if g.poset is not phi.domain:
        raise InputError(f"map defined on {phi.domain.name} applied to a game over {g.poset.name}")
    memo: dict[int, Game] = {}
    table = phi.table
    cod = phi.codomain

    def go(x: Game) -> Game:
        r = memo.get(x.uid)
        if r is None:
            if x.is_atom:
                r = atom(cod, table[x.atom])
            else:
                r = make(cod, [go(o) for o in x.left], [go(o) for o in x.right])
            memo[x.uid] = r
        return r

    return go(g)


_dual_memo: dict[int, Game] = {}


def dual(g: Game) -> Game:
    """Swap the roles of the players; atoms move to the dual poset."""
    r = _dual_memo.get(g.uid)
    if r is not None:
        return r
    dp = dual_poset(g.poset)
    if g.is_atom:
        r = atom(dp, dual_of(g.poset, g.atom))
    else:
        r = make(dp, [dual(o) for o in g.right], [dual(o) for o in g.left])
    _dual_memo[g.uid] = r
    return r


def parity(g: Game) -> Parity:
    if g._parity is None:
        if g.is_atom:
            g._parity = Parity.EVEN
        else:
            ps = {parity(o) for o in g.options}
            if ps == {Parity.ODD}:
                g._parity = Parity.EVEN
            elif ps == {Parity.EVEN}:
                g._parity = Parity.ODD
            else:
                g._parity = Parity.NONE
    return g._parity


def followers(g: Game) -> list[Game]:
    """All followers including ``g``, children before parents."""
    seen: set[int] = set()
    out: list[Game] = []
    stack = [(g, False)]
    while stack:
        x, done = stack.pop()
        if done:
            out.append(x)
            continue
        if x.uid in seen:
            continue
        seen.add(x.uid)
        stack.append((x, True))
        for o in reversed(x.options):
            if o.uid not in seen:
                stack.append((o, False))
    return out


def serialize(g: Game) -> str:
    if g._ser is None:
        if g.is_atom:
            g._ser = g.poset.label(g.atom)
        else:
            ls = ",".join(sorted(serialize(o) for o in g.left))
            rs = ",".join(sorted(serialize(o) for o in g.right))
            g._ser = "{" + ls + "|" + rs + "}"
    return g._ser


def sorted_options(opts: Iterable[Game]) -> list[Game]:
    return sorted(opts, key=serialize)


def parse(text: str, poset: Poset) -> Game:
    """Read a game expression such as ``{bot,{bot|top}|top}`` over ``poset``."""
    s = "".join(text.split())
    pos = 0

    def fail(msg: str) -> InputError:
        return InputError(f"column {pos + 1}: {msg} in {s!r}")

    def read_game() -> Game:
        nonlocal pos
        if pos >= len(s):
            raise fail("unexpected end of input")
        if s[pos] == "{":
            pos += 1
            left = read_list("|")
            pos += 1
            right = read_list("}")
            pos += 1
            return make(poset, left, right)
        start = pos
        depth = 0
        while pos < len(s):
            c = s[pos]
            if c in "([":
                depth += 1
            elif c in ")]":
                depth -= 1
                if depth < 0:
                    raise fail("unbalanced bracket")
            elif depth == 0 and c in "{}|,":
                break
            pos += 1
        name = s[start:pos]
        if not name or depth:
            raise fail("expected an atom name")
        return atom(poset, poset.element(name))

    def read_list(stop: str) -> list[Game]:
        nonlocal pos
        items = [read_game()]
        while pos < len(s) and s[pos] == ",":
            pos += 1
            items.append(read_game())
        if pos >= len(s) or s[pos] != stop:
            raise fail(f"expected {stop!r}")
        return items

    g = read_game()
    if pos != len(s):
        raise fail("trailing input")
    return g


def clear_caches() -> None:
    """Drop operation memo tables (the intern table is kept so identities stay valid)."""
    _sum_memo.clear()
    _dual_memo.clear()
