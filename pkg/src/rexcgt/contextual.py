"""Bounded contextual-order oracle.

Contexts are games over ``hom(A, bool)``; a game ``G`` over ``A`` is played
against a context ``X`` as ``eval(G + X)``.  The engine enumerates every
context up to a depth and option-width bound and evaluates all of them at once:
for each follower of the games under test it keeps two boolean vectors indexed
by context, "Left wins moving first" and "Left wins moving second".

Level 0 holds the atomic contexts.  Level ``k`` holds every composite whose left
and right option sets are nonempty subsets (of size at most ``width``) of the
contexts at levels below ``k``; a level-``k`` vector is a 2-d grid indexed by
(left subset, right subset).  The oracle never consults the intrinsic order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, InputError, charge
from .gameform import Game, atom, followers, make
from .poset import BOOL, Poset, enumerate_monotone_maps

MAX_GRID = 4 * 10**7


@dataclass
class _Level:
    subsets: np.ndarray  # (n_sub, width) indices into the flattened lower levels, padded by repetition
    n_sub: int


class ContextEngine:
    def __init__(self, poset: Poset, max_depth: int = 2, max_width: int = 2):
        if max_depth < 1 or max_width < 1:
            raise InputError("context bounds must be at least 1")
        self.poset = poset
        self.hom = enumerate_monotone_maps(poset, BOOL)
        self.max_depth = max_depth
        self.max_width = max_width
        self.maps = self.hom.elements
        n = len(self.maps)
        self.sizes = [n]
        self.levels: list[_Level] = []
        for _ in range(max_depth):
            below = sum(self.sizes)
            combos = [c for r in range(1, max_width + 1) for c in itertools.combinations(range(below), r)]
            n_sub = len(combos)
            if n_sub * n_sub > MAX_GRID:
                raise BudgetExceeded(f"{n_sub * n_sub} contexts at one level exceed the oracle grid limit")
            charge(n_sub * n_sub)
            mat = np.array([c + (c[0],) * (max_width - len(c)) for c in combos], dtype=np.int64)
            self.levels.append(_Level(mat, n_sub))
            self.sizes.append(n_sub * n_sub)
        self.total = sum(self.sizes)
        self._vec: dict[int, tuple[list[np.ndarray], list[np.ndarray]]] = {}
        self._top = np.array([[f(a) == BOOL.top for f in self.maps] for a in poset.elements], dtype=bool)

    def _compute(self, x: Game) -> tuple[list[np.ndarray], list[np.ndarray]]:
        if x.is_atom:
            base = self._top[self.poset.idx(x.atom)]
            vl, vr = [base.copy()], [base.copy()]
        else:
            lefts = [self.vectors(o) for o in x.left]
            rights = [self.vectors(o) for o in x.right]
            vl = [np.logical_or.reduce([r[1][0] for r in lefts])]
            vr = [np.logical_and.reduce([r[0][0] for r in rights])]
        for k, lev in enumerate(self.levels, start=1):
            prev_l = np.concatenate(vl[:k])
            prev_r = np.concatenate(vr[:k])
            al = prev_r[lev.subsets].any(axis=1)
            ar = prev_l[lev.subsets].all(axis=1)
            n = lev.n_sub
            if x.is_atom:
                gl = np.broadcast_to(al[:, None], (n, n))
                gr = np.broadcast_to(ar[None, :], (n, n))
            else:
                gl = al[:, None] | np.logical_or.reduce([r[1][k].reshape(n, n) for r in lefts])
                gr = ar[None, :] & np.logical_and.reduce([r[0][k].reshape(n, n) for r in rights])
            vl.append(np.ascontiguousarray(gl).ravel())
            vr.append(np.ascontiguousarray(gr).ravel())
        return vl, vr

    def vectors(self, x: Game, keep: bool = True) -> tuple[list[np.ndarray], list[np.ndarray]]:
        r = self._vec.get(x.uid)
        if r is None:
            if x.poset is not self.poset:
                raise InputError(f"game over {x.poset.name} given to an oracle over {self.poset.name}")
            r = self._compute(x)
            if keep:
                self._vec[x.uid] = r
        return r

    def profile(self, g: Game, keep: bool = True) -> tuple[np.ndarray, np.ndarray]:
        """Left's first-player and second-player results of ``g + X`` for every context ``X``."""
        for f in followers(g)[:-1]:
            self.vectors(f)
        vl, vr = self.vectors(g, keep=keep)
        return np.concatenate(vl), np.concatenate(vr)

    def context(self, index: int) -> Game:
        """Rebuild the context with the given flattened index as a game over the hom-poset."""
        if index < self.sizes[0]:
            return atom(self.hom, self.maps[index])
        index -= self.sizes[0]
        for k, lev in enumerate(self.levels, start=1):
            if index < self.sizes[k]:
                i, j = divmod(index, lev.n_sub)
                left = [self.context(int(t)) for t in set(lev.subsets[i].tolist())]
                right = [self.context(int(t)) for t in set(lev.subsets[j].tolist())]
                return make(self.hom, left, right)
            index -= self.sizes[k]
        raise IndexError(index)


def _engine(g: Game, h: Game, max_depth: int, max_width: int) -> ContextEngine:
    if g.poset is not h.poset:
        raise InputError("games over different posets")
    return ContextEngine(g.poset, max_depth, max_width)


def leq_contextual_oracle(g: Game, h: Game, max_depth: int = 2, max_width: int = 2) -> tuple[bool, Game | None]:
    """Check ``o(g + X) <= o(h + X)`` for every bounded context ``X``.

    Returns ``(True, None)`` when no enumerated context refutes the relation,
    otherwise ``(False, witness)`` with the first refuting context.
    """
    eng = _engine(g, h, max_depth, max_width)
    gl, gr = eng.profile(g)
    hl, hr = eng.profile(h)
    bad = (gl & ~hl) | (gr & ~hr)
    return _verdict(eng, bad)


def tri_contextual_oracle(g: Game, h: Game, max_depth: int = 2, max_width: int = 2) -> tuple[bool, Game | None]:
    """Check ``o_R(g + X) <= o_L(h + X)`` for every bounded context ``X``."""
    eng = _engine(g, h, max_depth, max_width)
    _, gr = eng.profile(g)
    hl, _ = eng.profile(h)
    return _verdict(eng, gr & ~hl)


def _verdict(eng: ContextEngine, bad: np.ndarray) -> tuple[bool, Game | None]:
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        return True, None
    return False, eng.context(int(hits[0]))


def context_count(poset: Poset, max_depth: int, max_width: int) -> int:
    n = len(enumerate_monotone_maps(poset, BOOL))
    total = n
    for _ in range(max_depth):
        n_sub = sum(math.comb(total, r) for r in range(1, max_width + 1))
        total += n_sub * n_sub
    return total
