"""Enumerating and sampling games, and the census of distinct premotive *-antimonotone games."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .canonical import canon
from .errors import charge
from .gameform import Game, Parity, atom, make, parity, serialize
from .gameprops import is_premotive, is_star_antimonotone
from .order import equiv
from .poset import Poset
from .rexboard import RegionPosition, SetColoringGame, coloring_game_form, game_form


def subsets(items: Sequence, max_size: int | None = None) -> Iterator[tuple]:
    top = len(items) if max_size is None else min(max_size, len(items))
    for k in range(1, top + 1):
        yield from itertools.combinations(items, k)


def games_up_to(poset: Poset, depth: int, width: int | None | Sequence[int | None] = None) -> list[Game]:
    """Every game over ``poset`` of depth at most ``depth`` whose option sets have at most ``width`` members.

    ``width`` may also be a sequence giving the bound for each level in turn
    (level 1 builds from atoms); ``None`` means unbounded.
    """
    widths = list(width) if isinstance(width, (list, tuple)) else [width] * depth
    if len(widths) < depth:
        raise ValueError("need one width per level")
    pool = [atom(poset, e) for e in poset.elements]
    for level in range(depth):
        opts = list(subsets(pool, widths[level]))
        new = {}
        for ls in opts:
            for rs in opts:
                charge()
                g = make(poset, ls, rs)
                new[g.uid] = g
        for g in pool:
            new.setdefault(g.uid, g)
        pool = sorted(new.values(), key=lambda g: (g.depth, serialize(g)))
    return pool


def random_game(rng: random.Random, poset: Poset, depth: int, width: int = 3, p_atom: float = 0.25) -> Game:
    if depth == 0 or rng.random() < p_atom:
        return atom(poset, rng.choice(poset.elements))
    nl = rng.randint(1, width)
    nr = rng.randint(1, width)
    return make(
        poset,
        [random_game(rng, poset, depth - 1, width, p_atom) for _ in range(nl)],
        [random_game(rng, poset, depth - 1, width, p_atom) for _ in range(nr)],
    )


def random_coloring_game(rng: random.Random, n_cells: int) -> SetColoringGame:
    """An antimonotone payoff: Left loses once the black set contains one of a few random sets."""
    cells = tuple(f"c{i}" for i in range(n_cells))
    k = rng.randint(0, 3)
    losing = [frozenset(rng.sample(cells, rng.randint(1, n_cells))) for _ in range(k)]
    return SetColoringGame(cells, lambda black, losing=tuple(losing): not any(m <= black for m in losing))


def random_region(rng: random.Random, n_cells: int, n_terminals: int, free: bool = False, stones: int = 0) -> RegionPosition:
    cells = tuple(f"c{i}" for i in range(n_cells))
    edges = frozenset(frozenset(p) for p in itertools.combinations(cells, 2) if rng.random() < 0.45)
    placed = {c: rng.choice("BW") for c in rng.sample(cells, min(stones, n_cells))}
    if free:
        return RegionPosition("free", cells, edges, stones=placed)
    terms = tuple(str(i + 1) for i in range(n_terminals))
    tedges = frozenset((t, c) for t in terms for c in cells if rng.random() < 0.35)
    return RegionPosition("shannon", cells, edges, terms, tedges, placed)


def random_position_game(rng: random.Random, max_cells: int = 4) -> Game:
    """Game form of a random small region or coloring game; these are premotive with parity."""
    kind = rng.random()
    n = rng.randint(1, max_cells)
    if kind < 0.4:
        return coloring_game_form(random_coloring_game(rng, n))
    if kind < 0.55:
        return game_form(random_region(rng, min(n, 3), 0, free=True, stones=rng.randint(0, 1)))
    return game_form(random_region(rng, n, rng.randint(2, 3), stones=rng.randint(0, 2)))


@dataclass
class Census:
    representatives: list[Game]
    candidates: int
    classes_by_equivalence: int


def distinct_games(poset: Poset, max_depth: int, max_width: int | None = None) -> Census:
    """Canonical forms of all premotive *-antimonotone games over ``poset`` up to ``max_depth``.

    Level by level, candidate games take their options from the canonical
    representatives found so far.  Any game in the class is equivalent to such
    a candidate, because replacing options by equivalent canonical forms keeps
    the game equivalent and keeps both properties.  Candidates are bucketed
    twice: by canonical form and by mutual intrinsic order.
    """
    reps: dict[int, Game] = {}
    for e in poset.elements:
        a = atom(poset, e)
        reps[a.uid] = a
    seen: list[Game] = list(reps.values())
    count = 0
    for _ in range(max_depth):
        pool = sorted(reps.values(), key=serialize)
        opts = list(subsets(pool, max_width))
        for ls in opts:
            for rs in opts:
                charge()
                g = make(poset, ls, rs)
                if parity(g) is Parity.NONE or not is_premotive(g) or not is_star_antimonotone(g):
                    continue
                count += 1
                c = canon(g)
                reps.setdefault(c.uid, c)
                seen.append(g)
    buckets: list[Game] = []
    for g in seen:
        if not any(equiv(g, b) for b in buckets):
            buckets.append(g)
    return Census(sorted(reps.values(), key=serialize), count, len(buckets))
