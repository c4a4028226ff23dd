"""Algebraic laws of the intrinsic order, each returning a list of counterexample descriptions."""
from __future__ import annotations

import numpy as np

from rexcgt.gameform import STAR, Game, Parity, add, bottom, parity, serialize, top
from rexcgt.gameprops import is_premotive, is_star_antimonotone, lookahead_holds
from rexcgt.order import LEFT, RIGHT, comparison_game, comparison_wins, leq, left_wins, tri


def _s(g: Game) -> str:
    return serialize(g) if g.depth <= 4 else f"<depth {g.depth} uid {g.uid}>"


def relation_matrices(games: list[Game]) -> tuple[np.ndarray, np.ndarray]:
    """``<=`` and ``<|`` on a follower-closed list of games over one poset.

    Iterates the defining recursion on whole matrices; entries for a pair whose
    depths sum to ``s`` are final after ``s + 1`` rounds.
    """
    n = len(games)
    pos = {g.uid: i for i, g in enumerate(games)}

    def padded(side: str) -> np.ndarray:
        w = max([len(getattr(g, side)) for g in games] + [1])
        out = np.full((n, w), n, dtype=np.int64)
        for i, g in enumerate(games):
            for k, o in enumerate(getattr(g, side)):
                out[i, k] = pos[o.uid]
        return out

    lo, ro = padded("left"), padded("right")
    atoms = np.array([g.is_atom for g in games])
    poset = games[0].poset
    base = np.zeros((n, n), dtype=bool)
    ai = np.flatnonzero(atoms)
    for i in ai:
        for j in ai:
            base[i, j] = poset.leq(games[i].atom, games[j].atom)
    both_atoms = atoms[:, None] & atoms[None, :]
    L = base.copy()
    T = np.zeros((n, n), dtype=bool)
    for _ in range(2 * max(g.depth for g in games) + 2):
        nt = np.vstack([~T, np.zeros((1, n), dtype=bool)])
        bad = nt[lo].any(axis=1) | np.hstack([~T, np.zeros((n, 1), dtype=bool)])[:, ro].any(axis=2)
        L_new = np.where(both_atoms, base, ~bad)
        lr = np.vstack([L, np.zeros((1, n), dtype=bool)])
        T_new = lr[ro].any(axis=1) | np.hstack([L, np.zeros((n, 1), dtype=bool)])[:, lo].any(axis=2)
        if (L_new == L).all() and (T_new == T).all():
            break
        L, T = L_new, T_new
    return L, T


def parity_vector(games: list[Game]) -> np.ndarray:
    """0 even, 1 odd, -1 none."""
    code = {Parity.EVEN: 0, Parity.ODD: 1, Parity.NONE: -1}
    return np.array([code[parity(g)] for g in games])


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0


# ------------------------------------------------------------ single games


def copycat(g: Game, literal: bool = True) -> list[str]:
    """Left wins the self-comparison game moving second."""
    ok = left_wins(comparison_game(g, g), RIGHT) if literal else comparison_wins(g, g, left_moves=False)
    return [] if ok else [f"copycat fails on {_s(g)}"]


def even_between_extremes(g: Game) -> list[str]:
    if parity(g) is not Parity.EVEN:
        return []
    p = g.poset
    return [] if leq(bottom(p), g) and leq(g, top(p)) else [f"even game outside [bot, top]: {_s(g)}"]


def star_antimonotone_has_parity(g: Game) -> list[str]:
    if is_star_antimonotone(g) and parity(g) is Parity.NONE:
        return [f"*-antimonotone game without parity: {_s(g)}"]
    return []


def even_premotive_lookahead(g: Game) -> list[str]:
    if parity(g) is Parity.EVEN and is_premotive(g) and not lookahead_holds(g):
        return [f"even premotive game with outcome P: {_s(g)}"]
    return []


# ------------------------------------------------------------ pairs


def comparison_agrees(g: Game, h: Game) -> list[str]:
    """``g <= h`` iff Left wins the comparison game second with the last move; ``g <| h`` likewise first."""
    c = comparison_game(g, h)
    out = []
    if leq(g, h) != left_wins(c, RIGHT, lastmove_required=True):
        out.append(f"leq vs comparison game: {_s(g)} / {_s(h)}")
    if tri(g, h) != left_wins(c, LEFT, lastmove_required=True):
        out.append(f"tri vs comparison game: {_s(g)} / {_s(h)}")
    return out


def sum_compatible(g: Game, g2: Game, h: Game, h2: Game) -> list[str]:
    out = []
    lg, lh = leq(g, g2), leq(h, h2)
    tg, th = tri(g, g2), tri(h, h2)
    if not (lg or lh or tg or th):
        return out
    a, b = add(g, h), add(g2, h2)
    if lg and lh and not leq(a, b):
        out.append(f"<= not additive: {_s(g)} <= {_s(g2)}, {_s(h)} <= {_s(h2)}")
    if (tg and lh or lg and th) and not tri(a, b):
        out.append(f"<| not additive: {_s(g)} ? {_s(g2)}, {_s(h)} ? {_s(h2)}")
    return out


def premotive_sum(g: Game, h: Game) -> list[str]:
    if is_premotive(g) and is_premotive(h) and not is_premotive(add(g, h)):
        return [f"sum of premotive games not premotive: {_s(g)} + {_s(h)}"]
    return []


def star_cancellation(g: Game, h: Game) -> list[str]:
    """For premotive games, ``g + * <= h`` iff ``g <= h + *``."""
    if leq(add(g, STAR), h) != leq(g, add(h, STAR)):
        return [f"*-cancellation fails: {_s(g)} / {_s(h)}"]
    return []


def tri_star_bridge(g: Game, h: Game) -> list[str]:
    """For premotive *-antimonotone games, ``g <| h`` iff ``g <= h + *`` iff ``g + * <= h``."""
    t = tri(g, h)
    if not (t == leq(g, add(h, STAR)) == leq(add(g, STAR), h)):
        return [f"<| / +* bridge fails: {_s(g)} / {_s(h)}"]
    return []


# ------------------------------------------------------------ whole relation matrices


def parity_matching(L: np.ndarray, T: np.ndarray, par: np.ndarray) -> int:
    """Pairs with parity where ``<=`` joins mismatched or ``<|`` joins matched parities."""
    has = par >= 0
    both = has[:, None] & has[None, :]
    same = par[:, None] == par[None, :]
    return int((both & L & ~same).sum() + (both & T & same).sum())


def parity_triples(L: np.ndarray, T: np.ndarray, par: np.ndarray) -> int:
    """Chains ``G ? H ? K`` through any middle, with ``G`` and ``K`` having parity."""
    has = par >= 0
    both = has[:, None] & has[None, :]
    same = par[:, None] == par[None, :]
    ll = _compose(L, L)
    mixed = _compose(L, T) | _compose(T, L)
    return int((both & ll & ~same).sum() + (both & mixed & same).sum())


def transitivity_through(L: np.ndarray, T: np.ndarray, middle: np.ndarray) -> int:
    """Failures of transitivity where the middle game is restricted to ``middle``."""
    Lm_in, Lm_out = L[:, middle], L[middle, :]
    ll = _compose(Lm_in, Lm_out)
    tl = _compose(T[:, middle], Lm_out)
    lt = _compose(Lm_in, T[middle, :])
    return int((ll & ~L).sum() + ((tl | lt) & ~T).sum())
