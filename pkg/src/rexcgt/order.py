"""Intrinsic order, comparison games, and outcomes of games over the boolean poset."""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

from .errors import InputError, charge
from .gameform import Game, add, dual, map_game
from .poset import Poset, lambda_map


class Player(enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"


LEFT = Player.LEFT
RIGHT = Player.RIGHT


def _same_poset(g: Game, h: Game) -> None:
    if g.poset is not h.poset:
        raise InputError(f"cannot compare a game over {g.poset.name} with one over {h.poset.name}")


_leq_memo: dict[tuple[int, int], bool] = {}
_tri_memo: dict[tuple[int, int], bool] = {}


def _leq(g: Game, h: Game) -> bool:
    key = (g.uid, h.uid)
    r = _leq_memo.get(key)
    if r is None:
        charge()
        if g.is_atom and h.is_atom:
            r = g.poset.leq(g.atom, h.atom)
        else:
            r = all(_tri(x, h) for x in g.left) and all(_tri(g, y) for y in h.right)
        _leq_memo[key] = r
    return r


def _tri(g: Game, h: Game) -> bool:
    key = (g.uid, h.uid)
    r = _tri_memo.get(key)
    if r is None:
        charge()
        r = any(_leq(x, h) for x in g.right) or any(_leq(g, y) for y in h.left)
        _tri_memo[key] = r
    return r


def leq(g: Game, h: Game) -> bool:
    """The intrinsic order ``g <= h``."""
    _same_poset(g, h)
    return _leq(g, h)


def tri(g: Game, h: Game) -> bool:
    """The strict-flavoured companion relation: some right option of ``g`` is ``<= h``
    or ``g`` is ``<=`` some left option of ``h``."""
    _same_poset(g, h)
    return _tri(g, h)


def equiv(g: Game, h: Game) -> bool:
    return leq(g, h) and leq(h, g)


def comparison_game(g: Game, h: Game) -> Game:
    """``lambda`` applied to ``dual(g) + h``, a game over the boolean poset."""
    _same_poset(g, h)
    return map_game(_lambda(g.poset), add(dual(g), h))


@functools.lru_cache(maxsize=None)
def _lambda(p: Poset):
    return lambda_map(p)


def _require_boolean(p: Poset) -> None:
    if len(p) != 2 or not p.is_chain():
        raise InputError(f"expected a game over a two-element chain, got one over {p.name}")


_win_memo: dict[tuple[int, bool, bool], bool] = {}


def _win(g: Game, left_moves: bool, last: bool) -> bool:
    key = (g.uid, left_moves, last)
    r = _win_memo.get(key)
    if r is None:
        charge()
        if g.is_atom:
            r = False if (last and left_moves) else g.atom == g.poset.top
        elif left_moves:
            r = any(_win(x, False, last) for x in g.left)
        else:
            r = all(_win(x, True, last) for x in g.right)
        _win_memo[key] = r
    return r


def left_wins(g: Game, mover: Player, lastmove_required: bool = False) -> bool:
    """Does Left win ``g`` when ``mover`` starts?

    With ``lastmove_required`` Left must also make the last move: reaching an
    atom with Left to move counts as a Left loss.  Any two-element chain is
    accepted as the boolean poset, its top meaning a Left win.
    """
    _require_boolean(g.poset)
    return _win(g, mover is Player.LEFT, lastmove_required)


@dataclass(frozen=True)
class OutcomeClass:
    oL: bool
    oR: bool

    @property
    def cls(self) -> str:
        return {(True, True): "L", (True, False): "N", (False, True): "P", (False, False): "R"}[(self.oL, self.oR)]

    def __le__(self, other: "OutcomeClass") -> bool:
        return self.oL <= other.oL and self.oR <= other.oR

    def __str__(self) -> str:
        return self.cls


def outcome(g: Game) -> OutcomeClass:
    return OutcomeClass(left_wins(g, LEFT), left_wins(g, RIGHT))


_cmp_memo: dict[tuple[int, int, bool, bool], bool] = {}


def comparison_wins(g: Game, h: Game, left_moves: bool, lastmove_required: bool = False) -> bool:
    """Evaluate Left's win in ``comparison_game(g, h)`` without building it.

    Left moves to right options of ``g`` or left options of ``h``; Right moves to
    left options of ``g`` or right options of ``h``.
    """
    _same_poset(g, h)
    return _cmp(g, h, left_moves, lastmove_required)


def _cmp(a: Game, b: Game, left_moves: bool, last: bool) -> bool:
    key = (a.uid, b.uid, left_moves, last)
    r = _cmp_memo.get(key)
    if r is None:
        charge()
        if a.is_atom and b.is_atom:
            r = False if (last and left_moves) else a.poset.leq(a.atom, b.atom)
        elif left_moves:
            r = any(_cmp(x, b, False, last) for x in a.right) or any(_cmp(a, y, False, last) for y in b.left)
        else:
            r = all(_cmp(x, b, True, last) for x in a.left) and all(_cmp(a, y, True, last) for y in b.right)
        _cmp_memo[key] = r
    return r


def clear_caches() -> None:
    for m in (_leq_memo, _tri_memo, _win_memo, _cmp_memo):
        m.clear()


from .contextual import leq_contextual_oracle, tri_contextual_oracle  # noqa: E402,F401  (re-export)
