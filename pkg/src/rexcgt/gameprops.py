"""Premotivity, *-antimonotonicity, and the lookahead predicate."""
from __future__ import annotations

from dataclasses import dataclass

from .gameform import STAR, Game, Parity, add, followers, parity, serialize
from .order import LEFT, RIGHT, _require_boolean, comparison_wins, leq, left_wins

_local_premotive: dict[int, bool] = {}
_local_sam: dict[int, bool] = {}


def is_locally_premotive(g: Game) -> bool:
    """Left wins the self-comparison game of ``g`` moving first."""
    r = _local_premotive.get(g.uid)
    if r is None:
        r = comparison_wins(g, g, left_moves=True)
        _local_premotive[g.uid] = r
    return r


def first_non_premotive(g: Game) -> Game | None:
    for f in followers(g):
        if not is_locally_premotive(f):
            return f
    return None


def is_premotive(g: Game) -> bool:
    return first_non_premotive(g) is None


def star_shift(g: Game) -> Game:
    """``g + *``, which lives over the same poset as ``g``."""
    return add(g, STAR)


def is_locally_star_antimonotone(g: Game) -> bool:
    r = _local_sam.get(g.uid)
    if r is None:
        r = all(leq(star_shift(x), g) for x in g.left) and all(leq(g, star_shift(y)) for y in g.right)
        _local_sam[g.uid] = r
    return r


def first_non_star_antimonotone(g: Game) -> Game | None:
    for f in followers(g):
        if not is_locally_star_antimonotone(f):
            return f
    return None


def is_star_antimonotone(g: Game) -> bool:
    return first_non_star_antimonotone(g) is None


def lookahead_holds(g: Game) -> bool:
    """False exactly when ``g`` is even yet Left wins only as second player."""
    _require_boolean(g.poset)
    if parity(g) is not Parity.EVEN:
        return True
    return not (left_wins(g, RIGHT) and not left_wins(g, LEFT))


@dataclass(frozen=True)
class PropertyReport:
    parity: Parity
    premotive: bool
    star_antimonotone: bool
    failing_follower: Game | None

    def to_text(self) -> str:
        ff = serialize(self.failing_follower) if self.failing_follower is not None else "none"
        return (
            f"parity: {self.parity.value}\n"
            f"premotive: {str(self.premotive).lower()}\n"
            f"star_antimonotone: {str(self.star_antimonotone).lower()}\n"
            f"failing_follower: {ff}\n"
        )


def property_report(g: Game) -> PropertyReport:
    bad_p = first_non_premotive(g)
    bad_s = first_non_star_antimonotone(g)
    return PropertyReport(parity(g), bad_p is None, bad_s is None, bad_p if bad_p is not None else bad_s)


def clear_caches() -> None:
    _local_premotive.clear()
    _local_sam.clear()
