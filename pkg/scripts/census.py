"""Count equivalence classes of premotive *-antimonotone games over a poset.

Two methods: the quotient census (options drawn from canonical representatives)
and, optionally, a literal sweep over every game in a bounded universe.
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from rexcgt.canonical import canon
from rexcgt.gameform import Parity, parity, serialize
from rexcgt.gameprops import is_premotive, is_star_antimonotone
from rexcgt.generate import distinct_games, games_up_to
from rexcgt.poset import resolve_poset


@dataclass
class Config:
    poset: str = "bool"
    depth: int = 3
    width: int | None = None
    literal_depth: int = 0
    literal_width: int | None = 2


def run(cfg: Config) -> None:
    p = resolve_poset(cfg.poset)
    t0 = time.perf_counter()
    census = distinct_games(p, cfg.depth, cfg.width)
    print(f"quotient census over {p.name}, depth {cfg.depth}: {census.candidates} candidates")
    print(f"classes: {len(census.representatives)} by canonical form, {census.classes_by_equivalence} by mutual order")
    for g in census.representatives:
        print("  " + serialize(g))
    print(f"elapsed: {time.perf_counter() - t0:.2f} s")
    if cfg.literal_depth:
        t0 = time.perf_counter()
        universe = games_up_to(p, cfg.literal_depth, cfg.literal_width)
        hits = [g for g in universe if parity(g) is not Parity.NONE and is_premotive(g) and is_star_antimonotone(g)]
        forms = {canon(g).uid: canon(g) for g in hits}
        print(f"literal sweep, depth {cfg.literal_depth}, width {cfg.literal_width}: {len(universe)} games, {len(hits)} qualify")
        print(f"classes reached: {len(forms)}; all inside the census: {set(forms) <= {g.uid for g in census.representatives}}")
        print(f"elapsed: {time.perf_counter() - t0:.2f} s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--poset", default=Config.poset)
    ap.add_argument("--depth", type=int, default=Config.depth)
    ap.add_argument("--width", type=int, default=None)
    ap.add_argument("--literal-depth", type=int, default=0)
    ap.add_argument("--literal-width", type=int, default=Config.literal_width)
    a = ap.parse_args()
    run(Config(a.poset, a.depth, a.width, a.literal_depth, a.literal_width))


if __name__ == "__main__":
    main()
