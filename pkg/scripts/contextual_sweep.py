"""Compare the intrinsic order with the bounded contextual oracle on a universe of games."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

import numpy as np

from rexcgt.contextual import ContextEngine
from rexcgt.gameform import Parity, parity
from rexcgt.gameprops import is_premotive
from rexcgt.generate import games_up_to
from rexcgt.order import leq
from rexcgt.poset import resolve_poset


@dataclass
class Config:
    poset: str = "bool"
    universe_depth: int = 2
    universe_width: int = 2
    context_depth: int = 2
    context_width: int = 2
    premotive_only: bool = True


def run(cfg: Config) -> None:
    p = resolve_poset(cfg.poset)
    t0 = time.perf_counter()
    games = [g for g in games_up_to(p, cfg.universe_depth, cfg.universe_width) if parity(g) is not Parity.NONE]
    if cfg.premotive_only:
        games = [g for g in games if is_premotive(g)]
    eng = ContextEngine(p, cfg.context_depth, cfg.context_width)
    packed: dict[bytes, int] = {}
    cls = []
    for g in games:
        first, second = eng.profile(g, keep=False)
        key = np.packbits(np.concatenate([first, second])).tobytes()
        cls.append(packed.setdefault(key, len(packed)))
    profiles = [np.unpackbits(np.frombuffer(k, dtype=np.uint8))[: 2 * eng.total].astype(bool) for k in packed]
    below = np.array([[not (a & ~b).any() for b in profiles] for a in profiles])
    agree = disagree = 0
    for i, g in enumerate(games):
        for j, h in enumerate(games):
            if below[cls[i], cls[j]] == leq(g, h):
                agree += 1
            else:
                disagree += 1
    print(f"{len(games)} games, {eng.total} contexts, {len(profiles)} distinct profiles")
    print(f"pairs agreeing with the intrinsic order: {agree}; disagreeing: {disagree}")
    print(f"elapsed: {time.perf_counter() - t0:.2f} s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--poset", default=Config.poset)
    ap.add_argument("--universe-depth", type=int, default=Config.universe_depth)
    ap.add_argument("--universe-width", type=int, default=Config.universe_width)
    ap.add_argument("--context-depth", type=int, default=Config.context_depth)
    ap.add_argument("--context-width", type=int, default=Config.context_width)
    ap.add_argument("--all-games", action="store_true", help="include non-premotive games")
    a = ap.parse_args()
    run(Config(a.poset, a.universe_depth, a.universe_width, a.context_depth, a.context_width, not a.all_games))


if __name__ == "__main__":
    main()
