"""Decompose the 10x5 board into three regions, glue them, and check against direct search."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from rexcgt import data_path
from rexcgt.gameform import serialize
from rexcgt.order import outcome
from rexcgt.rexboard import glue_raw, load_position, oracle_outcome, parse_manifest, run_glue


@dataclass
class Config:
    manifest: str = data_path("worked.manifest")
    board: str = data_path("worked_10x5.board")
    skip_oracle: bool = False


def run(cfg: Config) -> None:
    t0 = time.perf_counter()
    with open(cfg.manifest) as fh:
        m = parse_manifest(fh.read(), data_path(""))
    res = run_glue(m)
    for (name, r), form, c in zip(m.parts, res.part_forms, res.part_canonical):
        print(f"{name}: {len(r.empty)} empty cells, {len(form.poset)} outcomes, canonical {serialize(c)}")
    print(f"glued canonical form: {serialize(res.canonical)}")
    print(f"glued outcome: {res.outcome}")
    print(f"outcome without simplifying the parts: {outcome(glue_raw(m, res.glue))}")
    if not cfg.skip_oracle:
        print(f"direct search on the full board: {oracle_outcome(load_position(cfg.board))}")
    print(f"elapsed: {time.perf_counter() - t0:.2f} s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--manifest", default=Config.manifest)
    ap.add_argument("--board", default=Config.board)
    ap.add_argument("--skip-oracle", action="store_true")
    a = ap.parse_args()
    run(Config(a.manifest, a.board, a.skip_oracle))


if __name__ == "__main__":
    main()
