"""Success rate of reconstruction on random d-regular graphs across orders.

    python3 scripts/regular_sweep.py --degrees 3,4 --orders 200,400,1000 --k 1 --trials 50
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from decksize.experiment import run_experiment, summarize


@dataclass(frozen=True)
class RegularConfig:
    degrees: tuple[int, ...] = (3, 4)
    orders: tuple[int, ...] = (200, 400, 1000)
    k: int = 1
    trials: int = 50
    seed: int = 7


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", type=_ints, default=RegularConfig.degrees)
    ap.add_argument("--orders", type=_ints, default=RegularConfig.orders)
    ap.add_argument("--k", type=int, default=RegularConfig.k)
    ap.add_argument("--trials", type=int, default=RegularConfig.trials)
    ap.add_argument("--seed", type=int, default=RegularConfig.seed)
    cfg = RegularConfig(**vars(ap.parse_args()))
    print("d      n   k  exact  wrong  ambiguous  failed  seconds")
    for d in cfg.degrees:
        for n in cfg.orders:
            if n * d % 2:
                continue
            start = time.perf_counter()
            counts = summarize(run_experiment(f"regular:{d}", n, cfg.k, cfg.trials, seed=cfg.seed))
            print(f"{d:<2d} {n:6d} {cfg.k:3d}  {counts['exact_correct']:5d}  {counts['exact_wrong']:5d}  "
                  f"{counts['ambiguous']:9d}  {counts['failed']:6d}  {time.perf_counter() - start:7.1f}")


if __name__ == "__main__":
    main()
