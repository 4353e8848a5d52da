"""How far the certified pipeline gets as more cards go missing.

    python3 scripts/k_sweep.py --model regular:3 --n 600 --trials 20 --kmax 8

Prints one summary row per k and writes every trial to --out (CSV).
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from decksize.experiment import rows_to_csv, run_experiment, summarize


@dataclass(frozen=True)
class SweepConfig:
    model: str = "regular:3"
    n: int = 600
    kmax: int = 8
    trials: int = 20
    seed: int = 1
    strategy: str = "random"
    out: str | None = None


def sweep(cfg: SweepConfig):
    rows = []
    for k in range(cfg.kmax + 1):
        batch = run_experiment(cfg.model, cfg.n, k, cfg.trials, seed=cfg.seed + k, strategy=cfg.strategy)
        counts = summarize(batch)
        print(f"k={k:3d}  exact {counts['exact_correct']:4d}  wrong {counts['exact_wrong']}  "
              f"ambiguous {counts['ambiguous']:4d}  failed {counts['failed']:4d}")
        rows.extend(batch)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{name}", type=type(default) if default is not None else str, default=default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    rows = sweep(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(rows_to_csv(rows))


if __name__ == "__main__":
    main()
