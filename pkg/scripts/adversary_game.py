"""Solve collections with forged cards and tally outcomes per forgery strategy.

    python3 scripts/adversary_game.py --model regular:3 --n 1000 --kfalse 1 --trials 20
"""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass

from decksize.adversary import FORGE_STRATEGIES, forge_collection, solve_mixed
from decksize.graph import gen_graph
from decksize.rng import split


@dataclass(frozen=True)
class GameConfig:
    model: str = "regular:3"
    n: int = 1000
    kfalse: int = 1
    trials: int = 20
    seed: int = 3


def play(cfg: GameConfig, strategy: str) -> Counter:
    tally = Counter()
    for i in range(cfg.trials):
        s = split(cfg.seed, i)
        g = gen_graph(cfg.model, cfg.n, split(s, 0))
        rep = solve_mixed(forge_collection(g, cfg.kfalse, strategy, split(s, 1)), seed=split(s, 2))
        if rep.is_exact:
            tally["exact_correct" if rep.m == g.edge_count else "exact_wrong"] += 1
        else:
            tally[f"{rep.outcome}:{rep.stage}"] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(GameConfig()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = GameConfig(**vars(ap.parse_args()))
    for strategy in FORGE_STRATEGIES:
        print(f"{strategy:13s} {dict(sorted(play(cfg, strategy).items()))}")


if __name__ == "__main__":
    main()
