"""Seeded reconstruction sweeps with CSV output.

Trial ``i`` of a sweep with master seed ``S`` uses seed ``split(S, i)``;
the graph is generated from ``split(seed, 0)`` and cards are dropped with
``split(seed, 1)``, so any row can be replayed on its own with
:func:`run_trial`.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial

from decksize.deck import deal, drop_cards
from decksize.graph import gen_graph
from decksize.reconstruct import RecoveryParams, reconstruct_size
from decksize.rng import split

CSV_FIELDS = ("seed", "n", "k", "model", "strategy", "outcome", "m_true", "m_reported", "stage_failed", "elapsed_ms")
OUTCOMES = ("exact_correct", "exact_wrong", "ambiguous", "failed")


def timing_enabled() -> bool:
    # wall-clock times would make output files differ between runs
    return os.environ.get("DECKSIZE_TIMING") == "1"


@dataclass(frozen=True)
class ExperimentRow:
    seed: int
    n: int
    k: int
    model: str
    strategy: str
    outcome: str
    m_true: int
    m_reported: int | None = None
    stage_failed: str | None = None
    elapsed_ms: float | None = None


def run_trial(seed: int, n: int, k: int, model: str, strategy: str = "random",
              params: RecoveryParams | None = None) -> ExperimentRow:
    g = gen_graph(model, n, split(seed, 0))
    deck = drop_cards(deal(g), k, strategy, split(seed, 1)).blinded()
    report = reconstruct_size(deck, params)
    if report.is_exact:
        outcome = "exact_correct" if report.m == g.edge_count else "exact_wrong"
    else:
        outcome = report.outcome
    return ExperimentRow(
        seed=seed,
        n=n,
        k=k,
        model=model,
        strategy=strategy,
        outcome=outcome,
        m_true=g.edge_count,
        m_reported=report.m,
        stage_failed=None if report.is_exact else report.stage,
        elapsed_ms=round(report.elapsed_ms, 3) if timing_enabled() else None,
    )


def _trial_at(index: int, master: int, **kw) -> ExperimentRow:
    return run_trial(split(master, index), **kw)


def run_experiment(model: str, n: int, k: int, trials: int, seed: int, strategy: str = "random",
                   params: RecoveryParams | None = None, workers: int | None = None) -> list[ExperimentRow]:
    """Rows in trial order whatever the number of workers."""
    job = partial(_trial_at, master=seed, n=n, k=k, model=model, strategy=strategy, params=params)
    workers = workers if workers is not None else int(os.environ.get("DECKSIZE_WORKERS", "1"))
    if workers <= 1:
        return [job(i) for i in range(trials)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, range(trials)))


def rows_to_csv(rows: list[ExperimentRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: ("" if value is None else value) for key, value in asdict(row).items()})
    return buf.getvalue()


def summarize(rows: list[ExperimentRow]) -> dict[str, int]:
    counts = dict.fromkeys(OUTCOMES, 0)
    for row in rows:
        counts[row.outcome] += 1
    return counts
