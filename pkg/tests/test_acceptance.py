"""Acceptance criteria, one test per criterion.

Each test prints a ``[PASS]``/``[FAIL]`` line; the lines are repeated in the
pytest terminal summary. Run directly with ``python3 tests/test_acceptance.py``
to get just the lines.
"""

from __future__ import annotations

import os
import subprocess
import sys
import time
from functools import lru_cache

import pytest

from decksize.adversary import FORGE_STRATEGIES, forge_collection, solve_mixed
from decksize.deck import card_stats, deal, drop_cards
from decksize.experiment import run_experiment, summarize
from decksize.graph import degree_spectrum, gen_graph
from decksize.reconstruct import dt_star, estimate_size, estimated_histogram
from decksize.rng import Stream, split
from decksize import verify

# tolerances: every identity and bound is checked exactly (integer arithmetic)
FULL_DECK_GRAPHS = 500
FULL_DECK_SECONDS = 60
CORPUS_SIZE = 1000
CUBIC_TRIALS = 100
CUBIC_FLOOR = 0.95
CUBIC_SECONDS = 300
EXHAUSTIVE_MAX_N = 7
EXHAUSTIVE_SECONDS = 600
GAME_SMALL = 200
GAME_LARGE = 50
BBF_P = range(2, 11)
KELLY_GRAPHS = 200
STAR_TRIALS = 100

LINES: list[str] = []


def report(number: int, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {detail}"
    LINES.append(line)
    print(line, flush=True)
    assert passed, line


# -- shared corpora --------------------------------------------------------


@lru_cache(maxsize=None)
def corpus() -> list[tuple]:
    """Random graphs n in [10, 300] with k uniform in [0, n // 3] random drops."""
    items = []
    for i in range(CORPUS_SIZE):
        s = split(20231, i)
        stream = Stream(s)
        n = 10 + stream.below(291)
        p = (0.1, 0.5, 0.9)[stream.below(3)]
        k = stream.below(n // 3 + 1)
        g = gen_graph(f"gnp:{p}", n, split(s, 0))
        stats = card_stats(drop_cards(deal(g), k, "random", split(s, 1)).blinded())
        items.append((g, k, stats))
    return items


@lru_cache(maxsize=None)
def cubic_runs():
    start = time.perf_counter()
    rows = [r for n in (400, 1000) for r in run_experiment("regular:3", n, 1, CUBIC_TRIALS, seed=7)]
    return rows, time.perf_counter() - start


@lru_cache(maxsize=None)
def exhaustive_run():
    start = time.perf_counter()
    res = verify.exhaustive_agreement(EXHAUSTIVE_MAX_N)
    return res, time.perf_counter() - start


@lru_cache(maxsize=None)
def game_runs():
    small = {"exact": 0, "ambiguous": 0, "failed": 0, "wrong": 0}
    for i in range(GAME_SMALL):
        s = split(99, i)
        g = gen_graph("gnp:0.5", 8, split(s, 0))
        rep = solve_mixed(forge_collection(g, 1, FORGE_STRATEGIES[i % 3], split(s, 1)))
        small["wrong" if rep.is_exact and rep.m != g.edge_count else rep.outcome] += 1
    large = {"exact": 0, "ambiguous": 0, "failed": 0, "wrong": 0}
    for i in range(GAME_LARGE):
        s = split(100, i)
        g = gen_graph("regular:3", 1000, split(s, 0))
        rep = solve_mixed(forge_collection(g, 1, FORGE_STRATEGIES[i % 3], split(s, 1)), seed=split(s, 2))
        large["wrong" if rep.is_exact and rep.m != g.edge_count else rep.outcome] += 1
    return small, large


# -- criteria --------------------------------------------------------------


def test_criterion_01_full_deck_identities():
    start = time.perf_counter()
    bad = 0
    for i in range(FULL_DECK_GRAPHS):
        s = split(101, i)
        stream = Stream(s)
        n = 5 + stream.below(196)
        p = (0.1, 0.5, 0.9)[i % 3]
        g = gen_graph(f"gnp:{p}", n, split(s, 0))
        stats = card_stats(deal(g))
        est = estimate_size(stats)
        alpha = est.m_tilde - g.edge_count
        if stats.edge_total != (n - 2) * g.edge_count or alpha != 0 or est.alpha_max != 0:
            bad += 1
    elapsed = time.perf_counter() - start
    report(1, bad == 0 and elapsed < FULL_DECK_SECONDS,
           f"{FULL_DECK_GRAPHS} full decks, {bad} identity failures, {elapsed:.1f}s (limit {FULL_DECK_SECONDS}s)")


def test_criterion_02_estimate_bound():
    bad = 0
    for g, k, stats in corpus():
        est = estimate_size(stats)
        n = g.n
        if not 0 <= est.m_tilde - g.edge_count <= k * (n - 1) // (n - 2 - k):
            bad += 1
    report(2, bad == 0, f"{CORPUS_SIZE} instances, 0 <= m~ - m <= floor(k(n-1)/(n-2-k)) violated {bad} times")


def test_criterion_03_degree_statistic_bound():
    bad = checked = 0
    for g, k, stats in corpus():
        n = g.n
        d = degree_spectrum(g) + [0]
        s = stats.degree_seen
        for t in range(n):
            eps = (n - 1 - t) * d[t] + (t + 1) * d[t + 1] - int(s[t])
            checked += 1
            bad += not 0 <= eps <= k * (d[t] + d[t + 1])
    report(3, bad == 0, f"{checked} (instance, t) pairs, 0 <= eps_t <= k(d_t + d_t+1) violated {bad} times")


def test_criterion_04_coarse_count_bound():
    bad = checked = 0
    for g, k, stats in corpus():
        n = g.n
        if 3 * k > n:
            continue
        d = [0] + degree_spectrum(g) + [0]  # d[t + 1] is d_t
        star = dt_star(stats).values
        for t in range(n):
            checked += 1
            # 1/4 d_t - 1 <= d*_t, times four
            bad += not (d[t + 1] - 4 <= 4 * star[t] and star[t] <= d[t] + d[t + 1] + d[t + 2])
    report(4, bad == 0, f"{checked} (instance, t) pairs with k <= n/3, d_t* bounds violated {bad} times")


def test_criterion_05_shift_identity():
    bad = 0
    for g, k, stats in corpus():
        est = estimate_size(stats)
        hist = estimated_histogram(stats, est)
        alpha = est.m_tilde - g.edge_count
        d = degree_spectrum(g)
        if sum(abs(d[t] - hist.at(t + alpha)) for t in range(g.n)) != k:
            bad += 1
    report(5, bad == 0, f"{CORPUS_SIZE} instances, sum |d_t - d~_t+alpha| != k in {bad}")


def test_criterion_07_cubic_end_to_end():
    rows, elapsed = cubic_runs()
    parts = []
    ok = elapsed < CUBIC_SECONDS
    for n in (400, 1000):
        mine = [r for r in rows if r.n == n]
        counts = summarize(mine)
        frac = counts["exact_correct"] / len(mine)
        ok &= frac >= CUBIC_FLOOR and counts["exact_wrong"] == 0
        parts.append(f"n={n}: {counts['exact_correct']}/{len(mine)} exact, "
                     f"{counts['ambiguous']} ambiguous, {counts['failed']} failed")
    report(7, ok, "; ".join(parts) + f"; {elapsed:.0f}s (limit {CUBIC_SECONDS}s, floor {CUBIC_FLOOR:.0%})")


def test_criterion_08_exhaustive_agreement():
    res, elapsed = exhaustive_run()
    report(8, res.passed and elapsed < EXHAUSTIVE_SECONDS, f"n <= {EXHAUSTIVE_MAX_N}: {res.detail}; {elapsed:.0f}s")


def test_criterion_09_adversary_game():
    small, large = game_runs()
    ok = small["wrong"] == 0 and small["failed"] == 0 and large["wrong"] == 0
    report(9, ok, f"n=8 exhaustive {small}; n=1000 heuristic {large}")


def test_criterion_06_zero_silent_wrong():
    rows, _ = cubic_runs()
    res, _ = exhaustive_run()
    small, large = game_runs()
    wrong = {
        "cubic": summarize(rows)["exact_wrong"],
        "exhaustive": res.counts["violations"] + res.counts["full"] - res.counts["full_correct"],
        "game-small": small["wrong"],
        "game-large": large["wrong"],
    }
    report(6, sum(wrong.values()) == 0, f"exact_wrong across criteria 7-9: {wrong}")


def test_criterion_10_lower_bound_pairs():
    res = verify.bbf_suite(max(BBF_P))
    report(10, res.passed, res.detail)


def test_criterion_11_kelly_and_stars():
    kelly = verify.kelly_suite(KELLY_GRAPHS)
    stars = verify.star_completion_suite(STAR_TRIALS, max_hidden=2)
    report(11, kelly.passed and stars.passed, f"kelly: {kelly.detail}; stars: {stars.detail}")


def _cli(*argv: str) -> bytes:
    env = {k: v for k, v in os.environ.items() if k != "DECKSIZE_TIMING"}
    done = subprocess.run([sys.executable, "-m", "decksize.cli", *argv], capture_output=True, env=env)
    assert done.returncode in (0, 2), done.stderr.decode()
    return done.stdout


def test_criterion_12_determinism(tmp_path):
    exp = ["experiment", "--model", "regular:3", "--n", "400", "--k", "1", "--trials", "20", "--seed", "7"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    _cli(*exp, "--out", str(a))
    _cli(*exp, "--out", str(b))
    csv_same = a.read_bytes() == b.read_bytes()

    g = tmp_path / "g.g6"
    _cli("gen", "--model", "gnp:0.3", "--n", "120", "--seed", "3", "--out", str(g))
    _cli("deal", str(g), "--seed", "3", "--out", str(tmp_path / "d.deck"))
    _cli("drop", str(tmp_path / "d.deck"), "--k", "2", "--seed", "3", "--out", str(tmp_path / "p.deck"))
    json_same = _cli("reconstruct", str(tmp_path / "p.deck")) == _cli("reconstruct", str(tmp_path / "p.deck"))
    game = ["game", "--model", "regular:3", "--n", "400", "--kfalse", "1", "--seed", "5"]
    game_same = _cli(*game) == _cli(*game)
    report(12, csv_same and json_same and game_same,
           f"experiment CSV identical: {csv_same}; reconstruct JSON identical: {json_same}; "
           f"game JSON identical: {game_same}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
