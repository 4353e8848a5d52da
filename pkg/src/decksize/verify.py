"""Oracle suites shared by the ``verify`` subcommand and the acceptance tests."""

from __future__ import annotations

from dataclasses import dataclass, field

from decksize.adversary import bbf_pair
from decksize.deck import deal
from decksize.graph import Graph, gen_graph
from decksize.oracle import (
    KNOWN_CLASS_COUNTS,
    complete_degrees_via_stars,
    consistent_sizes,
    enumerate_graphs,
    kelly_count,
    subgraph_count,
)
from decksize.reconstruct import reconstruct_size
from decksize.rng import Stream, split


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ""
    counts: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def catalog_counts(max_n: int = 7) -> SuiteResult:
    got = {n: len(enumerate_graphs(n)) for n in range(1, max_n + 1)}
    ok = all(got[n] == KNOWN_CLASS_COUNTS[n] for n in got)
    return SuiteResult("catalog-counts", ok, f"classes per order {got}", got)


def exhaustive_agreement(max_n: int = 7) -> SuiteResult:
    """Full decks must give e(g); single-card drops must stay inside the consistent sizes."""
    full_ok = full_total = 0
    drops = drop_exact = violations = 0
    for n in range(3, max_n + 1):
        for g in enumerate_graphs(n).graphs:
            deck = deal(g)
            full_total += 1
            full_ok += reconstruct_size(deck).m == g.edge_count
            if n < 4:
                continue
            for v in range(n):
                partial = deck.subset([i for i in range(n) if i != v])
                report = reconstruct_size(partial)
                drops += 1
                if report.is_exact:
                    drop_exact += 1
                    if report.m not in consistent_sizes(partial):
                        violations += 1
    ok = full_ok == full_total and violations == 0
    counts = {"full": full_total, "full_correct": full_ok, "drops": drops, "drop_exact": drop_exact,
              "violations": violations}
    return SuiteResult("exhaustive-oracle", ok,
                       f"full decks {full_ok}/{full_total} exact; single drops {drop_exact}/{drops} exact, "
                       f"{violations} outside consistent sizes", counts)


KELLY_PATTERNS = {
    "K2": Graph.complete(2),
    "P3": Graph.from_edges(3, [(0, 1), (1, 2)]),
    "K3": Graph.complete(3),
    "K13": Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]),
}


def kelly_suite(trials: int = 200, seed: int = 11) -> SuiteResult:
    bad = 0
    for i in range(trials):
        s = split(seed, i)
        stream = Stream(s)
        n = 5 + stream.below(8)
        p = (1 + stream.below(9)) / 10
        g = gen_graph(f"gnp:{p}", n, split(s, 1))
        deck = deal(g)
        for h in KELLY_PATTERNS.values():
            if kelly_count(deck, h) != subgraph_count(g, h):
                bad += 1
    return SuiteResult("kelly", bad == 0, f"{trials} graphs x {len(KELLY_PATTERNS)} patterns, {bad} mismatches",
                       {"trials": trials, "mismatches": bad})


def star_completion_suite(trials: int = 100, seed: int = 12, max_hidden: int = 2) -> SuiteResult:
    bad = 0
    for i in range(trials):
        s = split(seed, i)
        stream = Stream(s)
        n = 6 + stream.below(7)
        hidden = 1 + stream.below(max_hidden)
        g = gen_graph(f"gnp:{(1 + stream.below(9)) / 10}", n, split(s, 1))
        degrees = list(g.degrees)
        gone = set(stream.sample(n, hidden))
        known = [d for v, d in enumerate(degrees) if v not in gone]
        try:
            if complete_degrees_via_stars(deal(g), known, g.edge_count) != sorted(degrees):
                bad += 1
        except ValueError:
            bad += 1
    return SuiteResult("star-completion", bad == 0, f"{trials} trials, {bad} failures",
                       {"trials": trials, "failures": bad})


def bbf_suite(p_max: int = 10) -> SuiteResult:
    rows = [bbf_pair(p)[2] for p in range(2, p_max + 1)]
    ok = all(abs(r["m_G"] - r["m_H"]) == 1 and r["common"] >= 2 * r["p"] for r in rows)
    detail = ", ".join(f"p={r['p']}: m={r['m_G']}/{r['m_H']} common={r['common']}" for r in rows)
    return SuiteResult("bbf-pairs", ok, detail, {"rows": rows})


def all_suites(max_n: int = 6) -> list[SuiteResult]:
    return [
        catalog_counts(max_n),
        exhaustive_agreement(max_n),
        kelly_suite(40),
        star_completion_suite(40),
        bbf_suite(),
    ]
