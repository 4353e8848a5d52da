"""Collections mixing true and false cards, and the two-clique-union lower bound.

The solver is blind: a :class:`MixedCollection` does not record which cards
are false. Forgery ground truth is returned separately by
:func:`forge_with_truth` for tests and sidecar files.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

from decksize.canon import canonical_form
from decksize.deck import (
    DeckFormatError,
    format_collection,
    graphs_stats,
    parse_collection,
)
from decksize.graph import Graph, clique_union, gnp
from decksize.oracle import MAX_CATALOG_ORDER, catalog_decks, enumerate_graphs
from decksize.reconstruct import RecoveryParams, ReconstructionReport, reconstruct_from_stats
from decksize.rng import Stream

FORGE_STRATEGIES = ("random_gnp", "perturb_true", "size_decoy")
HEURISTIC_ATTEMPTS = 50


@dataclass(frozen=True)
class MixedCollection:
    n: int
    cards: tuple[Graph, ...]
    k_false: int

    def __post_init__(self):
        if len(self.cards) != self.n:
            raise ValueError(f"a collection of order {self.n} holds exactly {self.n} cards")
        if not 0 <= self.k_false <= self.n:
            raise ValueError("k_false out of range")
        if any(c.n != self.n - 1 for c in self.cards):
            raise ValueError("every card must have order n - 1")


def _toggle_random_pairs(card: Graph, count: int, add: bool, stream: Stream) -> Graph:
    n = card.n
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if card.has_edge(u, v) != add]
    chosen = stream.sample(len(pairs), min(count, len(pairs)))
    for i in chosen:
        card = card.toggle_edge(*pairs[i])
    return card


def forge_with_truth(g: Graph, k: int, strategy: str, seed: int) -> tuple[MixedCollection, list[int]]:
    """Forge a collection and report the positions of the false cards.

    ``perturb_true`` flips one edge of the true card it replaces.
    ``size_decoy`` moves the replaced card's edge count by ``n - 2`` (up or
    down), so the whole collection's edge total is what a full deck of a
    graph with ``m +- 1`` edges per false card would give.
    """
    n = g.n
    if not 0 <= k <= n:
        raise ValueError(f"cannot forge {k} of {n} cards")
    if strategy not in FORGE_STRATEGIES:
        raise ValueError(f"unknown forgery strategy {strategy!r}")
    stream = Stream(seed)
    replaced = set(stream.sample(n, k))
    cards: list[tuple[Graph, bool]] = []
    for v in range(n):
        true_card = g.card(v)
        if v not in replaced:
            cards.append((true_card, False))
            continue
        if strategy == "random_gnp":
            fake = gnp(n - 1, 0.5, stream.child(v))
        elif strategy == "perturb_true":
            fake = _toggle_random_pairs(true_card, 1, add=stream.below(2) == 1, stream=stream)
            if fake == true_card:
                fake = _toggle_random_pairs(true_card, 1, add=not true_card.edge_count < 1, stream=stream)
        else:
            room_up = comb(n - 1, 2) - true_card.edge_count
            add = stream.below(2) == 1
            if add and room_up < n - 2:
                add = False
            if not add and true_card.edge_count < n - 2:
                add = True
            fake = _toggle_random_pairs(true_card, n - 2, add=add, stream=stream)
        cards.append((fake, True))
    order = stream.shuffle(list(range(n)))
    shuffled = [cards[i] for i in order]
    collection = MixedCollection(n, tuple(c for c, _ in shuffled), k)
    return collection, [i for i, (_, fake) in enumerate(shuffled) if fake]


def forge_collection(g: Graph, k: int, strategy: str, seed: int) -> MixedCollection:
    return forge_with_truth(g, k, strategy, seed)[0]


def common_cards(a: Sequence[Graph], b: Sequence[Graph]) -> int:
    """Size of the multiset intersection of two card lists up to isomorphism."""
    ca = Counter(canonical_form(g) for g in a)
    cb = Counter(canonical_form(g) for g in b)
    return sum((ca & cb).values())


def bbf_pair(p: int) -> tuple[Graph, Graph, dict]:
    """``2K_{p+1} + K_{p-1}`` and ``K_{p+1} + 2K_p`` on ``3p + 1`` vertices."""
    if p < 2:
        raise ValueError("p must be at least 2")
    g = clique_union([p + 1, p + 1, p - 1])
    h = clique_union([p + 1, p, p])
    common = common_cards([g.card(v) for v in range(g.n)], [h.card(v) for v in range(h.n)])
    stats = {"p": p, "n": g.n, "m_G": g.edge_count, "m_H": h.edge_count, "common": common}
    return g, h, stats


# -- solving ---------------------------------------------------------------


def _solve_exhaustive(c: MixedCollection) -> ReconstructionReport:
    given = Counter(canonical_form(card) for card in c.cards)
    need = c.n - c.k_false
    sizes = sorted({
        g.edge_count
        for g, deck in zip(enumerate_graphs(c.n).graphs, catalog_decks(c.n))
        if sum((given & deck).values()) >= need
    })
    detail = f"exhaustive: consistent sizes {sizes}"
    if len(sizes) == 1:
        return ReconstructionReport("exact", m=sizes[0], stage="exhaustive", detail=detail)
    if not sizes:
        return ReconstructionReport("failed", stage="exhaustive", detail="no graph shares enough cards")
    return ReconstructionReport("ambiguous", stage="multi-size", detail=detail)


def _drop_weights(edges: Sequence[int]) -> list[int]:
    # cards far from the median edge count are the likeliest forgeries
    median = sorted(edges)[(len(edges) - 1) // 2]
    ranked = sorted(range(len(edges)), key=lambda i: (-abs(edges[i] - median), i))
    weights = [0] * len(edges)
    for rank, i in enumerate(ranked):
        weights[i] = (len(edges) * 64) // (rank + 1)
    return weights


def _weighted_pick(weights: list[int], count: int, stream: Stream) -> tuple[int, ...]:
    w = list(weights)
    picked = []
    for _ in range(count):
        x = stream.below(sum(w))
        for i, wi in enumerate(w):
            if x < wi:
                picked.append(i)
                w[i] = 0
                break
            x -= wi
    return tuple(sorted(picked))


def solve_mixed(
    c: MixedCollection,
    attempts: int = HEURISTIC_ATTEMPTS,
    seed: int = 0,
    params: RecoveryParams | None = None,
    exhaustive: bool | None = None,
) -> ReconstructionReport:
    """Size of the graph behind a collection with ``k_false`` false cards.

    Small collections (n <= 8, k_false <= 2) are solved exhaustively against
    the graph catalogue. Otherwise ``n - 2k_false`` cards are kept per
    attempt, dropping likely outliers first, and the answer is exact only
    if every certified attempt agrees; such answers are flagged heuristic.
    """
    n, kf = c.n, c.k_false
    stats = graphs_stats(n, c.cards)
    if kf == 0:
        return reconstruct_from_stats(stats, params)
    if n - 2 - 2 * kf < 1:
        return ReconstructionReport("failed", stage="estimate", detail="too few cards once false ones are discounted")
    if exhaustive is None:
        exhaustive = n <= MAX_CATALOG_ORDER and kf <= 2
    if exhaustive:
        return _solve_exhaustive(c)

    edges = [int(e) for e in stats.edges]
    weights = _drop_weights(edges)
    stream = Stream(seed)
    ranked = sorted(range(n), key=lambda i: -weights[i])
    tried = set()
    answers: dict[int, int] = {}
    for a in range(attempts):
        drop = tuple(sorted(ranked[: 2 * kf])) if a == 0 else _weighted_pick(weights, 2 * kf, stream)
        if drop in tried:
            continue
        tried.add(drop)
        keep = [i for i in range(n) if i not in drop]
        rep = reconstruct_from_stats(stats.subset(keep), params)
        if rep.is_exact:
            answers[rep.m] = answers.get(rep.m, 0) + 1
    detail = f"heuristic: {len(tried)} subsets, exact answers {dict(sorted(answers.items()))}"
    if not answers:
        return ReconstructionReport("ambiguous", stage="no-consistent-subset", detail=detail, heuristic=True)
    if len(answers) > 1:
        return ReconstructionReport("ambiguous", stage="disagreement", detail=detail, heuristic=True)
    m = next(iter(answers))
    plausible = sum(0 <= m - e <= n - 1 for e in edges)
    if plausible < n - kf:
        return ReconstructionReport("ambiguous", stage="implausible", detail=detail, heuristic=True)
    return ReconstructionReport("exact", m=m, stage="heuristic", detail=detail, heuristic=True)


# -- file format -----------------------------------------------------------


def serialize_mixed(c: MixedCollection) -> bytes:
    return format_collection("MIXED", c.n, c.cards, extra=f" kfalse={c.k_false}")


def parse_mixed(data: bytes | str) -> MixedCollection:
    kind, n, graphs, kfalse = parse_collection(data)
    if kind != "MIXED":
        raise DeckFormatError(f"expected a MIXED file, got {kind}")
    try:
        return MixedCollection(n, tuple(graphs), kfalse)
    except ValueError as exc:
        raise DeckFormatError(str(exc)) from exc
