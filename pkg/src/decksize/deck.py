"""Decks of vertex-deleted cards, their statistics, and the deck file format.

A deck file is ASCII::

    DECK n=<order> cards=<count>
    <graph6 of card 1>
    ...

Cards of decks with n <= 64 are written in canonical form and sorted by
their canonical bytes, so a file never reveals which vertex a card came
from. Larger decks are written in the order given.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Sequence

import numpy as np

from decksize import graph6
from decksize.canon import MAX_ORDER, canonical_form, canonical_graph
from decksize.graph import Graph
from decksize.rng import Stream

DROP_STRATEGIES = ("random", "first", "max_edges", "min_edges")


class DeckError(ValueError):
    pass


class DeckFormatError(DeckError):
    pass


@dataclass(frozen=True)
class Card:
    graph: Graph
    # removed-vertex index; only set on unblinded decks built in tests
    provenance: int | None = None


@dataclass(frozen=True)
class PartialDeck:
    n: int
    cards: tuple[Card, ...]

    def __post_init__(self):
        if not 1 <= len(self.cards) <= self.n:
            raise DeckError(f"a deck of order {self.n} needs 1..{self.n} cards, got {len(self.cards)}")
        for c in self.cards:
            if c.graph.n != self.n - 1:
                raise DeckError(f"card of order {c.graph.n} in a deck of order {self.n}")

    @classmethod
    def from_graphs(cls, n: int, graphs: Sequence[Graph]) -> "PartialDeck":
        return cls(n, tuple(Card(g) for g in graphs))

    @property
    def k(self) -> int:
        return self.n - len(self.cards)

    @property
    def graphs(self) -> list[Graph]:
        return [c.graph for c in self.cards]

    def blinded(self) -> "PartialDeck":
        return replace(self, cards=tuple(Card(c.graph) for c in self.cards))

    def subset(self, indices: Sequence[int]) -> "PartialDeck":
        return PartialDeck(self.n, tuple(self.cards[i] for i in indices))

    def canonical_multiset(self) -> list[bytes]:
        return sorted(canonical_form(g) for g in self.graphs)


def deal(g: Graph, seed: int | None = None) -> PartialDeck:
    """Full deck of ``g``.

    Without a seed, card ``i`` is ``g - i`` and carries its provenance.
    With a seed the cards are shuffled and blinded.
    """
    if g.n < 2:
        raise DeckError("dealing needs a graph with at least 2 vertices")
    cards = [Card(g.card(v), v) for v in range(g.n)]
    if seed is None:
        return PartialDeck(g.n, tuple(cards))
    order = Stream(seed).shuffle(list(range(g.n)))
    return PartialDeck(g.n, tuple(Card(cards[i].graph) for i in order))


def drop_cards(deck: PartialDeck, k: int, strategy: str = "random", seed: int = 0) -> PartialDeck:
    """Remove ``k`` cards.

    ``max_edges`` / ``min_edges`` remove the cards with the most / fewest
    edges, ties broken by position in the deck.
    """
    if k == 0:
        return deck
    if not 0 <= k <= len(deck.cards) - 1:
        raise DeckError(f"cannot drop {k} of {len(deck.cards)} cards")
    idx = range(len(deck.cards))
    if strategy == "random":
        gone = set(Stream(seed).sample(len(deck.cards), k))
    elif strategy == "first":
        gone = set(range(k))
    elif strategy == "max_edges":
        gone = set(sorted(idx, key=lambda i: (-deck.cards[i].graph.edge_count, i))[:k])
    elif strategy == "min_edges":
        gone = set(sorted(idx, key=lambda i: (deck.cards[i].graph.edge_count, i))[:k])
    else:
        raise ValueError(f"unknown drop strategy {strategy!r}")
    return deck.subset([i for i in idx if i not in gone])


@dataclass(frozen=True, eq=False)
class CardStats:
    """Per-card edge counts and degree histograms of a partial deck.

    ``hist[i, t]`` is the number of degree-``t`` vertices on card ``i``.
    """

    n: int
    edges: np.ndarray
    hist: np.ndarray

    @property
    def k(self) -> int:
        return self.n - len(self.edges)

    @property
    def num_cards(self) -> int:
        return len(self.edges)

    @cached_property
    def degree_seen(self) -> np.ndarray:
        """``s_t``: degree-``t`` vertices counted over all given cards."""
        return self.hist.sum(axis=0)

    @property
    def edge_total(self) -> int:
        return int(self.edges.sum())

    def subset(self, indices: Sequence[int]) -> "CardStats":
        idx = np.asarray(indices, dtype=np.intp)
        return CardStats(self.n, self.edges[idx], self.hist[idx])

    def complemented(self) -> "CardStats":
        """Statistics of the complemented cards (the deck of the complement graph).

        A card has ``n - 1`` vertices, so a degree ``t`` becomes ``n - 2 - t``.
        """
        full = (self.n - 1) * (self.n - 2) // 2
        hist = np.zeros_like(self.hist)
        hist[:, : self.n - 1] = self.hist[:, : self.n - 1][:, ::-1]
        return CardStats(self.n, full - self.edges, hist)


def graphs_stats(n: int, graphs: Sequence[Graph]) -> CardStats:
    edges = np.array([g.edge_count for g in graphs], dtype=np.int64)
    hist = np.zeros((len(graphs), n), dtype=np.int64)
    for i, g in enumerate(graphs):
        if g.n != n - 1:
            raise DeckError(f"card of order {g.n} in a collection of order {n}")
        hist[i] = np.bincount(np.asarray(g.degrees, dtype=np.int64), minlength=n)[:n]
    return CardStats(n, edges, hist)


def card_stats(deck: PartialDeck) -> CardStats:
    return graphs_stats(deck.n, deck.graphs)


# -- file format -----------------------------------------------------------

_HEADER = re.compile(r"^(DECK|MIXED) n=(\d+) cards=(\d+)(?: kfalse=(\d+))?$")


def format_collection(kind: str, n: int, graphs: Sequence[Graph], extra: str = "") -> bytes:
    if n <= MAX_ORDER:
        lines = sorted(graph6.encode(canonical_graph(g)) for g in graphs)
    else:
        lines = [graph6.encode(g) for g in graphs]
    head = f"{kind} n={n} cards={len(graphs)}{extra}".encode("ascii")
    return b"\n".join([head, *lines]) + b"\n"


def parse_collection(data: bytes | str) -> tuple[str, int, list[Graph], int | None]:
    if isinstance(data, str):
        data = data.encode("ascii")
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    if not lines:
        raise DeckFormatError("empty deck file")
    m = _HEADER.match(lines[0].decode("ascii", "replace").rstrip("\r"))
    if not m:
        raise DeckFormatError(f"malformed header {lines[0][:60]!r}")
    kind, n, count = m.group(1), int(m.group(2)), int(m.group(3))
    kfalse = int(m.group(4)) if m.group(4) is not None else None
    if (kind == "MIXED") != (kfalse is not None):
        raise DeckFormatError("kfalse is required for MIXED headers and not allowed for DECK")
    body = lines[1:]
    if len(body) != count:
        raise DeckFormatError(f"header announces {count} cards, file has {len(body)}")
    graphs = []
    for lineno, line in enumerate(body, start=2):
        try:
            g = graph6.decode(line.rstrip(b"\r"))
        except graph6.Graph6Error as exc:
            raise DeckFormatError(f"line {lineno}: {exc}") from exc
        if g.n != n - 1:
            raise DeckFormatError(f"line {lineno}: card has order {g.n}, expected {n - 1}")
        graphs.append(g)
    return kind, n, graphs, kfalse


def serialize_deck(deck: PartialDeck) -> bytes:
    return format_collection("DECK", deck.n, deck.graphs)


def parse_deck(data: bytes | str) -> PartialDeck:
    kind, n, graphs, _ = parse_collection(data)
    if kind != "DECK":
        raise DeckFormatError(f"expected a DECK file, got {kind}")
    try:
        return PartialDeck.from_graphs(n, graphs)
    except DeckError as exc:
        raise DeckFormatError(str(exc)) from exc
