"""Ground truth for small orders: graph catalogues, consistent sizes,
subgraph counts and star-count degree completion.

Subgraph counts here are *not* induced: a copy of ``h`` is an edge subset
of ``g`` isomorphic to ``h``, which is what star counts
``sum_v C(d(v), j)`` measure.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from pathlib import Path
from typing import Sequence

from decksize import graph6
from decksize.canon import canonical_form, canonical_graph
from decksize.deck import PartialDeck
from decksize.graph import Graph, star

MAX_CATALOG_ORDER = 8
MAX_PATTERN_ORDER = 5
# OEIS A000088
KNOWN_CLASS_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class GraphCatalog:
    n: int
    graphs: tuple[Graph, ...]

    def __len__(self) -> int:
        return len(self.graphs)


def cache_dir() -> Path:
    return Path(os.environ.get("DECKSIZE_CACHE", Path.home() / ".cache" / "decksize"))


def _extend(prev: Sequence[Graph], n: int) -> list[Graph]:
    # every graph on n vertices is some graph on n-1 vertices plus a vertex
    seen = {}
    for g in prev:
        for mask in range(1 << (n - 1)):
            rows = [r | ((mask >> u & 1) << (n - 1)) for u, r in enumerate(g.rows)]
            h = canonical_graph(Graph(n, tuple(rows) + (mask,)))
            seen.setdefault(graph6.encode(h), h)
    return [seen[key] for key in sorted(seen)]


@lru_cache(maxsize=None)
def enumerate_graphs(n: int) -> GraphCatalog:
    """One canonical representative per isomorphism class, sorted by graph6 bytes."""
    if not 0 <= n <= MAX_CATALOG_ORDER:
        raise OracleError(f"catalogue orders are limited to 0..{MAX_CATALOG_ORDER}, got {n}")
    if n <= 1:
        return GraphCatalog(n, (Graph.empty(n),))
    path = cache_dir() / f"catalog-{n}.g6"
    if path.exists():
        graphs = [graph6.decode(line) for line in path.read_bytes().split()]
        if len(graphs) == KNOWN_CLASS_COUNTS[n]:
            return GraphCatalog(n, tuple(graphs))
    graphs = _extend(enumerate_graphs(n - 1).graphs, n)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(b"".join(graph6.encode(g) + b"\n" for g in graphs))
    except OSError:
        pass
    return GraphCatalog(n, tuple(graphs))


@lru_cache(maxsize=None)
def catalog_decks(n: int) -> tuple[Counter, ...]:
    """Canonical card multiset of every catalogue graph, aligned with ``enumerate_graphs(n)``."""
    return tuple(
        Counter(canonical_form(g.card(v)) for v in range(n)) for g in enumerate_graphs(n).graphs
    )


def consistent_sizes(deck: PartialDeck) -> set[int]:
    """Sizes of all graphs whose deck contains ``deck`` as a sub-multiset."""
    if deck.n > MAX_CATALOG_ORDER:
        raise OracleError(f"consistent_sizes supports n <= {MAX_CATALOG_ORDER}")
    if deck.k > 2:
        raise OracleError("consistent_sizes supports at most 2 missing cards")
    given = Counter(canonical_form(g) for g in deck.graphs)
    cat = enumerate_graphs(deck.n)
    return {
        g.edge_count
        for g, cards in zip(cat.graphs, catalog_decks(deck.n))
        if not given - cards
    }


# -- subgraph counting -----------------------------------------------------


def _embeddings(h: Graph, g: Graph) -> int:
    """Injective maps V(h) -> V(g) sending edges to edges."""
    if h.n > g.n:
        return 0
    # place high-degree pattern vertices first, each after a neighbour where possible
    order: list[int] = []
    rest = sorted(range(h.n), key=lambda v: -h.degree(v))
    while rest:
        pick = next((v for v in rest if any(h.has_edge(v, u) for u in order)), rest[0])
        order.append(pick)
        rest.remove(pick)
    back = [[j for j in range(i) if h.has_edge(order[i], order[j])] for i in range(h.n)]
    image = [0] * h.n
    full = (1 << g.n) - 1
    rows = g.rows

    def place(i: int, used: int) -> int:
        if i == h.n:
            return 1
        cand = full & ~used
        for j in back[i]:
            cand &= rows[image[j]]
        total = 0
        while cand:
            low = cand & -cand
            image[i] = low.bit_length() - 1
            total += place(i + 1, used | low)
            cand ^= low
        return total

    return place(0, 0)


def subgraph_count(g: Graph, h: Graph) -> int:
    """Number of (not necessarily induced) subgraphs of ``g`` isomorphic to ``h``,
    computed as embeddings divided by automorphisms of ``h``."""
    if h.n > MAX_PATTERN_ORDER:
        raise OracleError(f"pattern graphs are limited to {MAX_PATTERN_ORDER} vertices")
    auts = _embeddings(h, h)
    total = _embeddings(h, g)
    assert total % auts == 0
    return total // auts


def kelly_count(deck: PartialDeck, h: Graph) -> int:
    """Copies of ``h`` in the graph behind a full deck: ``sum_i count(h, G_i) / (n - |h|)``."""
    if deck.k != 0:
        raise OracleError("Kelly counting needs the full deck")
    if h.n >= deck.n:
        raise OracleError("pattern must have fewer vertices than the graph")
    total = sum(subgraph_count(c, h) for c in deck.graphs)
    q, r = divmod(total, deck.n - h.n)
    if r:
        raise OracleError(f"card counts sum to {total}, not divisible by {deck.n - h.n}: corrupted deck")
    return q


def star_pattern(j: int) -> Graph:
    """K_{1,j}."""
    return star(j + 1)


def complete_degrees_via_stars(deck: PartialDeck, known_degrees: Sequence[int], m: int) -> list[int]:
    """Fill in the ``n - len(known_degrees)`` missing degrees from star counts.

    With ``u`` unknowns, the star counts for ``j = 1..u+1`` minus the known
    vertices' share give ``sum C(x, j)`` over the unknown degrees ``x``;
    the solution is searched exhaustively over ``0..n-1``. Returns the
    full degree list, sorted.
    """
    n = deck.n
    unknown = n - len(known_degrees)
    if not 0 <= unknown <= 3:
        raise OracleError("star completion handles 0..3 unknown degrees")
    if unknown == 0:
        return sorted(known_degrees)
    residual = {}
    for j in range(1, unknown + 2):
        if j == 1:
            # K_{1,1} = K_2 has two "centres"; sum_v d(v) counts each edge twice
            total = 2 * kelly_count(deck, star_pattern(1))
            if total != 2 * m:
                raise OracleError(f"deck has {total // 2} edges, caller says {m}")
        else:
            total = kelly_count(deck, star_pattern(j))
        residual[j] = total - sum(comb(d, j) for d in known_degrees)

    solutions = []
    for head in combinations_with_replacement(range(n), unknown - 1):
        last = residual[1] - sum(head)
        if last < (head[-1] if head else 0) or last > n - 1:
            continue
        xs = (*head, last)
        if all(sum(comb(x, j) for x in xs) == residual[j] for j in range(2, unknown + 2)):
            solutions.append(xs)
    if not solutions:
        raise OracleError("no degree assignment matches the star counts")
    if len(solutions) > 1:
        raise OracleError(f"star counts admit {len(solutions)} degree assignments")
    return sorted([*known_degrees, *solutions[0]])
