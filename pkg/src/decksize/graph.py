"""Simple undirected graphs stored as bitset rows."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from decksize.rng import Stream


class GraphGenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``rows[u]`` is an int whose bit ``v`` is set iff ``u`` and ``v`` are
    adjacent. Instances are immutable; use the constructors below.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << u) for u in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        n = a.shape[0]
        if a.shape != (n, n) or a.diagonal().any() or (a != a.T).any():
            raise ValueError("adjacency matrix must be square, symmetric and loop-free")
        return cls._from_bool_rows(a)

    @classmethod
    def _from_bool_rows(cls, a: np.ndarray) -> "Graph":
        packed = np.packbits(a, axis=1, bitorder="little")
        return cls(a.shape[0], tuple(int.from_bytes(row.tobytes(), "little") for row in packed))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    @cached_property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def neighbors(self, v: int) -> Iterator[int]:
        r = self.rows[v]
        while r:
            low = r & -r
            yield low.bit_length() - 1
            r ^= low

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors(u) if u < v]

    def to_matrix(self) -> np.ndarray:
        n = self.n
        width = (n + 7) // 8
        buf = b"".join(r.to_bytes(width, "little") for r in self.rows)
        bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8).reshape(n, width), axis=1, bitorder="little")
        return bits[:, :n].astype(bool)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full ^ r ^ (1 << u) for u, r in enumerate(self.rows)))

    def card(self, v: int) -> "Graph":
        """The vertex-deleted subgraph ``G - v``; later vertices shift down by one."""
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        low = (1 << v) - 1
        shift = v + 1
        rows = tuple(
            (r & low) | ((r >> shift) << v)
            for u, r in enumerate(self.rows)
            if u != v
        )
        return Graph(self.n - 1, rows)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``u`` becomes ``perm[u]``."""
        rows = [0] * self.n
        for u, r in enumerate(self.rows):
            new = 0
            while r:
                low = r & -r
                new |= 1 << perm[low.bit_length() - 1]
                r ^= low
            rows[perm[u]] = new
        return Graph(self.n, tuple(rows))

    def toggle_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError("cannot toggle a loop")
        rows = list(self.rows)
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        return Graph(self.n, tuple(rows))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph(self.n + other.n, self.rows + tuple(r << shift for r in other.rows))

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                r = frontier
                while r:
                    low = r & -r
                    nxt |= self.rows[low.bit_length() - 1]
                    r ^= low
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append([v for v in range(self.n) if comp >> v & 1])
        return comps

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u in vertices for v in self.neighbors(u) if v in index and u < v),
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def complement(g: Graph) -> Graph:
    return g.complement()


def card(g: Graph, v: int) -> Graph:
    return g.card(v)


def degree_spectrum(g: Graph) -> list[int]:
    """``d[t]`` = number of vertices of degree ``t``, for ``t`` in ``0..n-1``."""
    counts = [0] * max(g.n, 1)
    for d in g.degrees:
        counts[d] += 1
    return counts


# -- generators ------------------------------------------------------------

REGULAR_RETRIES = 100


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(n: int) -> Graph:
    """K_{1,n-1} with centre 0."""
    return Graph.from_edges(n, ((0, i) for i in range(1, n)))


def clique_union(parts: Sequence[int]) -> Graph:
    g = Graph.empty(0)
    for size in parts:
        if size < 1:
            raise ValueError("clique sizes must be positive")
        g = g.disjoint_union(Graph.complete(size))
    return g


def gnp(n: int, p: float, stream: Stream) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    iu, ju = np.triu_indices(n, 1)
    a = np.zeros((n, n), dtype=bool)
    a[iu, ju] = stream.bernoulli(p, len(iu))
    return Graph._from_bool_rows(a | a.T)


def random_regular(n: int, d: int, stream: Stream, retries: int = REGULAR_RETRIES) -> Graph:
    """Steger-Wormald pairing: unsuitable stub pairs (loops, repeats) go back
    into the pool instead of rejecting the whole attempt."""
    if not 0 <= d < n or (n * d) % 2:
        raise ValueError(f"no {d}-regular graph on {n} vertices")
    for _ in range(retries):
        rows = [0] * n
        stubs = [v for v in range(n) for _ in range(d)]
        while stubs:
            order = stream.shuffle(stubs)
            stubs = []
            for i in range(0, len(order), 2):
                u, v = order[i], order[i + 1]
                if u == v or rows[u] >> v & 1:
                    stubs += (u, v)
                else:
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
            if stubs and not _pairable(stubs, rows):
                break
        else:
            return Graph(n, tuple(rows))
    raise GraphGenerationError(f"no simple {d}-regular graph on {n} vertices after {retries} tries")


def _pairable(stubs: list[int], rows: list[int]) -> bool:
    left = sorted(set(stubs))
    return any(not rows[u] >> v & 1 for i, u in enumerate(left) for v in left[i + 1 :])


MODELS = ("gnp", "regular", "clique_union", "path", "star", "empty", "complete")


def parse_model(spec: str) -> tuple[str, tuple]:
    """Parse ``name[:args]``, e.g. ``gnp:0.5``, ``regular:3``, ``clique_union:4,4,2``."""
    name, _, arg = spec.partition(":")
    if name not in MODELS:
        raise ValueError(f"unknown model {name!r}; expected one of {', '.join(MODELS)}")
    if name == "gnp":
        return name, (float(arg),)
    if name == "regular":
        return name, (int(arg),)
    if name == "clique_union":
        return name, tuple(int(x) for x in arg.split(","))
    if arg:
        raise ValueError(f"model {name!r} takes no parameters")
    return name, ()


def gen_graph(model: str, n: int, seed: int) -> Graph:
    """Deterministic graph for ``(model, n, seed)``; ``model`` as in :func:`parse_model`."""
    name, args = parse_model(model)
    if n < 1:
        raise ValueError("order must be at least 1")
    stream = Stream(seed)
    if name == "gnp":
        return gnp(n, args[0], stream)
    if name == "regular":
        return random_regular(n, args[0], stream)
    if name == "clique_union":
        if sum(args) != n:
            raise ValueError(f"clique sizes {args} do not sum to n={n}")
        return clique_union(args)
    return {"path": path, "star": star, "empty": Graph.empty, "complete": Graph.complete}[name](n)
