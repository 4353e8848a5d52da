"""Canonical labelling by colour refinement and individualization search.

Disconnected graphs are canonized component by component, and graphs whose
complement is disconnected through the complement, so clique unions and
their cards never reach the search. The search keeps the lexicographically
largest relabelled adjacency over all leaves, prunes children that lie in
one orbit of the automorphisms found so far (restricted to those fixing the
current path), and jumps back when a leaf reproduces the first or best leaf.
"""

from __future__ import annotations

from decksize import graph6
from decksize.graph import Graph

MAX_ORDER = 64


class UnsupportedOrderError(ValueError):
    pass


def _refine(rows: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                r = rows[v]
                key = tuple((r & m).bit_count() for m in masks)
                groups.setdefault(key, []).append(v)
            for key in sorted(groups):
                out.append(groups[key])
        if len(out) == len(cells):
            return out
        cells = out


def _individualize(cells: list[list[int]], v: int) -> list[list[int]]:
    out = []
    for cell in cells:
        if v in cell and len(cell) > 1:
            out.append([v])
            out.append([u for u in cell if u != v])
        else:
            out.append(cell)
    return out


def _orbit_rep(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.rows = g.rows
        self.first: tuple | None = None
        self.best: tuple | None = None
        self.autos: list[list[int]] = []

    def leaf(self, cells, path):
        lab = [0] * self.g.n
        for pos, cell in enumerate(cells):
            lab[cell[0]] = pos
        code = self.g.relabel(lab).rows
        if self.first is None:
            self.first = self.best = (code, lab, list(path))
            return None
        for ref in (self.first, self.best):
            if code == ref[0]:
                inv = [0] * len(lab)
                for v, p in enumerate(lab):
                    inv[p] = v
                self.autos.append([inv[ref[1][u]] for u in range(len(lab))])
                common = 0
                for a, b in zip(path, ref[2]):
                    if a != b:
                        break
                    common += 1
                return common
        if code > self.best[0]:
            self.best = (code, lab, list(path))
        return None

    def run(self, cells, path):
        if len(cells) == self.g.n:
            return self.leaf(cells, path)
        target = next(c for c in cells if len(c) > 1)
        explored: list[int] = []
        for v in target:
            if explored and self._same_orbit(v, explored, path):
                continue
            explored.append(v)
            res = self.run(_refine(self.rows, _individualize(cells, v)), path + [v])
            if res is not None and res < len(path):
                return res
        return None

    def _same_orbit(self, v, explored, path) -> bool:
        parent = list(range(self.g.n))
        for gamma in self.autos:
            if any(gamma[u] != u for u in path):
                continue
            for u, w in enumerate(gamma):
                a, b = _orbit_rep(parent, u), _orbit_rep(parent, w)
                if a != b:
                    parent[a] = b
        rv = _orbit_rep(parent, v)
        return any(_orbit_rep(parent, u) == rv for u in explored)


def _labeling(g: Graph) -> list[int]:
    n = g.n
    if n <= 1:
        return list(range(n))
    comps = g.components()
    if len(comps) > 1:
        parts = []
        for comp in comps:
            sub = g.induced(comp)
            lab = _labeling(sub)
            parts.append(((sub.n, sub.relabel(lab).rows), comp, lab))
        parts.sort(key=lambda p: p[0])
        perm = [0] * n
        offset = 0
        for _, comp, lab in parts:
            for i, v in enumerate(comp):
                perm[v] = offset + lab[i]
            offset += len(comp)
        return perm
    co = g.complement()
    if len(co.components()) > 1:
        return _labeling(co)
    search = _Search(g)
    search.run(_refine(g.rows, [list(range(n))]), [])
    return search.best[1]


def canonical_labeling(g: Graph) -> list[int]:
    """Permutation ``lab`` (old vertex -> new index) such that ``g.relabel(lab)``
    is the same graph for every graph isomorphic to ``g``."""
    if g.n > MAX_ORDER:
        raise UnsupportedOrderError(f"canonical forms are exact only up to n={MAX_ORDER}, got n={g.n}")
    return _labeling(g)


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def canonical_form(g: Graph) -> bytes:
    """graph6 bytes of the canonical relabelling; equal iff isomorphic."""
    return graph6.encode(canonical_graph(g))
