from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from conftest import graphs, relabelled
from decksize.canon import MAX_ORDER, UnsupportedOrderError, canonical_form, canonical_graph, canonical_labeling
from decksize.graph import Graph, clique_union, gen_graph
from decksize.oracle import KNOWN_CLASS_COUNTS


def brute_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count != b.edge_count or sorted(a.degrees) != sorted(b.degrees):
        return False
    return any(a.relabel(p) == b for p in permutations(range(a.n)))


def labelled_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def test_path_relabelled():
    p = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    q = Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
    assert canonical_form(p) == canonical_form(q)


def test_four_cycle_vs_triangle_plus_point():
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert canonical_form(c4) != canonical_form(clique_union([3, 1]))


@pytest.mark.parametrize("n", range(0, 7))
def test_class_counts_over_all_labelled_graphs(n):
    assert len({canonical_form(g) for g in labelled_graphs(n)}) == KNOWN_CLASS_COUNTS[n]


@pytest.mark.slow
def test_class_count_seven_over_all_labelled_graphs():
    assert len({canonical_form(g) for g in labelled_graphs(7)}) == 1044


@given(relabelled(max_n=12))
def test_invariant_under_relabelling(pair):
    g, h = pair
    assert canonical_form(g) == canonical_form(h)


@given(graphs(max_n=6), graphs(max_n=6))
def test_agrees_with_permutation_oracle(a, b):
    if a.n == b.n:
        assert (canonical_form(a) == canonical_form(b)) == brute_isomorphic(a, b)


@given(graphs(max_n=10))
def test_labeling_is_an_isomorphism(g):
    lab = canonical_labeling(g)
    assert sorted(lab) == list(range(g.n))
    assert g.relabel(lab) == canonical_graph(g)
    assert canonical_graph(canonical_graph(g)) == canonical_graph(g)


@pytest.mark.parametrize("seed", range(5))
def test_regular_graphs_relabelled(seed):
    # vertex-transitive-looking inputs are the hard case for refinement
    g = gen_graph("regular:3", 30, seed)
    h = g.relabel(list(reversed(range(30))))
    assert canonical_form(g) == canonical_form(h)


def test_distinguishes_cospectral_regular_pair():
    # C_6 vs two triangles: both 2-regular on 6 vertices
    assert canonical_form(Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])) != canonical_form(
        clique_union([3, 3])
    )


def test_order_limit():
    canonical_form(Graph.empty(MAX_ORDER))
    with pytest.raises(UnsupportedOrderError):
        canonical_form(Graph.empty(MAX_ORDER + 1))


@pytest.mark.parametrize("n", [6, 7])
def test_orbit_counting_covers_all_labelled_graphs(n):
    # each class contributes n!/|Aut| labelled graphs; together they must be all 2^C(n,2)
    from math import factorial

    from decksize.oracle import _embeddings, enumerate_graphs

    classes = enumerate_graphs(n).graphs
    assert len({canonical_form(g) for g in classes}) == len(classes)
    total = 0
    for g in classes:
        q, r = divmod(factorial(n), _embeddings(g, g))
        assert r == 0
        total += q
    assert total == 2 ** (n * (n - 1) // 2)
