from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from decksize.deck import PartialDeck, deal, drop_cards
from decksize.graph import Graph, cycle, gen_graph, path, star
from decksize.oracle import (
    MAX_CATALOG_ORDER,
    OracleError,
    complete_degrees_via_stars,
    consistent_sizes,
    enumerate_graphs,
    kelly_count,
    star_pattern,
    subgraph_count,
)
from decksize.reconstruct import estimate_size
from decksize.deck import card_stats


def brute_subgraph_count(g, h):
    # edge subsets of g on |V(h)| vertices whose graph is isomorphic to h
    copies = set()
    for verts in combinations(range(g.n), h.n):
        for perm in permutations(verts):
            if all(g.has_edge(perm[u], perm[v]) for u, v in h.edges()):
                copies.add(frozenset(frozenset((perm[u], perm[v])) for u, v in h.edges()))
    return len(copies)


@pytest.mark.parametrize("n,count", [(1, 1), (3, 4), (4, 11), (5, 34)])
def test_catalog_sizes(n, count):
    assert len(enumerate_graphs(n)) == count


def test_catalog_limit():
    with pytest.raises(OracleError):
        enumerate_graphs(MAX_CATALOG_ORDER + 1)


def test_catalog_three_by_hand():
    assert sorted(g.edge_count for g in enumerate_graphs(3).graphs) == [0, 1, 2, 3]


def test_consistent_sizes_examples(p4):
    assert consistent_sizes(PartialDeck.from_graphs(3, [Graph.complete(2)] * 3)) == {3}
    assert 3 in consistent_sizes(deal(p4))
    for v in range(4):
        assert 3 in consistent_sizes(deal(p4).subset([i for i in range(4) if i != v]))


@given(graphs(min_n=3, max_n=6), st.data())
def test_consistent_sizes_contains_truth(g, data):
    k = data.draw(st.integers(0, min(2, g.n - 1)))
    assert g.edge_count in consistent_sizes(drop_cards(deal(g), k, "random", data.draw(st.integers(0, 99))))


def test_consistent_sizes_limits():
    with pytest.raises(OracleError):
        consistent_sizes(drop_cards(deal(Graph.complete(6)), 3, "first", 0))


def test_subgraph_count_examples():
    k3 = Graph.complete(3)
    p3 = path(3)
    assert subgraph_count(Graph.complete(4), k3) == 4
    assert subgraph_count(cycle(5), p3) == 5
    g = gen_graph("gnp:0.5", 9, 2)
    assert subgraph_count(g, Graph.complete(2)) == g.edge_count
    with pytest.raises(OracleError):
        subgraph_count(g, Graph.complete(6))


@given(graphs(min_n=0, max_n=6), st.sampled_from([path(3), Graph.complete(3), star(4), cycle(4), path(4)]))
def test_subgraph_count_matches_brute_force(g, h):
    assert subgraph_count(g, h) == brute_subgraph_count(g, h)


@given(graphs(min_n=2, max_n=10))
def test_star_counts_are_binomial_sums(g):
    for j in (2, 3):
        assert subgraph_count(g, star_pattern(j)) == sum(comb(d, j) for d in g.degrees)


def test_kelly_examples():
    assert kelly_count(deal(Graph.complete(4)), Graph.complete(3)) == 4
    g = gen_graph("gnp:0.4", 9, 4)
    assert kelly_count(deal(g), Graph.complete(2)) == g.edge_count == estimate_size(card_stats(deal(g))).m_tilde


def test_kelly_detects_corruption():
    cards = deal(Graph.complete(4)).graphs
    cards[0] = Graph.empty(3)
    with pytest.raises(OracleError):
        kelly_count(PartialDeck.from_graphs(4, cards), Graph.complete(2))


def test_kelly_needs_full_deck():
    with pytest.raises(OracleError):
        kelly_count(drop_cards(deal(Graph.complete(4)), 1, "first", 0), Graph.complete(2))


def test_star_completion_examples(p4):
    assert complete_degrees_via_stars(deal(p4), [1, 2, 2], 3) == [1, 1, 2, 2]
    assert complete_degrees_via_stars(deal(p4), [1, 1, 2, 2], 3) == [1, 1, 2, 2]


@pytest.mark.parametrize("seed", range(10))
def test_star_completion_two_hidden(seed):
    g = gen_graph("gnp:0.5", 10, seed)
    d = list(g.degrees)
    assert complete_degrees_via_stars(deal(g), d[2:], g.edge_count) == sorted(d)


def test_star_completion_wrong_size(p4):
    with pytest.raises(OracleError):
        complete_degrees_via_stars(deal(p4), [1, 2, 2], 4)
