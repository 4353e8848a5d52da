import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from decksize import graph6
from decksize.graph import Graph, gen_graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_k2_is_a_underscore():
    assert graph6.encode(Graph.complete(2)) == b"A_"


@given(graphs(max_n=20))
def test_matches_networkx_encoder(g):
    assert graph6.encode(g) == nx.to_graph6_bytes(to_nx(g), header=False).rstrip(b"\n")


@pytest.mark.parametrize("n", [62, 63, 64, 200, 258063, ])
def test_order_prefix_forms(n):
    if n > 300:
        enc = graph6._encode_order(n)
        assert enc[0] == 126 and len(enc) == (4 if n < 258048 else 8)
        assert graph6._decode_order(enc + b"?")[0] == n
        return
    g = gen_graph("gnp:0.2", n, n)
    assert graph6.encode(g) == nx.to_graph6_bytes(to_nx(g), header=False).rstrip(b"\n")


@given(graphs(max_n=20))
def test_round_trip(g):
    assert graph6.decode(graph6.encode(g)) == g


def test_decodes_networkx_output_and_header():
    g = gen_graph("gnp:0.5", 70, 1)
    data = nx.to_graph6_bytes(to_nx(g), header=True)
    assert graph6.decode(data) == g
    assert nx.from_graph6_bytes(graph6.encode(g)).number_of_edges() == g.edge_count


@pytest.mark.parametrize("bad", [b"", b"A", b"A_?", b"A`", b"B\x7f", b"~??"])
def test_malformed_rejected(bad):
    with pytest.raises(graph6.Graph6Error):
        graph6.decode(bad)
