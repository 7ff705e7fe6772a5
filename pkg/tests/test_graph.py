import networkx as nx
import pytest
from hypothesis import given

from knotlink.graph import (
    CapacityError, Graph, GraphError, MAX_ORDER, ParseError, add_edge, complement, contract_edge,
    delete_edge, delete_vertex, disjoint_union, edges_oneline, join, parse_graph, parse_oneline,
    serialize_graph, to_graph6,
)
from oracles import to_nx
from strategies import graphs


def test_complete_graph_counts():
    for n in range(0, 9):
        g = Graph.complete(n)
        assert g.m == n * (n - 1) // 2
        assert all(d == n - 1 for d in g.degrees())


def test_rows_must_be_symmetric_and_loopless():
    with pytest.raises(GraphError):
        Graph(2, [0b10, 0])
    with pytest.raises(GraphError):
        Graph(2, [0b01, 0])


def test_capacity_limit():
    Graph.complete(MAX_ORDER)
    with pytest.raises(CapacityError):
        Graph(MAX_ORDER + 1)


def test_parse_edge_list():
    g = parse_graph("# triangle\n3\n0 1\n1 2\n\n0 2\n")
    assert g == Graph.complete(3)


@pytest.mark.parametrize("text,line", [
    ("3\n0 1\n1 1\n", 3),
    ("3\n0 1\n2 1\n", 3),
    ("3\n0 1\n0 3\n", 3),
    ("3\n0 1\n0 1\n", 3),
    ("x\n", 1),
    ("3\n0 1 2\n", 2),
    ("17\n", 1),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_empty_document():
    with pytest.raises(ParseError):
        parse_graph("# nothing\n")


@given(graphs(max_n=10))
def test_serialization_round_trips(g):
    assert parse_graph(serialize_graph(g)) == g
    assert parse_oneline(edges_oneline(g)) == g


@given(graphs(max_n=10))
def test_graph6_matches_networkx(g):
    expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert to_graph6(g) == expected


@given(graphs(max_n=9))
def test_components_match_networkx(g):
    ours = sorted(sorted(v for v in range(g.n) if c >> v & 1) for c in g.components())
    theirs = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs
    assert g.is_connected() == (g.n > 0 and nx.is_connected(to_nx(g)))


@given(graphs(max_n=8))
def test_triangles_match_networkx(g):
    assert len(g.triangles()) == sum(nx.triangles(to_nx(g)).values()) // 3


@given(graphs(min_n=2, max_n=8))
def test_contract_edge_agrees_with_networkx(g):
    if not g.m:
        return
    u, v = g.edges()[0]
    ours = contract_edge(g, u, v)
    theirs = nx.contracted_nodes(to_nx(g), u, v, self_loops=False)
    assert ours.n == g.n - 1
    assert nx.is_isomorphic(to_nx(ours), nx.Graph(theirs))


def test_mutations_and_errors():
    g = Graph.complete(4)
    h = delete_edge(g, 0, 1)
    assert h.m == 5 and not h.has_edge(0, 1)
    assert add_edge(h, 0, 1) == g
    with pytest.raises(GraphError):
        delete_edge(h, 0, 1)
    with pytest.raises(GraphError):
        add_edge(g, 0, 1)
    with pytest.raises(GraphError):
        delete_vertex(g, 4)
    assert delete_vertex(g, 2) == Graph.complete(3)


def test_join_union_complement():
    k2 = Graph.complete(2)
    e3 = Graph.empty(3)
    j = join(e3, k2)
    assert j.m == 1 + 6 and j.dominating_vertices() == [3, 4]
    u = disjoint_union(Graph.complete(3), Graph.complete(2))
    assert u.m == 4 and len(u.components()) == 2
    assert complement(Graph.complete(5)) == Graph.empty(5)
    with pytest.raises(CapacityError):
        join(Graph.complete(9), Graph.complete(8))
