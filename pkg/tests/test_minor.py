import random

import pytest
from hypothesis import given, settings, strategies as st

from knotlink import _core, _purecore, minor
from knotlink.enumerate import enumerate_graphs
from knotlink.family import complete_partite, petersen_graph
from knotlink.graph import Graph, GraphError, delete_edge, delete_vertex
from knotlink.minor import (
    K5_RULE, K6_RULE, K7_RULE, SearchLimitError, find_minor_witness, guarantees_minor, has_minor,
    is_planar, planarity_obstruction, verify_bound_exhaustive,
)
from oracles import key_of, minor_closure, nx_planar, validate_witness
from strategies import graphs

SMALL = [g for n in range(1, 6) for g in enumerate_graphs(n)]


@pytest.fixture(scope="module")
def closures():
    return {key_of(g): minor_closure(key_of(g)) for g in SMALL}


def test_minor_relation_matches_brute_force_up_to_five_vertices(closures):
    minor.clear_cache()
    for host in SMALL:
        below = closures[key_of(host)]
        for pat in SMALL:
            assert has_minor(host, pat) == (key_of(pat) in below), (host, pat)


def test_every_positive_has_a_valid_witness():
    for host in SMALL:
        for pat in SMALL:
            w = find_minor_witness(host, pat)
            if w is not None:
                validate_witness(host, pat, w)
            else:
                assert not has_minor(host, pat)


@pytest.mark.parametrize("host,pat", [
    (petersen_graph(), Graph.complete(5)),
    (petersen_graph(), complete_partite((3, 3))),
    (complete_partite((3, 3, 1, 1)), Graph.complete(6)),
    (Graph.complete(8), complete_partite((3, 3, 1))),
])
def test_known_minors_with_witnesses(host, pat):
    w = find_minor_witness(host, pat)
    assert w is not None
    validate_witness(host, pat, w)


def test_known_non_minors():
    assert not has_minor(complete_partite((3, 3, 1)), Graph.complete(6))
    assert not has_minor(complete_partite((3, 3)), Graph.complete(5))
    assert not has_minor(complete_partite((4, 4)), Graph.complete(6))
    assert not has_minor(delete_vertex(petersen_graph(), 0), Graph.complete(5))


@settings(max_examples=60)
@given(graphs(min_n=3, max_n=9), st.randoms())
def test_minor_is_monotone_under_edge_deletion(g, rnd):
    if not g.m:
        return
    u, v = rnd.choice(g.edges())
    h = delete_edge(g, u, v)
    for pat in (Graph.complete(4), Graph.complete(5), complete_partite((3, 3))):
        if has_minor(h, pat):
            assert has_minor(g, pat)


@settings(max_examples=60)
@given(graphs(min_n=1, max_n=8))
def test_host_is_a_minor_of_itself_and_of_supergraphs(g):
    assert has_minor(g, g)
    assert has_minor(Graph.complete(g.n), g)


def test_planarity_agrees_with_networkx():
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            assert is_planar(g) == nx_planar(g)


def test_planarity_obstruction_witness():
    name, w = planarity_obstruction(petersen_graph())
    assert name in ("K5", "K3,3")
    assert planarity_obstruction(Graph.complete(4)) is None


def test_kernels_agree(monkeypatch):
    rng = random.Random(5)
    pats = [Graph.complete(5), Graph.complete(6), complete_partite((3, 3)), petersen_graph()]
    hosts = []
    for _ in range(40):
        n = rng.randint(6, 11)
        hosts.append(Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                                          if rng.random() < 0.6]))
    expected = [[has_minor(h, p) for p in pats] for h in hosts]
    minor.clear_cache()
    monkeypatch.setattr(_core, "search", _purecore.search)
    try:
        got = [[has_minor(h, p) for p in pats] for h in hosts]
    finally:
        minor.clear_cache()
    assert got == expected


def test_backend_reported():
    assert _core.BACKEND in ("cython", "python")


def test_search_limit_raises(monkeypatch):
    minor.clear_cache()
    with pytest.raises(SearchLimitError):
        find_minor_witness(complete_partite((4, 4, 1)), Graph.complete(7), limit=5)
    monkeypatch.setenv("KNOTLINK_NODE_LIMIT", "5")
    with pytest.raises(SearchLimitError):
        has_minor(complete_partite((4, 4, 1)), Graph.complete(7))
    minor.clear_cache()


def test_guarantees_minor_domain():
    assert guarantees_minor(7, 21, K7_RULE)
    assert not guarantees_minor(7, 20, K7_RULE)
    with pytest.raises(GraphError):
        guarantees_minor(6, 30, K7_RULE)


@pytest.mark.parametrize("rule", [K5_RULE, K6_RULE, K7_RULE])
def test_bounds_hold_exhaustively_at_n7(rule):
    rep = verify_bound_exhaustive(7, rule)
    assert rep.ok and rep.checked > 0
    assert rep.sharp_example is not None
    assert rep.sharp_example.m == rep.threshold - 1
    assert not has_minor(rep.sharp_example, Graph.complete(rule.target))


def test_bound_refuses_large_orders():
    with pytest.raises(GraphError):
        verify_bound_exhaustive(9, K5_RULE)
