import random

import networkx as nx
import pytest

from knotlink.canon import is_isomorphic
from knotlink.family import (
    MoveSet, cached_closure, complete_partite, compute_closure, delta_y, h8, h9, h9_candidates,
    h9_fits, named_graph, petersen_family, petersen_graph, y_delta,
)
from knotlink.graph import CapacityError, Graph, GraphError
from knotlink.minor import has_minor, is_planar
from oracles import to_nx


def _random_graph(rng, n, p):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_delta_y_then_y_delta_round_trips_1000_times():
    rng = random.Random(99)
    done = 0
    while done < 1000:
        g = _random_graph(rng, rng.randint(3, 11), 0.6)
        tris = g.triangles()
        if not tris:
            continue
        t = rng.choice(tris)
        h = delta_y(g, t)
        assert h.n == g.n + 1 and h.m == g.m
        assert sorted(h.neighbors(g.n)) == sorted(t)
        assert y_delta(h, g.n) == g
        done += 1


def test_y_delta_merges_existing_edges():
    star_plus = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    out = y_delta(star_plus, 0)
    assert out == Graph.complete(3)


def test_move_preconditions():
    with pytest.raises(GraphError):
        delta_y(Graph.from_edges(3, [(0, 1), (1, 2)]), (0, 1, 2))
    with pytest.raises(GraphError):
        y_delta(Graph.complete(3), 0)
    with pytest.raises(CapacityError):
        delta_y(Graph.complete(16), (0, 1, 2))
    with pytest.raises(ValueError):
        MoveSet(delta_y=False, y_delta=False)


@pytest.mark.parametrize("seed,moves,size", [
    ("K6", MoveSet(True, False), 6),
    ("K6", MoveSet(True, True), 7),
    ("K7", MoveSet(True, False), 14),
    ("K7", MoveSet(True, True), 20),
    ("K3311", MoveSet(True, False), 26),
])
def test_closure_sizes(seed, moves, size):
    assert len(cached_closure(seed, moves)) == size


def test_petersen_family_members():
    fam = petersen_family()
    expected = [Graph.complete(6), complete_partite((3, 3, 1)), named_graph("K44-e"), petersen_graph()]
    for g in expected:
        assert any(is_isomorphic(g, f) for f in fam)
    assert sorted(g.m for g in fam) == [15] * 7


def test_closure_is_deterministic_and_consistent():
    a = compute_closure({"K6": Graph.complete(6)}, MoveSet(True, True))
    b = compute_closure({"K6": Graph.complete(6)}, MoveSet(True, True))
    assert a.members == b.members and a.parents == b.parents
    for key, (parent, move) in a.parents.items():
        assert a.depth[key] == a.depth[parent] + 1
        assert move.startswith(("DY", "YD"))


def test_h8_and_h9():
    assert h8().n == 8 and h8().m == 21
    cands = h9_candidates()
    assert not is_isomorphic(cands["disjoint"], cands["shared"])
    assert h9() == cands["disjoint"]
    assert h9_fits(cands["disjoint"]) and not h9_fits(cands["shared"])
    members = cached_closure("K7", MoveSet(True, False))
    assert h8() in members and h9() in members
    # the two new vertices of H9 have disjoint neighbourhoods
    assert nx.shortest_path_length(to_nx(h9()), 7, 8) == 3
    assert nx.shortest_path_length(to_nx(cands["shared"]), 7, 8) == 2


def test_family_members_are_nonplanar():
    for g in petersen_family():
        assert not is_planar(g)
        assert has_minor(g, g)


@pytest.mark.parametrize("name,n,m", [
    ("K7", 7, 21), ("K_{3,3,1,1}", 8, 22), ("K3,3", 6, 9), ("petersen", 10, 15),
    ("K55-e", 10, 24), ("H9", 9, 21), ("K10", 10, 45),
])
def test_named_graphs(name, n, m):
    g = named_graph(name)
    assert (g.n, g.m) == (n, m)


def test_unknown_name():
    with pytest.raises(KeyError):
        named_graph("dodecahedron")
