import pytest

from knotlink.canon import canonical_form
from knotlink.enumerate import edge_deletion_levels, enumerate_graphs
from knotlink.graph import CapacityError, Graph
from oracles import all_graphs, key_of


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_matches_brute_force(n):
    ours = sorted(key_of(g) for g in enumerate_graphs(n))
    assert ours == all_graphs(n)


def test_class_counts_on_six_vertices():
    # brute force over 2^15 edge sets would be slow here; the level sizes
    # must at least be symmetric under complementation
    levels = {m: len(level) for m, level in edge_deletion_levels(6)}
    assert sum(levels.values()) == 156
    assert all(levels[m] == levels[15 - m] for m in range(16))


def test_levels_are_distinct_and_sized():
    for m, level in edge_deletion_levels(7, 15):
        keys = [canonical_form(g) for g in level]
        assert len(set(keys)) == len(keys)
        assert all(g.m == m for g in level)


def test_eight_vertex_top_levels():
    sizes = [len(level) for _, level in edge_deletion_levels(8, 20)]
    assert sizes == [1, 1, 2, 5, 11, 24, 56, 115, 221]


def test_capacity():
    with pytest.raises(CapacityError):
        next(edge_deletion_levels(10))
