"""Isomorphism classes of graphs on a fixed vertex count, densest first."""
from __future__ import annotations

from typing import Iterator

from .canon import canonical_form, canonical_graph
from .graph import CapacityError, Graph, delete_edge

MAX_ENUM_ORDER = 9


def edge_deletion_levels(n: int, min_edges: int = 0) -> Iterator[tuple[int, list[Graph]]]:
    """Yield ``(m, classes)`` for m = C(n,2) down to ``min_edges``.

    Every class on m edges arises from some class on m+1 edges by deleting
    one edge, so walking down from K_n and keeping one representative per
    canonical form reaches every class exactly once. Representatives are
    the canonical graphs themselves, listed in canonical-key order.
    """
    if n > MAX_ENUM_ORDER:
        raise CapacityError(f"enumeration limited to n <= {MAX_ENUM_ORDER}")
    if n < 0:
        raise ValueError("negative order")
    top = n * (n - 1) // 2
    level = [canonical_graph(Graph.complete(n))]
    m = top
    while m >= min_edges:
        yield m, level
        if m == 0:
            break
        seen: dict[bytes, Graph] = {}
        for g in level:
            for u, v in g.edges():
                h = delete_edge(g, u, v)
                key = canonical_form(h)
                if key not in seen:
                    seen[key] = h
        level = [canonical_graph(seen[k]) for k in sorted(seen)]
        m -= 1


def enumerate_graphs(n: int, min_edges: int = 0) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices with ``>= min_edges`` edges."""
    for _, level in edge_deletion_levels(n, min_edges):
        yield from level
