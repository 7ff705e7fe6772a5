"""Canonical labeling by individualization-refinement.

The search tree is the usual one: refine to an equitable ordered partition,
pick the first smallest non-singleton cell, individualize each of its
vertices in turn. Two prunings keep it small on the symmetric graphs that
dominate this project (complete partite graphs and their near relatives):

* twins: if ``u`` and ``v`` have the same neighbourhood apart from each
  other, swapping them is an automorphism fixing everything else, so only
  one of them needs to be individualized;
* automorphisms found at leaves: a leaf whose certificate ties the best one
  yields an automorphism, and candidates in the same orbit of the
  automorphisms fixing the current prefix are skipped.

The certificate of a leaf is the adjacency matrix read in leaf order; the
largest one wins.
"""
from __future__ import annotations

from .graph import Graph, _bits


def _refine(rows, n, cells):
    """Equitable refinement of an ordered partition (list of lists)."""
    while True:
        color = [0] * n
        masks = []
        for ci, cell in enumerate(cells):
            m = 0
            for v in cell:
                color[v] = ci
                m |= 1 << v
            masks.append(m)
        new_cells = []
        changed = False
        for ci, cell in enumerate(cells):
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                r = rows[v]
                sig = tuple(bin(r & m).count("1") for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
                continue
            changed = True
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        cells = new_cells
        if not changed:
            return cells


def _certificate(rows, order):
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    cert = 0
    for i, v in enumerate(order):
        r = 0
        for w in _bits(rows[v]):
            r |= 1 << pos[w]
        cert = (cert << n) | r
    return cert


def _twin_classes(rows, n):
    rep = list(range(n))
    for u in range(n):
        if rep[u] != u:
            continue
        for v in range(u + 1, n):
            if rep[v] == v and rows[u] & ~(1 << v) == rows[v] & ~(1 << u):
                rep[v] = u
    return rep


def _orbit_reps(cell, prefix, autos):
    """Split ``cell`` by orbits of the automorphisms that fix ``prefix``."""
    parent = {v: v for v in cell}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in autos:
        if any(gamma[p] != p for p in prefix):
            continue
        for v in cell:
            w = gamma[v]
            if w in parent:
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return find


class _Search:
    def __init__(self, g: Graph):
        self.rows = g.rows
        self.n = g.n
        self.twin = _twin_classes(g.rows, g.n)
        self.best = None
        self.best_order = None
        self.autos: list[list[int]] = []

    def run(self):
        cells = _refine(self.rows, self.n, [list(range(self.n))])
        self._visit(cells, [])
        return self.best_order, self.best

    def _visit(self, cells, prefix):
        target = None
        for cell in cells:
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            order = [c[0] for c in cells]
            cert = _certificate(self.rows, order)
            if self.best is None or cert > self.best:
                self.best, self.best_order = cert, order
            elif cert == self.best:
                gamma = [0] * self.n
                for a, b in zip(self.best_order, order):
                    gamma[a] = b
                self.autos.append(gamma)
            return
        tried: list[int] = []
        for v in target:
            if any(self.twin[v] == self.twin[u] for u in tried):
                continue
            if tried and self.autos:
                find = _orbit_reps(target, prefix, self.autos)
                if any(find(v) == find(u) for u in tried):
                    continue
            tried.append(v)
            idx = cells.index(target)
            rest = [w for w in target if w != v]
            child = cells[:idx] + [[v], rest] + cells[idx + 1:]
            self._visit(_refine(self.rows, self.n, child), prefix + [v])


def canonical_labeling(g: Graph) -> list[int]:
    """Vertex order whose adjacency matrix is the canonical one."""
    if g.n == 0:
        return []
    order, _ = _Search(g).run()
    return order


def canonical_form(g: Graph) -> bytes:
    """Byte key equal for two graphs exactly when they are isomorphic."""
    if g._canon is not None:
        return g._canon
    if g.n == 0:
        key = b"\x00"
    else:
        _, cert = _Search(g).run()
        nbytes = (g.n * g.n + 7) // 8
        key = bytes([g.n]) + cert.to_bytes(nbytes, "big")
    g._canon = key
    return key


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return Graph.from_edges(g.n, [(pos[u], pos[v]) for u, v in g.edges()])


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
