"""Minor containment with explicit branch-set witnesses.

The heavy lifting is done by a kernel (compiled when available, otherwise
the pure-Python twin in :mod:`knotlink._purecore`). This module prepares the
host before handing it over:

* hosts are pre-shrunk with degree reductions that are safe for the
  pattern's minimum degree (delete vertices of degree < 2 when every
  pattern vertex has degree >= 2; also suppress degree-2 vertices when the
  pattern's minimum degree is >= 3);
* a connected pattern is searched one host component at a time;
* consecutive twin vertices are flagged so the kernel can skip symmetric
  assignments.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

from . import _core
from .canon import canonical_form
from .graph import Graph, GraphError, _bits, _popcount, is_connected_mask, reach

DEFAULT_NODE_LIMIT = 10**8


class SearchLimitError(RuntimeError):
    """The configured search-node limit was exceeded before a decision."""


def node_limit() -> int:
    raw = os.environ.get("KNOTLINK_NODE_LIMIT")
    return int(raw) if raw else DEFAULT_NODE_LIMIT


@dataclass(frozen=True)
class MinorWitness:
    """Branch sets (one per pattern vertex) plus one host edge per pattern edge."""

    branch_sets: tuple[frozenset[int], ...]
    realized_edges: dict[tuple[int, int], tuple[int, int]]

    def format(self, indent: str = "") -> str:
        lines = []
        for p, bs in enumerate(self.branch_sets):
            lines.append(f"{indent}{p}: {{{', '.join(map(str, sorted(bs)))}}}")
        return "\n".join(lines)


class _Stats:
    nodes = 0
    searches = 0


stats = _Stats()
_cache: dict[tuple[bytes, bytes], bool] = {}


def clear_cache() -> None:
    _cache.clear()


# -- host preparation ---------------------------------------------------------


def _reduce(host: Graph, min_pattern_degree: int):
    """Shrink the host; returns (rows, alive mask, members per vertex)."""
    rows = list(host.rows)
    members = [1 << v for v in range(host.n)]
    alive = (1 << host.n) - 1
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if not (alive >> v) & 1:
                continue
            d = _popcount(rows[v])
            if d == 0 and min_pattern_degree >= 1 or d == 1 and min_pattern_degree >= 2:
                for w in _bits(rows[v]):
                    rows[w] &= ~(1 << v)
                rows[v] = 0
                alive &= ~(1 << v)
                changed = True
            elif d == 2 and min_pattern_degree >= 3:
                a, b = _bits(rows[v])
                rows[a] &= ~(1 << v)
                rows[b] &= ~(1 << v)
                rows[a] |= 1 << b
                rows[b] |= 1 << a
                rows[v] = 0
                members[a] |= members[v]
                alive &= ~(1 << v)
                changed = True
    return rows, alive, members


def _twin_order(rows, mask):
    """Vertex order with twin classes contiguous, plus each vertex's previous twin."""
    verts = list(_bits(mask))
    cls: dict[int, list[int]] = {}
    rep = {}
    for v in verts:
        for u in cls:
            if rows[u] & ~(1 << v) == rows[v] & ~(1 << u):
                cls[u].append(v)
                rep[v] = u
                break
        else:
            cls[v] = [v]
            rep[v] = v
    # BFS over twin classes, starting from the largest-degree class
    reps = sorted(cls, key=lambda u: (-_popcount(rows[u]), u))
    order: list[int] = []
    done: set[int] = set()
    for start in reps:
        if start in done:
            continue
        queue = [start]
        done.add(start)
        while queue:
            u = queue.pop(0)
            order.extend(cls[u])
            nbr_reps = sorted({rep[w] for w in _bits(rows[u]) if w in rep},
                              key=lambda x: (-_popcount(rows[x]), x))
            for r in nbr_reps:
                if r not in done:
                    done.add(r)
                    queue.append(r)
    twin_prev = []
    for i, v in enumerate(order):
        twin_prev.append(i - 1 if i > 0 and rep[order[i - 1]] == rep[v] else -1)
    return order, twin_prev


def _run_kernel(rows, mask, pattern: Graph, limit: int):
    order, twin_prev = _twin_order(rows, mask)
    status, nodes, assignment = _core.search(rows, order, twin_prev, list(pattern.rows), limit)
    stats.nodes += nodes
    stats.searches += 1
    if status < 0:
        raise SearchLimitError(f"minor search exceeded {limit} nodes")
    if status == 0:
        return None
    return order, assignment


def _raw_model(host: Graph, pattern: Graph, limit: int):
    """Branch sets as bitmasks over host vertices, or None."""
    h = pattern.n
    if h == 0:
        return []
    if h > host.n or pattern.m > host.m:
        return None
    degs = pattern.degrees()
    rows, alive, members = _reduce(host, min(degs))
    if _popcount(alive) < h:
        return None
    comps = []
    seen = 0
    for v in _bits(alive):
        if (seen >> v) & 1:
            continue
        c = reach(rows, 1 << v, alive)
        seen |= c
        comps.append(c)
    if pattern.is_connected():
        choices = [c for c in comps if _popcount(c) >= h]
        choices.sort(key=lambda c: (-_popcount(c), c))
        candidates = [[c] for c in choices]
    else:
        candidates = []
        for k in range(len(comps), 0, -1):
            for sub in combinations(comps, k):
                candidates.append(list(sub))
    for sub in candidates:
        mask = 0
        for c in sub:
            mask |= c
        if _popcount(mask) < h:
            continue
        sub_edges = sum(_popcount(rows[v] & mask) for v in _bits(mask)) // 2
        if sub_edges < pattern.m:
            continue
        found = _run_kernel([r & mask for r in rows], mask, pattern, limit)
        if found is None:
            continue
        order, assignment = found
        sets = [0] * h
        for v, p in zip(order, assignment):
            sets[p] |= members[v]
        return sets
    return None


def _realize(host: Graph, pattern: Graph, sets):
    realized = {}
    for p, q in pattern.edges():
        edge = None
        for u in _bits(sets[p]):
            hit = host.rows[u] & sets[q]
            if hit:
                w = (hit & -hit).bit_length() - 1
                edge = (u, w)
                break
        if edge is None:
            return None
        realized[(p, q)] = edge
    return realized


def _shrink(host: Graph, pattern: Graph, sets):
    """Greedily drop branch-set vertices that are not needed."""
    changed = True
    while changed:
        changed = False
        for p in range(pattern.n):
            for x in sorted(_bits(sets[p]), reverse=True):
                trial = sets[p] & ~(1 << x)
                if not trial or not is_connected_mask(host.rows, trial):
                    continue
                old = sets[p]
                sets[p] = trial
                if _realize(host, pattern, sets) is None:
                    sets[p] = old
                else:
                    changed = True
    return sets


# -- public API ----------------------------------------------------------------


def find_minor_witness(host: Graph, pattern: Graph, limit: int | None = None) -> MinorWitness | None:
    """A validated-shape minor model of ``pattern`` in ``host``, or None."""
    limit = node_limit() if limit is None else limit
    sets = _raw_model(host, pattern, limit)
    if sets is None:
        return None
    sets = _shrink(host, pattern, list(sets))
    realized = _realize(host, pattern, sets)
    if realized is None:  # pragma: no cover - kernel guarantees realizability
        raise AssertionError("kernel returned a model with an unrealized edge")
    return MinorWitness(tuple(frozenset(_bits(s)) for s in sets), realized)


def has_minor(host: Graph, pattern: Graph, limit: int | None = None) -> bool:
    if pattern.n > host.n or pattern.m > host.m:
        return False
    key = (canonical_form(host), canonical_form(pattern))
    hit = _cache.get(key)
    if hit is not None:
        return hit
    limit = node_limit() if limit is None else limit
    result = _raw_model(host, pattern, limit) is not None
    _cache[key] = result
    return result


K5 = Graph.complete(5)
K33 = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])


def is_planar(g: Graph) -> bool:
    """Wagner's criterion: no K5 minor and no K3,3 minor."""
    return not has_minor(g, K5) and not has_minor(g, K33)


def planarity_obstruction(g: Graph) -> tuple[str, MinorWitness] | None:
    for name, pat in (("K5", K5), ("K3,3", K33)):
        w = find_minor_witness(g, pat)
        if w is not None:
            return name, w
    return None


# -- edge bounds ---------------------------------------------------------------


@dataclass(frozen=True)
class BoundRule:
    name: str
    target: int          # the bound forces a K_target minor
    coefficient: int
    constant: int
    min_order: int

    def threshold(self, n: int) -> int:
        return self.coefficient * n - self.constant


K5_RULE = BoundRule("k5", 5, 3, 5, 5)
K6_RULE = BoundRule("k6", 6, 4, 9, 6)
K7_RULE = BoundRule("k7", 7, 5, 14, 7)
RULES = {r.name: r for r in (K5_RULE, K6_RULE, K7_RULE)}


def guarantees_minor(n: int, m: int, rule: BoundRule) -> bool:
    if n < rule.min_order:
        raise GraphError(f"rule {rule.name} needs n >= {rule.min_order}, got {n}")
    return m >= rule.threshold(n)


@dataclass
class BoundReport:
    rule: BoundRule
    n: int
    threshold: int
    checked: int
    violations: list[Graph]
    sharp_example: Graph | None

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_bound_exhaustive(n: int, rule: BoundRule) -> BoundReport:
    """Check every class on n vertices at or above the threshold for the minor.

    Also looks one edge below the threshold for a graph without the minor,
    which shows the bound cannot be lowered by one at this n.
    """
    from .enumerate import edge_deletion_levels

    if n > 8:
        raise GraphError("exhaustive bound verification is limited to n <= 8")
    guarantees_minor(n, rule.threshold(n), rule)
    target = Graph.complete(rule.target)
    thr = rule.threshold(n)
    checked = 0
    violations = []
    sharp = None
    for m, level in edge_deletion_levels(n, max(thr - 1, 0)):
        for g in level:
            if m >= thr:
                checked += 1
                if not has_minor(g, target):
                    violations.append(g)
            elif sharp is None and not has_minor(g, target):
                sharp = g
    return BoundReport(rule, n, thr, checked, violations, sharp)
