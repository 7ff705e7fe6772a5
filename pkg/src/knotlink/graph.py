"""Small simple graphs stored as bitmask adjacency rows.

A :class:`Graph` is immutable: every mutation helper returns a new graph.
Vertices are ``0..n-1``; row ``i`` is an int whose bit ``j`` is set when
``ij`` is an edge.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 16


class GraphError(ValueError):
    """Raised for invalid graph operations (missing edge, bad vertex, ...)."""


class CapacityError(GraphError):
    """Raised when a construction would exceed :data:`MAX_ORDER` vertices."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _popcount(x: int) -> int:
    return bin(x).count("1")


class Graph:
    __slots__ = ("n", "rows", "_canon", "_hash")

    def __init__(self, n: int, rows: Sequence[int] | None = None):
        if n < 0:
            raise GraphError("negative order")
        if n > MAX_ORDER:
            raise CapacityError(f"order {n} exceeds the {MAX_ORDER}-vertex limit")
        if rows is None:
            rows = (0,) * n
        rows = tuple(rows)
        if len(rows) != n:
            raise GraphError("row count does not match order")
        full = (1 << n) - 1
        for i, r in enumerate(rows):
            if r & ~full or (r >> i) & 1:
                raise GraphError(f"bad adjacency row for vertex {i}")
            for j in _bits(r):
                if not (rows[j] >> i) & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")
        self.n = n
        self.rows = rows
        self._canon = None
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n > MAX_ORDER:
            raise CapacityError(f"order {n} exceeds the {MAX_ORDER}-vertex limit")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for order {n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << i) for i in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    # -- queries ---------------------------------------------------------

    @property
    def m(self) -> int:
        return sum(_popcount(r) for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i]) if j > i]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return _popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [_popcount(r) for r in self.rows]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def components(self) -> list[int]:
        """Vertex bitmasks of the connected components, ordered by lowest vertex."""
        seen = 0
        comps = []
        for v in range(self.n):
            if (seen >> v) & 1:
                continue
            comp = reach(self.rows, 1 << v, (1 << self.n) - 1)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for x in range(self.n):
            for y in _bits(self.rows[x] >> (x + 1) << (x + 1)):
                for z in _bits(self.rows[x] & self.rows[y] & ~((1 << (y + 1)) - 1)):
                    out.append((x, y, z))
        return out

    def dominating_vertices(self) -> list[int]:
        full = (1 << self.n) - 1
        return [v for v in range(self.n) if self.rows[v] | (1 << v) == full]

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def reach(rows: Sequence[int], start: int, allowed: int) -> int:
    """Vertices reachable from ``start`` inside the ``allowed`` mask."""
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= rows[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected_mask(rows: Sequence[int], mask: int) -> bool:
    if mask == 0:
        return False
    return reach(rows, mask & -mask, mask) == mask


# -- edge-list text format ------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: a vertex count, then one ``u v`` per line.

    Blank lines and lines starting with ``#`` are ignored. Each edge must
    satisfy ``0 <= u < v < n`` and appear only once.
    """
    n = None
    rows: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1 or not parts[0].isdigit():
                raise ParseError("expected a vertex count", lineno)
            n = int(parts[0])
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
            if n > MAX_ORDER:
                raise ParseError(f"vertex count {n} exceeds {MAX_ORDER}", lineno)
            rows = [0] * n
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"malformed edge line {line!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise ParseError(f"self-loop at {u}", lineno)
        if u > v:
            raise ParseError(f"edge must be written with u < v, got {u} {v}", lineno)
        if v >= n:
            raise ParseError(f"vertex {v} out of range for n={n}", lineno)
        if (rows[u] >> v) & 1:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    if n is None:
        raise ParseError("empty document")
    return Graph(n, rows)


def serialize_graph(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def edges_oneline(g: Graph) -> str:
    """Compact single-line form ``n:u-v,u-v,...`` used inside KB files."""
    return f"{g.n}:" + ",".join(f"{u}-{v}" for u, v in g.edges())


def parse_oneline(text: str) -> Graph:
    head, _, body = text.strip().partition(":")
    if not head.isdigit():
        raise ParseError(f"bad one-line graph {text!r}")
    edges = []
    for item in filter(None, body.split(",")):
        u, sep, v = item.partition("-")
        if not sep or not u.isdigit() or not v.isdigit():
            raise ParseError(f"bad edge {item!r}")
        edges.append((int(u), int(v)))
    return Graph.from_edges(int(head), edges)


def to_graph6(g: Graph) -> str:
    """graph6 encoding (n <= 62), matching nauty's ``showg`` conventions."""
    n = g.n
    bits = [(g.rows[i] >> j) & 1 for j in range(n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


# -- mutation -------------------------------------------------------------


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} not in graph of order {g.n}")


def _drop_bit(row: int, v: int) -> int:
    low = row & ((1 << v) - 1)
    return low | ((row >> (v + 1)) << v)


def delete_vertex(g: Graph, v: int) -> Graph:
    _check_vertex(g, v)
    rows = [_drop_bit(r, v) for i, r in enumerate(g.rows) if i != v]
    return Graph(g.n - 1, rows)


def delete_vertices(g: Graph, vs: Iterable[int]) -> Graph:
    keep = [v for v in range(g.n) if v not in set(vs)]
    return induced_subgraph(g, keep)


def induced_subgraph(g: Graph, keep: Sequence[int]) -> Graph:
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    return Graph.from_edges(len(keep), edges)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.n, rows)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise GraphError(f"self-loop at {u}")
    if g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is already an edge")
    rows = list(g.rows)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return Graph(g.n, rows)


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge ``v`` into ``u``; the merged vertex keeps ``min(u, v)``'s slot."""
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    u, v = min(u, v), max(u, v)
    rows = list(g.rows)
    merged = (rows[u] | rows[v]) & ~((1 << u) | (1 << v))
    rows[u] = merged
    for w in _bits(merged):
        rows[w] |= 1 << u
    h = Graph(g.n, [r & ~(1 << v) if i != v else 0 for i, r in enumerate(rows)])
    return delete_vertex(h, v)


def join(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > MAX_ORDER:
        raise CapacityError(f"join would have {n} vertices")
    edges = g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
    edges += [(u, g.n + v) for u in range(g.n) for v in range(h.n)]
    return Graph.from_edges(n, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    edges = g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
    return Graph.from_edges(g.n + h.n, edges)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, [full & ~r & ~(1 << i) for i, r in enumerate(g.rows)])


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
