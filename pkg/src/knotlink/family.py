"""Triangle-Y exchanges, their closures, and the named graphs used throughout."""
from __future__ import annotations

from dataclasses import dataclass, field

from .canon import canonical_form, canonical_graph
from .graph import CapacityError, Graph, GraphError, MAX_ORDER, _bits, delete_edge


@dataclass(frozen=True)
class MoveSet:
    delta_y: bool = True
    y_delta: bool = False

    def __post_init__(self):
        if not (self.delta_y or self.y_delta):
            raise ValueError("a move set needs at least one move")

    def label(self) -> str:
        return "+".join(n for n, on in (("DY", self.delta_y), ("YD", self.y_delta)) if on)


def delta_y(g: Graph, t: tuple[int, int, int]) -> Graph:
    """Replace triangle ``t`` by a new vertex ``n`` joined to its corners."""
    x, y, z = t
    if not (g.has_edge(x, y) and g.has_edge(y, z) and g.has_edge(x, z)):
        raise GraphError(f"{t} is not a triangle")
    if g.n + 1 > MAX_ORDER:
        raise CapacityError(f"delta-Y would create a graph on {g.n + 1} vertices")
    drop = {frozenset((x, y)), frozenset((y, z)), frozenset((x, z))}
    edges = [e for e in g.edges() if frozenset(e) not in drop]
    w = g.n
    edges += [(x, w), (y, w), (z, w)]
    return Graph.from_edges(g.n + 1, edges)


def y_delta(g: Graph, v: int) -> Graph:
    """Delete degree-3 vertex ``v`` and join its neighbours pairwise.

    Closing edges that already exist stay single, so the result is simple.
    """
    if g.degree(v) != 3:
        raise GraphError(f"vertex {v} has degree {g.degree(v)}, not 3")
    a, b, c = g.neighbors(v)
    rows = list(g.rows)
    for p, q in ((a, b), (b, c), (a, c)):
        rows[p] |= 1 << q
        rows[q] |= 1 << p
    keep = [u for u in range(g.n) if u != v]
    index = {u: i for i, u in enumerate(keep)}
    edges = [(index[p], index[q]) for p in keep for q in _bits(rows[p]) if q in index and p < q]
    return Graph.from_edges(g.n - 1, edges)


@dataclass
class FamilyClosure:
    seeds: list[str]
    moves: MoveSet
    members: dict[bytes, Graph] = field(default_factory=dict)
    # child key -> (parent key, move description)
    parents: dict[bytes, tuple[bytes, str]] = field(default_factory=dict)
    depth: dict[bytes, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: Graph) -> bool:
        return canonical_form(g) in self.members

    def graphs(self) -> list[Graph]:
        return [self.members[k] for k in sorted(self.members, key=self.sort_key)]

    def sort_key(self, key: bytes):
        g = self.members[key]
        return (self.depth[key], g.n, key)


def _moves(g: Graph, moves: MoveSet):
    if moves.delta_y:
        for t in g.triangles():
            yield f"DY{t}", lambda t=t: delta_y(g, t)
    if moves.y_delta:
        for v in range(g.n):
            if g.degree(v) == 3:
                yield f"YD({v})", lambda v=v: y_delta(g, v)


def compute_closure(seeds: dict[str, Graph], moves: MoveSet) -> FamilyClosure:
    """All graphs reachable from ``seeds`` under ``moves``, deduplicated.

    The worklist is processed breadth-first in canonical-key order, so the
    recorded generation tree is deterministic.
    """
    fam = FamilyClosure(sorted(seeds), moves)
    frontier = []
    for name in sorted(seeds):
        g = canonical_graph(seeds[name])
        key = canonical_form(g)
        if key not in fam.members:
            fam.members[key] = g
            fam.depth[key] = 0
            frontier.append(key)
    d = 0
    while frontier:
        d += 1
        nxt = []
        for key in sorted(frontier):
            g = fam.members[key]
            for desc, make in _moves(g, moves):
                try:
                    h = make()
                except CapacityError as exc:
                    raise CapacityError(f"closure expansion {desc} of a {g.n}-vertex member: {exc}") from exc
                hk = canonical_form(h)
                if hk in fam.members:
                    continue
                fam.members[hk] = canonical_graph(h)
                fam.parents[hk] = (key, desc)
                fam.depth[hk] = d
                nxt.append(hk)
        frontier = nxt
    return fam


# -- named graphs ----------------------------------------------------------------


def complete_partite(parts) -> Graph:
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p
    edges = []
    for i, (oi, pi) in enumerate(zip(offsets, parts)):
        for oj, pj in zip(offsets[i + 1:], parts[i + 1:]):
            edges += [(oi + a, oj + b) for a in range(pi) for b in range(pj)]
    return Graph.from_edges(total, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def h8() -> Graph:
    """K7 after one triangle-Y exchange."""
    return delta_y(Graph.complete(7), (0, 1, 2))


def h9_candidates() -> dict[str, Graph]:
    """Non-isomorphic graphs from K7 by two triangle-Y exchanges.

    After the first exchange on {0,1,2} a second triangle either avoids
    those corners ({3,4,5}) or shares one corner ({0,3,4}); no triangle
    can share two, since their edge is gone.
    """
    first = h8()
    out = {}
    for name, t in (("disjoint", (3, 4, 5)), ("shared", (0, 3, 4))):
        out[name] = delta_y(first, t)
    return out


H9_HOSTS = ("3,3,3-e", "4,4,1-e")
_h9: list[Graph] = []


def h9_fits(g: Graph) -> bool:
    """Whether g is a minor of every edge-deleted K3,3,3 and K4,4,1."""
    from .minor import has_minor
    from .partite import expand_spec, parse_spec

    return all(has_minor(c.graph, g) for s in H9_HOSTS for c in expand_spec(parse_spec(s)))


def h9() -> Graph:
    """The two-exchange descendant of K7 that fits inside K3,3,3-e and K4,4,1-e.

    Only the candidate built on vertex-disjoint triangles qualifies; the
    choice is re-checked on first use.
    """
    if not _h9:
        fits = [g for g in h9_candidates().values() if h9_fits(g)]
        if len(fits) != 1:
            raise AssertionError(f"{len(fits)} H9 candidates fit the minor facts, expected 1")
        _h9.append(fits[0])
    return _h9[0]


PETERSEN_SEED = {"K6": Graph.complete(6)}


_family_cache: dict[tuple, FamilyClosure] = {}


def cached_closure(seed: str, moves: MoveSet) -> FamilyClosure:
    key = (seed, moves)
    if key not in _family_cache:
        _family_cache[key] = compute_closure({seed: named_graph(seed)}, moves)
    return _family_cache[key]


def petersen_family() -> list[Graph]:
    return cached_closure("K6", MoveSet(delta_y=True, y_delta=True)).graphs()


def named_graph(name: str) -> Graph:
    """Look up a named graph.

    Accepted: ``K<n>`` (complete), ``K3311``/``K_{3,3,1,1}`` style partite
    names, ``petersen``, ``H8``, ``H9``, ``K44-e``, ``K55-e``.
    """
    key = name.strip().replace("_", "").replace("{", "").replace("}", "").lower()
    if key == "petersen":
        return petersen_graph()
    if key == "h8":
        return h8()
    if key == "h9":
        return h9()
    if key in ("k44-e", "k4,4-e"):
        return delete_edge(complete_partite((4, 4)), 0, 4)
    if key in ("k55-e", "k5,5-e"):
        return delete_edge(complete_partite((5, 5)), 0, 5)
    if key.startswith("k"):
        body = key[1:]
        if "," in body:
            return complete_partite(tuple(int(p) for p in body.split(",")))
        if body.isdigit():
            if len(body) == 1 or body in ("10", "11", "12", "13", "14", "15", "16"):
                return Graph.complete(int(body))
            return complete_partite(tuple(int(ch) for ch in body))
    raise KeyError(f"unknown graph name {name!r}")

