"""Linking and knotting decisions with certificate chains.

Linking is decided exactly by searching for the seven forbidden minors.
Knotting is three-valued. It is positive via the edge bound, a join with
K2, or a minor from the knotted seed families. It is negative via the
join rule, identity with a known unknotted graph, being a minor of one,
or having two vertices whose removal leaves a planar graph. Anything else
is UNKNOWN.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Callable, Sequence

from .canon import canonical_form
from .family import MoveSet, compute_closure, petersen_family
from .graph import Graph, GraphError, ParseError, _bits, add_edge, delete_vertex, delete_vertices, parse_oneline
from .minor import K7_RULE, MinorWitness, find_minor_witness, has_minor, is_planar, planarity_obstruction
from .partite import PartiteSpec, expand_spec, format_spec, instantiate_family, parse_spec


class Value(enum.Enum):
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"
    UNKNOWN = "UNKNOWN"


LABELS = {
    "linking": {Value.POSITIVE: "LINKED", Value.NEGATIVE: "NOT_LINKED", Value.UNKNOWN: "UNKNOWN"},
    "knotting": {Value.POSITIVE: "KNOTTED", Value.NEGATIVE: "NOT_KNOTTED", Value.UNKNOWN: "UNKNOWN"},
}
STATUSES = ("KNOTTED", "NOT_KNOTTED", "LINKED", "NOT_LINKED")


@dataclass(frozen=True)
class Step:
    rule: str
    detail: str
    witness: MinorWitness | None = None
    axioms: tuple[str, ...] = ()
    # pattern/host the witness refers to, for re-validation
    pattern: Graph | None = None
    host: Graph | None = None


@dataclass(frozen=True)
class Verdict:
    mode: str
    value: Value
    steps: tuple[Step, ...] = ()
    attempted: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return LABELS[self.mode][self.value]

    @property
    def axioms(self) -> tuple[str, ...]:
        out: list[str] = []
        for s in self.steps:
            for a in s.axioms:
                if a not in out:
                    out.append(a)
        return tuple(out)

    def trace(self, indent: str = "  ", witnesses: bool = False) -> list[str]:
        lines = []
        for s in self.steps:
            lines.append(f"{indent}{s.rule}: {s.detail}")
            for a in s.axioms:
                lines.append(f"{indent}  axiom {a}")
            if witnesses and s.witness is not None:
                lines.append(s.witness.format(indent + "    "))
        if self.value is Value.UNKNOWN:
            lines.append(f"{indent}attempted: {', '.join(self.attempted)}")
        return lines


# -- knowledge base -----------------------------------------------------------------


@dataclass(frozen=True)
class KbEntry:
    status: str
    kind: str
    subject: str
    citation: str
    line: int = 0

    @property
    def ref(self) -> str:
        return f"{self.status} {self.subject} {self.citation}"

    @cached_property
    def spec(self) -> PartiteSpec | None:
        return None if self.subject.startswith("g:") else parse_spec(self.subject)

    @property
    def symbolic(self) -> bool:
        return self.spec is not None and self.spec.symbolic

    def graphs(self, n: int | None = None) -> list[Graph]:
        """Concrete graphs of the entry; symbolic entries need ``n``."""
        if self.spec is None:
            return [parse_oneline(self.subject[2:])]
        spec = self.spec
        if spec.symbolic:
            if n is None:
                raise GraphError(f"entry {self.subject} is symbolic")
            spec = instantiate_family(spec, n)
        return [c.graph for c in expand_spec(spec)]

    def fixed_order(self) -> int:
        """Vertex count excluding the symbolic part."""
        assert self.spec is not None
        return sum(p for p in self.spec.parts if p is not None)


def parse_kb(text: str) -> list[KbEntry]:
    entries = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise ParseError(f"expected 4 tab-separated columns, got {len(cols)}", no)
        status, kind, subject, citation = (c.strip() for c in cols)
        if status not in STATUSES:
            raise ParseError(f"unknown status {status!r}", no)
        entry = KbEntry(status, kind, subject, citation, no)
        try:
            if entry.spec is None:
                entry.graphs()
        except GraphError as exc:
            raise ParseError(f"bad subject {subject!r}: {exc}", no) from exc
        entries.append(entry)
    return entries


class KbInconsistency(GraphError):
    def __init__(self, conflicts):
        self.conflicts = conflicts
        lines = [f"{pos.ref} is a minor of {label} ({neg.ref})" for pos, neg, label in conflicts]
        super().__init__("inconsistent knowledge base: " + "; ".join(lines))


class KnowledgeBase:
    def __init__(self, entries: Sequence[KbEntry]):
        self.entries = list(entries)
        self._concrete: dict[str, list[tuple[Graph, KbEntry]]] = {s: [] for s in STATUSES}
        self._families: dict[str, list[KbEntry]] = {s: [] for s in STATUSES}
        self._index: dict[bytes, dict[str, KbEntry]] = {}
        for e in self.entries:
            if e.symbolic:
                self._families[e.status].append(e)
                continue
            for g in e.graphs():
                self._concrete[e.status].append((g, e))
                self._index.setdefault(canonical_form(g), {}).setdefault(e.status, e)
        self._concrete_sorted = {
            s: sorted(v, key=lambda t: (t[0].n, t[0].m, canonical_form(t[0])))
            for s, v in self._concrete.items()
        }
        self._check_statuses()

    @classmethod
    def load(cls, path: str | None = None, check: bool = True) -> "KnowledgeBase":
        """Read the base from ``path``, ``$KNOTLINK_KB`` or the bundled file.

        With ``check`` the pairwise minor consistency of the entries is
        verified and a contradiction raises :class:`KbInconsistency`.
        """
        path = path or os.environ.get("KNOTLINK_KB")
        if path:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = resources.files("knotlink").joinpath("data/kb.tsv").read_text(encoding="utf-8")
        kb = cls(parse_kb(text))
        if check:
            conflicts = kb.consistency_conflicts() + kb.consistency_conflicts("LINKED", "NOT_LINKED")
            if conflicts:
                raise KbInconsistency(conflicts)
        return kb

    def _check_statuses(self) -> None:
        opposite = {"KNOTTED": "NOT_KNOTTED", "LINKED": "NOT_LINKED"}
        for key, by_status in self._index.items():
            for pos, neg in opposite.items():
                if pos in by_status and neg in by_status:
                    raise GraphError(
                        f"knowledge base contradiction: {by_status[pos].ref} vs {by_status[neg].ref}")

    def identical(self, g: Graph, status: str) -> KbEntry | None:
        hit = self._index.get(canonical_form(g), {}).get(status)
        if hit is not None:
            return hit
        for fam in self._families[status]:
            n = g.n - fam.fixed_order()
            if n >= 1 and any(canonical_form(h) == canonical_form(g) for h in fam.graphs(n)):
                return fam
        return None

    def concrete(self, status: str) -> list[tuple[Graph, KbEntry]]:
        return self._concrete_sorted[status]

    def families(self, status: str) -> list[KbEntry]:
        return self._families[status]

    def entries_with(self, status: str, subject: str) -> list[KbEntry]:
        return [e for e in self.entries if e.status == status and e.subject == subject]

    def minor_of(self, g: Graph, status: str) -> tuple[Graph, KbEntry, str] | None:
        """A graph with ``status`` in the base that has ``g`` as a minor.

        Symbolic entries are instantiated with growing first part up to
        ``|V(g)|``, which is enough: in a model of g, a branch set can
        always be shrunk to use at most one vertex of the symbolic part.
        """
        for host, entry in self.concrete(status):
            if host.n >= g.n and host.m >= g.m and has_minor(host, g):
                return host, entry, entry.subject
        for fam in self.families(status):
            fixed = fam.fixed_order()
            for n in range(1, g.n + 1):
                if n + fixed < g.n:
                    continue
                for host in fam.graphs(n):
                    if host.m >= g.m and has_minor(host, g):
                        return host, fam, format_spec(instantiate_family(fam.spec, n))
        return None

    def consistency_conflicts(self, positive="KNOTTED", negative="NOT_KNOTTED") -> list[tuple[KbEntry, KbEntry, str]]:
        """Pairs where a positive entry is a minor of a negative entry."""
        conflicts = []
        for g, pe in self.concrete(positive):
            hit = self.minor_of(g, negative)
            if hit is not None:
                conflicts.append((pe, hit[1], hit[2]))
        return conflicts


def confirm_linking_entries(kb: KnowledgeBase) -> list[tuple[KbEntry, Graph, Verdict]]:
    """Re-decide every linking entry exactly; returns the entries that disagree."""
    bad = []
    for status in ("LINKED", "NOT_LINKED"):
        for g, entry in kb.concrete(status):
            v = decide_linking(g)
            if v.label != status:
                bad.append((entry, g, v))
    return bad


_default_kb: KnowledgeBase | None = None


def default_kb() -> KnowledgeBase:
    global _default_kb
    if _default_kb is None:
        _default_kb = KnowledgeBase.load()
    return _default_kb


def reset_default_kb() -> None:
    global _default_kb
    _default_kb = None
    _seed_cache.clear()


# -- seeds -----------------------------------------------------------------------

ROOTS = (("K7", "7"), ("K3,3,1,1", "3,3,1,1"))
EXTRA_SEEDS = (("K5,5-e", "5,5-e"),)

_seed_cache: dict[int, list[tuple[str, Graph, tuple[str, ...]]]] = {}


def knotted_seeds(kb: KnowledgeBase) -> list[tuple[str, Graph, tuple[str, ...]]]:
    """(name, graph, consumed axioms) for the knotted seed families.

    A root contributes only when the base lists it as knotted; triangle-Y
    descendants inherit the root's axioms.
    """
    hit = _seed_cache.get(id(kb))
    if hit is not None:
        return hit
    seeds = []
    for name, subject in ROOTS:
        backing = kb.entries_with("KNOTTED", subject)
        if not backing:
            continue
        axioms = tuple(e.ref for e in backing)
        root = parse_spec(subject)
        fam = compute_closure({name: expand_spec(root)[0].graph}, MoveSet(delta_y=True))
        for i, g in enumerate(fam.graphs()):
            label = name if i == 0 else f"{name} descendant #{i} ({g.n} vertices)"
            seeds.append((label, g, axioms))
    for name, subject in EXTRA_SEEDS:
        backing = kb.entries_with("KNOTTED", subject)
        if backing:
            seeds.append((name, expand_spec(parse_spec(subject))[0].graph, tuple(e.ref for e in backing)))
    _seed_cache[id(kb)] = seeds
    return seeds


# -- rules -----------------------------------------------------------------------


def dominating_pair(g: Graph) -> tuple[int, int] | None:
    dom = g.dominating_vertices()
    if len(dom) >= 2:
        return dom[0], dom[1]
    return None


def join_apex_rule(g: Graph, mode: str) -> Verdict | None:
    """Decide via a dominating vertex (linking) or dominating pair (knotting).

    Returns None when G has no such vertex or pair.
    """
    if mode == "linking":
        dom = g.dominating_vertices()
        if not dom:
            return None
        u = dom[0]
        rest = delete_vertex(g, u)
        return _join_verdict(mode, rest, f"vertex {u} dominates")
    if mode == "knotting":
        pair = dominating_pair(g)
        if pair is None:
            return None
        rest = delete_vertices(g, pair)
        return _join_verdict(mode, rest, f"vertices {pair[0]},{pair[1]} dominate")
    raise ValueError(f"unknown mode {mode!r}")


def _join_verdict(mode, rest: Graph, what: str) -> Verdict:
    obstruction = planarity_obstruction(rest)
    if obstruction is None:
        return Verdict(mode, Value.NEGATIVE, (Step("join", f"{what}; the rest is planar", host=rest),))
    name, w = obstruction
    return Verdict(mode, Value.POSITIVE, (
        Step("join", f"{what}; the rest has a {name} minor", witness=w, host=rest,
             pattern=_pattern_for(name)),))


def _pattern_for(name: str) -> Graph:
    from .minor import K5, K33

    return K5 if name == "K5" else K33


def decide_linking(g: Graph) -> Verdict:
    """Exact: positive iff some Petersen-family graph is a minor of g."""
    for i, p in enumerate(petersen_family()):
        if p.n <= g.n and p.m <= g.m and has_minor(g, p):
            w = find_minor_witness(g, p)
            return Verdict("linking", Value.POSITIVE, (
                Step("petersen-minor", f"Petersen family member #{i} ({p.n} vertices, {p.m} edges)",
                     witness=w, pattern=p, host=g),))
    return Verdict("linking", Value.NEGATIVE, (
        Step("petersen-minor", "no Petersen family member is a minor (exhaustive)"),))


def topological_core(g: Graph) -> tuple[Graph, int]:
    """Remove vertices of degree at most 1 and smooth degree-2 vertices.

    Knotting depends only on the space the graph forms: a pendant tree never
    lies on a cycle, and a degree-2 vertex is an interior point of a path.
    When the two neighbours of a degree-2 vertex are already adjacent, the
    path runs parallel to that edge and the vertex is simply deleted.
    Returns the reduced graph and the number of vertices removed.
    """
    rows = list(g.rows)
    alive = (1 << g.n) - 1
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if not (alive >> v) & 1:
                continue
            nb = rows[v] & alive
            d = bin(nb).count("1")
            if d <= 2:
                if d == 2:
                    a, b = _bits(nb)
                    rows[a] |= 1 << b
                    rows[b] |= 1 << a
                alive &= ~(1 << v)
                changed = True
    keep = list(_bits(alive))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[w]) for u in keep for w in _bits(rows[u] & alive) if u < w]
    return Graph.from_edges(len(keep), edges), g.n - len(keep)


def decide_knotting(g: Graph, kb: KnowledgeBase | None = None) -> Verdict:
    kb = kb or default_kb()
    steps: list[Step] = []
    core, removed = topological_core(g)
    if removed:
        steps.append(Step("reduce", f"removed {removed} vertices of degree <= 2; core has "
                                    f"{core.n} vertices, {core.m} edges"))
    attempted = []

    def done(value, step):
        return Verdict("knotting", value, tuple(steps + [step]), tuple(attempted))

    # the graph itself is a known unknotted graph
    attempted.append("kb-identity")
    for cand in (g, core) if removed else (g,):
        hit = kb.identical(cand, "NOT_KNOTTED")
        if hit is not None:
            return done(Value.NEGATIVE, Step("kb-identity", f"isomorphic to {hit.subject}", axioms=(hit.ref,)))
    # edge bound
    attempted.append("edge-bound")
    if core.n >= K7_RULE.min_order and core.m >= K7_RULE.threshold(core.n):
        return done(Value.POSITIVE, Step(
            "edge-bound", f"{core.m} edges >= 5*{core.n}-14 = {K7_RULE.threshold(core.n)}"))
    # join with K2
    attempted.append("join")
    jv = join_apex_rule(core, "knotting")
    if jv is not None:
        return Verdict("knotting", jv.value, tuple(steps) + jv.steps, tuple(attempted))
    # a knotted seed is a minor
    attempted.append("seed-minor")
    for name, seed, axioms in knotted_seeds(kb):
        if seed.n <= core.n and seed.m <= core.m and has_minor(core, seed):
            w = find_minor_witness(core, seed)
            return done(Value.POSITIVE, Step("seed-minor", f"has {name} as a minor", witness=w,
                                             axioms=axioms, pattern=seed, host=core))
    # minor of a known unknotted graph
    attempted.append("kb-minor")
    hit = kb.minor_of(core, "NOT_KNOTTED")
    if hit is not None:
        host, entry, label = hit
        w = find_minor_witness(host, core)
        return done(Value.NEGATIVE, Step("kb-minor", f"minor of {label}", witness=w,
                                         axioms=(entry.ref,), pattern=core, host=host))
    # subgraph of a planar graph joined with K2
    attempted.append("apex-pair")
    pair = apex_pair(core)
    if pair is not None:
        rest = delete_vertices(core, pair)
        return done(Value.NEGATIVE, Step(
            "apex-pair", f"removing vertices {pair[0]},{pair[1]} leaves a planar graph, so G lies "
                         f"inside that graph joined with K2", host=rest))
    return Verdict("knotting", Value.UNKNOWN, tuple(steps), tuple(attempted))


def apex_pair(g: Graph) -> tuple[int, int] | None:
    """Two vertices whose deletion leaves a planar graph, if any exist."""
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if is_planar(delete_vertices(g, (u, v))):
                return u, v
    return None


# -- census propagation -------------------------------------------------------------


class PropagationConflict(RuntimeError):
    def __init__(self, graph: Graph, a: Verdict, b: Verdict):
        self.graph, self.a, self.b = graph, a, b
        lines = ["graph certified both ways:"] + a.trace() + ["versus"] + b.trace()
        super().__init__("\n".join(lines))


def propagate_census(levels: Sequence[Sequence[Graph]], kb: KnowledgeBase | None = None,
                     decide: Callable[[Graph], Verdict] | None = None) -> list[dict[bytes, Verdict]]:
    """Knotting verdicts for graphs arranged by edge-deletion depth.

    ``levels[k]`` holds graphs with k edges removed from a common complete
    graph; every graph at level k+1 is one edge short of some graph at
    level k. A graph with an unknotted parent is unknotted; the others go
    through :func:`decide_knotting`. After the pass, every inherited
    negative is also run through the rules; if they certify it knotted, the
    two certificates contradict each other and :class:`PropagationConflict`
    is raised.
    """
    kb = kb or default_kb()
    decide = decide or (lambda h: decide_knotting(h, kb))
    out: list[dict[bytes, Verdict]] = []
    graphs_by_level: list[dict[bytes, Graph]] = []
    for k, level in enumerate(levels):
        verdicts: dict[bytes, Verdict] = {}
        keyed = {canonical_form(g): g for g in level}
        for key in sorted(keyed):
            g = keyed[key]
            parent = _negative_parent(g, graphs_by_level[-1], out[-1]) if k else None
            if parent is not None:
                pk, pv = parent
                verdicts[key] = Verdict("knotting", Value.NEGATIVE, (
                    Step("parent", f"subgraph of an unknotted graph with {k - 1} edges removed "
                                   f"({pk.hex()[:12]})", axioms=pv.axioms),))
            else:
                verdicts[key] = decide(g)
        out.append(verdicts)
        graphs_by_level.append(keyed)
    _check_conflicts(graphs_by_level, out, decide)
    return out


def _parents(g: Graph, prev: dict[bytes, Graph]):
    seen = set()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                key = canonical_form(add_edge(g, u, v))
                if key in prev and key not in seen:
                    seen.add(key)
                    yield key


def _negative_parent(g, prev, prev_verdicts):
    for key in sorted(_parents(g, prev)):
        v = prev_verdicts[key]
        if v.value is Value.NEGATIVE:
            return key, v
    return None


def _check_conflicts(graphs_by_level, out, decide) -> None:
    for k in range(1, len(out)):
        for key in sorted(out[k]):
            verdict = out[k][key]
            if verdict.value is Value.NEGATIVE and verdict.steps[-1].rule == "parent":
                own = decide(graphs_by_level[k][key])
                if own.value is Value.POSITIVE:
                    raise PropagationConflict(graphs_by_level[k][key], own, verdict)
