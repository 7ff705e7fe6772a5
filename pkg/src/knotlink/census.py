"""Knotting census of graphs on eight vertices with at most eight edges missing."""
from __future__ import annotations

from dataclasses import dataclass, field

from .canon import canonical_form, is_isomorphic
from .classifier import KnowledgeBase, Value, Verdict, decide_knotting, default_kb, propagate_census
from .enumerate import edge_deletion_levels
from .family import h8
from .graph import Graph, disjoint_union, edges_oneline, parse_oneline, to_graph6

ORDER = 8
MAX_DEFICIENCY = 8
# counts quoted for each deficiency; None where no count is given
STATED_POSITIVE = (1, 1, 2, 3, 4, 4, 6, 2, 0)
STATED_CLASSES = (1, 1, 2, 5, 11, 24, 56, None, None)
STATED_TOTAL = 20


@dataclass
class CensusReport:
    classes: list[int]
    positives: list[int]
    unknown: list[tuple[int, Graph, Verdict]]
    positive_graphs: list[tuple[int, Graph, Verdict]]
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.positives)

    @property
    def ok(self) -> bool:
        return not self.unknown and all(ok for _, ok in self.checks)

    def lines(self, porcelain: bool = False, listing: bool = False, graph6: bool = False) -> list[str]:
        out = []
        if not porcelain:
            out.append(f"Knotting census on {ORDER} vertices")
            out.append("  k  classes  knotted  stated")
        for k, (c, p) in enumerate(zip(self.classes, self.positives)):
            stated = STATED_POSITIVE[k]
            if porcelain:
                out.append(f"level\t{k}\t{c}\t{p}\t{stated}")
            else:
                out.append(f"  {k}  {c:>7}  {p:>7}  {stated:>6}")
        if porcelain:
            out.append(f"total\t{self.total}\tstated={STATED_TOTAL}")
        else:
            out.append(f"  total knotted: {self.total}")
        if self.total != STATED_TOTAL:
            note = (f"computed total {self.total} differs from the stated total of {STATED_TOTAL}; "
                    f"the stated per-level counts sum to {sum(STATED_POSITIVE)}")
            out.append(("note\t" + note) if porcelain else "  note: " + note)
        for name, ok in self.checks:
            out.append(f"check\t{name}\t{'PASS' if ok else 'FAIL'}" if porcelain
                       else f"  {'PASS' if ok else 'FAIL'}  {name}")
        for k, g, v in self.unknown:
            out.append(f"unknown\t{k}\t{edges_oneline(g)}" if porcelain
                       else f"  UNKNOWN at k={k}: {edges_oneline(g)}")
        if listing or graph6:
            for k, g, v in self.positive_graphs:
                text = to_graph6(g) if graph6 else edges_oneline(g)
                if porcelain:
                    out.append(f"knotted\t{k}\t{text}\t{','.join(s.rule for s in v.steps)}")
                else:
                    out.append(f"  k={k}  {text}")
                    out.extend(v.trace("      "))
        return out


def run_census8(kb: KnowledgeBase | None = None) -> CensusReport:
    kb = kb or default_kb()
    top = ORDER * (ORDER - 1) // 2
    levels = [level for _, level in edge_deletion_levels(ORDER, top - MAX_DEFICIENCY)]
    verdicts = propagate_census(levels, kb)
    classes, positives, unknown, pos_graphs = [], [], [], []
    for k, (level, vmap) in enumerate(zip(levels, verdicts)):
        classes.append(len(level))
        count = 0
        for g in sorted(level, key=canonical_form):
            v = vmap[canonical_form(g)]
            if v.value is Value.POSITIVE:
                count += 1
                pos_graphs.append((k, g, v))
            elif v.value is Value.UNKNOWN:
                unknown.append((k, g, v))
        positives.append(count)
    report = CensusReport(classes, positives, unknown, pos_graphs)
    for k in range(MAX_DEFICIENCY + 1):
        report.checks.append((f"k={k} knotted count {positives[k]} == {STATED_POSITIVE[k]}",
                              positives[k] == STATED_POSITIVE[k]))
        if STATED_CLASSES[k] is not None:
            report.checks.append((f"k={k} class count {classes[k]} == {STATED_CLASSES[k]}",
                                  classes[k] == STATED_CLASSES[k]))
    seven = [g for k, g, _ in pos_graphs if k == 7]
    k7_k1 = disjoint_union(Graph.complete(7), Graph.empty(1))
    report.checks.append(("k=7 knotted graphs are H8 and K7 plus an isolated vertex",
                          len(seven) == 2 and any(is_isomorphic(g, h8()) for g in seven)
                          and any(is_isomorphic(g, k7_k1) for g in seven)))
    report.checks.append(("every listed knotted graph re-verifies from its edge list",
                           all(_reverify(g, kb) for _, g, _ in pos_graphs)))
    return report


def _reverify(g: Graph, kb: KnowledgeBase) -> bool:
    return decide_knotting(parse_oneline(edges_oneline(g)), kb).value is Value.POSITIVE
