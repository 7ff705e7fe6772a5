"""Reproduce the classification tables from their embedded expectations."""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .canon import canonical_form
from .classifier import KnowledgeBase, Value, Verdict, decide_knotting, decide_linking, default_kb
from .graph import CapacityError, GraphError, ParseError
from .partite import PartiteSpec, expand_spec, format_spec, instantiate_family, parse_spec

TABLE_IDS = tuple(range(1, 9))
DEFAULT_NMAX = 7


@dataclass(frozen=True)
class ExpectedEntry:
    status: str
    parts: int
    spec: str
    note: str = ""
    line: int = 0

    @property
    def is_all(self) -> bool:
        return self.spec == "all"


@dataclass
class TableExpectation:
    table_id: int
    mode: str
    deficiency: int
    title: str
    entries: list[ExpectedEntry]


def parse_table(table_id: int, text: str) -> TableExpectation:
    mode, deficiency, title = None, None, ""
    entries = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not line:
            continue
        if line.startswith("#"):
            if not title and ":" in line:
                title = line.split(":", 1)[1].strip()
            continue
        if line.startswith("@mode "):
            mode = line.split()[1]
            continue
        if line.startswith("@deficiency "):
            deficiency = int(line.split()[1])
            continue
        cols = line.split("\t")
        if len(cols) not in (3, 4):
            raise ParseError(f"table {table_id}: expected 3 or 4 columns", no)
        status, parts, spec = cols[:3]
        entry = ExpectedEntry(status, int(parts), spec, cols[3] if len(cols) == 4 else "", no)
        if not entry.is_all:
            parse_spec(spec)
        entries.append(entry)
    if mode not in ("linking", "knotting") or deficiency is None:
        raise ParseError(f"table {table_id}: missing @mode or @deficiency header")
    seen: dict[str, str] = {}
    for e in entries:
        key = e.spec if e.is_all else format_spec(parse_spec(e.spec))
        if seen.setdefault(key, e.status) != e.status:
            raise ParseError(f"table {table_id}: {e.spec} appears under both statuses", e.line)
    return TableExpectation(table_id, mode, deficiency, title, entries)


def load_table(table_id: int) -> TableExpectation:
    if table_id not in TABLE_IDS:
        raise GraphError(f"no table {table_id}; choose 1-8")
    text = resources.files("knotlink").joinpath(f"data/table{table_id}.txt").read_text(encoding="utf-8")
    return parse_table(table_id, text)


def all_row_specs(parts: int, deficiency: int) -> list[PartiteSpec]:
    """Finite stand-ins for an "every graph with >= parts parts" cell.

    The smallest such graph with its removals is a subgraph of every other
    one, so the all-singleton case carries the row; one part of size 2 and
    one extra part are included as spot checks.
    """
    shapes = [(1,) * parts, (2,) + (1,) * (parts - 1), (1,) * (parts + 1)]
    return [PartiteSpec(s if len(s) > 1 else s, (None,) * deficiency) for s in shapes]


def entry_specs(entry: ExpectedEntry, deficiency: int, n_max: int) -> list[PartiteSpec]:
    if entry.is_all:
        return all_row_specs(entry.parts, deficiency)
    spec = parse_spec(entry.spec)
    if not spec.symbolic:
        return [spec]
    out = []
    for n in range(1, n_max + 1):
        inst = instantiate_family(spec, n)
        if any(r is not None and any(v.index is not None and v.index > (inst.parts[v.part] or 0)
                                     for v in r) for r in inst.removals):
            continue
        out.append(inst)
    return out


@dataclass
class ClassResult:
    instance: str
    representative: str
    verdict: Verdict


@dataclass
class EntryResult:
    entry: ExpectedEntry
    classes: list[ClassResult] = field(default_factory=list)
    error: str = ""
    skipped: list[str] = field(default_factory=list)

    @property
    def computed(self) -> str:
        labels = sorted({c.verdict.label for c in self.classes})
        if self.error:
            return "ERROR"
        return labels[0] if len(labels) == 1 else "MIXED(" + ",".join(labels) + ")"

    @property
    def unknown(self) -> bool:
        return any(c.verdict.value is Value.UNKNOWN for c in self.classes)

    @property
    def ok(self) -> bool:
        return not self.error and bool(self.classes) and all(
            c.verdict.label == self.entry.status for c in self.classes)

    @property
    def axioms(self) -> tuple[str, ...]:
        out: list[str] = []
        for c in self.classes:
            for a in c.verdict.axioms:
                if a not in out:
                    out.append(a)
        return tuple(out)


@dataclass
class TableReport:
    table: TableExpectation
    n_max: int
    results: list[EntryResult]

    @property
    def mismatches(self) -> list[EntryResult]:
        return [r for r in self.results if not r.ok]

    @property
    def unknowns(self) -> list[EntryResult]:
        return [r for r in self.results if r.unknown]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def lines(self, porcelain: bool = False, certificates: bool = False) -> list[str]:
        t = self.table
        out = []
        if porcelain:
            out.append(f"table\t{t.table_id}\t{t.mode}\t{t.deficiency}\tnmax={self.n_max}")
        else:
            out.append(f"Table {t.table_id}: {t.title} (n_max={self.n_max})")
        for r in self.results:
            status = "MATCH" if r.ok else "MISMATCH"
            ax = "; ".join(r.axioms) if r.axioms else "none"
            if porcelain:
                out.append("\t".join(["entry", r.entry.spec, r.entry.status, r.computed, status,
                                      str(len(r.classes)), "axioms=" + ax]))
                for c in r.classes:
                    rules = ",".join(s.rule for s in c.verdict.steps)
                    out.append("\t".join(["class", c.instance, c.representative, c.verdict.label, rules]))
                if r.error:
                    out.append(f"error\t{r.entry.spec}\t{r.error}")
                if r.entry.note:
                    out.append(f"flag\t{r.entry.spec}\t{r.entry.note}")
                continue
            out.append(f"  {status:<8} {r.entry.spec:<34} expected {r.entry.status:<11} "
                       f"computed {r.computed:<11} classes {len(r.classes)}")
            if t.mode == "knotting":
                out.append(f"           axioms: {ax}")
            if r.entry.note:
                out.append(f"           flag: {r.entry.note}")
            if r.error:
                out.append(f"           error: {r.error}")
            if certificates or not r.ok:
                for c in r.classes:
                    out.append(f"           {c.representative}: {c.verdict.label}")
                    out.extend(c.verdict.trace("             "))
        summary = (f"{len(self.results)} entries, {len(self.results) - len(self.mismatches)} match, "
                   f"{len(self.mismatches)} mismatch, {len(self.unknowns)} with unknown classes")
        out.append(("summary\t" + summary) if porcelain else "  " + summary)
        return out


def run_table(table_id: int, n_max: int = DEFAULT_NMAX, kb: KnowledgeBase | None = None) -> TableReport:
    table = load_table(table_id)
    kb = kb or default_kb()
    memo: dict[bytes, Verdict] = {}

    def decide(g):
        key = canonical_form(g)
        if key not in memo:
            memo[key] = decide_linking(g) if table.mode == "linking" else decide_knotting(g, kb)
        return memo[key]

    results = []
    for entry in table.entries:
        res = EntryResult(entry)
        try:
            for spec in entry_specs(entry, table.deficiency, n_max):
                try:
                    classes = expand_spec(spec)
                except CapacityError:
                    raise
                except GraphError as exc:
                    res.skipped.append(f"{format_spec(spec)}: {exc}")
                    continue
                for c in classes:
                    res.classes.append(ClassResult(format_spec(spec), format_spec(c.spec), decide(c.graph)))
        except (GraphError, RuntimeError) as exc:
            res.error = str(exc)
        results.append(res)
    return TableReport(table, n_max, results)
