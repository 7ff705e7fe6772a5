"""Complete partite graphs with a few edges removed, in table notation.

Notation: part sizes as comma-separated decimals (``n`` for a symbolic
part), optionally followed by a removal suffix. Parts are lettered in the
order written (``a`` is the first part); a vertex is a letter plus a
1-based subscript, which may be omitted for a one-vertex part. A single
size ``N`` denotes the complete graph K_N, whose vertices are the
one-vertex parts a, b, c, ...

    4,3,1-{(a1,b1),(a2,b2)}   two named removals
    3,2,1,1-(b,c)             one removal; an unsubscripted letter means
                              "any vertex of that part"
    4,2,2-{(b,c),e}           a named removal followed by any other edge
    3,3,2-e   7-2e            any one / any two edges
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from itertools import combinations, product
from typing import Iterable, Sequence

from .canon import canonical_form
from .graph import CapacityError, Graph, GraphError, MAX_ORDER, ParseError, delete_edge


@dataclass(frozen=True)
class VRef:
    part: int                 # 0-based part number
    index: int | None = None  # 1-based subscript, None when omitted

    def format(self) -> str:
        letter = chr(ord("a") + self.part)
        return letter if self.index is None else f"{letter}{self.index}"


Pair = tuple[VRef, VRef]


@dataclass(frozen=True)
class PartiteSpec:
    parts: tuple[int | None, ...]
    # each removal is a pair of vertex references, or None for "any edge"
    removals: tuple[Pair | None, ...] = ()

    @property
    def deficiency(self) -> int:
        return len(self.removals)

    @property
    def symbolic(self) -> bool:
        return any(p is None for p in self.parts)

    @property
    def is_complete_graph(self) -> bool:
        return len(self.parts) == 1

    def effective_parts(self) -> tuple[int, ...]:
        if self.symbolic:
            raise GraphError(f"{format_spec(self)} has a symbolic part; instantiate it first")
        if self.is_complete_graph:
            return (1,) * self.parts[0]
        return tuple(self.parts)  # type: ignore[arg-type]

    def order(self) -> int:
        return sum(self.effective_parts())

    def __str__(self) -> str:
        return format_spec(self)


# -- parsing and formatting ----------------------------------------------------

_VREF = re.compile(r"([a-z])(\d*)$")


def _parse_vref(tok: str, text: str) -> VRef:
    m = _VREF.match(tok)
    if not m:
        raise ParseError(f"bad vertex reference {tok!r} in {text!r}")
    idx = int(m.group(2)) if m.group(2) else None
    if idx == 0:
        raise ParseError(f"subscripts are 1-based in {text!r}")
    return VRef(ord(m.group(1)) - ord("a"), idx)


def _parse_items(body: str, text: str) -> list[Pair | None]:
    items: list[Pair | None] = []
    pos = 0
    while pos < len(body):
        if body[pos] == ",":
            pos += 1
            continue
        if body[pos] == "e" and (pos + 1 == len(body) or body[pos + 1] == ","):
            items.append(None)
            pos += 1
            continue
        if body[pos] != "(":
            raise ParseError(f"unexpected {body[pos]!r} in removal list of {text!r}")
        end = body.find(")", pos)
        if end < 0:
            raise ParseError(f"unclosed pair in {text!r}")
        toks = body[pos + 1:end].split(",")
        if len(toks) != 2:
            raise ParseError(f"a removal pair needs two vertices in {text!r}")
        items.append((_parse_vref(toks[0], text), _parse_vref(toks[1], text)))
        pos = end + 1
    return items


def normalize_spec_text(text: str) -> str:
    t = re.sub(r"\s+", "", text)
    for ch in ("$", "\\", "_"):
        t = t.replace(ch, "")
    return t


def parse_spec(text: str) -> PartiteSpec:
    t = normalize_spec_text(text)
    sizes, sep, rem = t.partition("-")
    if not sizes:
        raise ParseError(f"missing part sizes in {text!r}")
    parts: list[int | None] = []
    for tok in sizes.split(","):
        if tok == "n":
            parts.append(None)
        elif tok.isdigit() and int(tok) > 0:
            parts.append(int(tok))
        else:
            raise ParseError(f"bad part size {tok!r} in {text!r}")
    removals: list[Pair | None] = []
    if sep:
        if re.fullmatch(r"\d*e", rem):
            k = int(rem[:-1]) if rem[:-1] else 1
            removals = [None] * k
        elif rem.startswith("{") and rem.endswith("}"):
            removals = _parse_items(rem[1:-1], text)
        elif rem.startswith("("):
            removals = _parse_items(rem, text)
            if len(removals) != 1:
                raise ParseError(f"use braces for several removals in {text!r}")
        else:
            raise ParseError(f"bad removal suffix {rem!r} in {text!r}")
        if not removals:
            raise ParseError(f"empty removal list in {text!r}")
    spec = PartiteSpec(tuple(parts), tuple(removals))
    _validate_refs(spec, text)
    return spec


def _validate_refs(spec: PartiteSpec, text: str) -> None:
    parts = spec.parts
    if spec.is_complete_graph and spec.parts[0] is not None:
        parts = (1,) * spec.parts[0]
    for item in spec.removals:
        if item is None:
            continue
        for ref in item:
            if ref.part >= len(parts):
                raise ParseError(f"part {ref.format()!r} does not exist in {text!r}")
            size = parts[ref.part]
            if ref.index is not None and size is not None and ref.index > size:
                raise ParseError(f"{ref.format()} exceeds part size {size} in {text!r}")
        if item[0].part == item[1].part:
            raise ParseError(f"{item[0].format()},{item[1].format()} lie in one part: {text!r}")


def format_spec(spec: PartiteSpec) -> str:
    sizes = ",".join("n" if p is None else str(p) for p in spec.parts)
    if not spec.removals:
        return sizes
    if all(r is None for r in spec.removals):
        k = len(spec.removals)
        return f"{sizes}-{'' if k == 1 else k}e"

    def item(r):
        return "e" if r is None else f"({r[0].format()},{r[1].format()})"

    if len(spec.removals) == 1:
        return f"{sizes}-{item(spec.removals[0])}"
    return sizes + "-{" + ",".join(item(r) for r in spec.removals) + "}"


def canonical_spec_text(text: str) -> str:
    """``format(parse(text))``; also the normal form used for round trips."""
    return format_spec(parse_spec(text))


# -- graphs --------------------------------------------------------------------


def _offsets(parts: Sequence[int]) -> list[int]:
    out, total = [], 0
    for p in parts:
        out.append(total)
        total += p
    return out


def _base(parts: Sequence[int]) -> tuple[Graph, list[int], list[int]]:
    total = sum(parts)
    if total > MAX_ORDER:
        raise CapacityError(f"{total} vertices exceed the {MAX_ORDER}-vertex limit")
    offs = _offsets(parts)
    owner = []
    for i, p in enumerate(parts):
        owner += [i] * p
    edges = [(u, v) for u, v in combinations(range(total), 2) if owner[u] != owner[v]]
    return Graph.from_edges(total, edges), offs, owner


def _ref_choices(ref: VRef, parts, offs) -> list[int]:
    if ref.part >= len(parts):
        raise GraphError(f"part {ref.format()} does not exist")
    size = parts[ref.part]
    if ref.index is not None:
        if ref.index > size:
            raise GraphError(f"{ref.format()} exceeds part size {size}")
        return [offs[ref.part] + ref.index - 1]
    return [offs[ref.part] + i for i in range(size)]


def build_graph(spec: PartiteSpec) -> Graph:
    """The graph of a determinate spec: vertices grouped by part, part a first.

    An unsubscripted letter names vertex 1 of its part.
    """
    parts = spec.effective_parts()
    g, offs, _ = _base(parts)
    if any(r is None for r in spec.removals):
        raise GraphError(f"{format_spec(spec)} removes unspecified edges; use expand_spec")
    for a, b in spec.removals:  # type: ignore[misc]
        u = offs[a.part] + (a.index or 1) - 1
        v = offs[b.part] + (b.index or 1) - 1
        if not g.has_edge(u, v):
            raise GraphError(f"removal ({a.format()},{b.format()}) repeats an edge")
        g = delete_edge(g, u, v)
    return g


def vertex_name(v: int, parts: Sequence[int]) -> VRef:
    offs = _offsets(parts)
    for i in range(len(parts) - 1, -1, -1):
        if v >= offs[i]:
            return VRef(i, None if parts[i] == 1 else v - offs[i] + 1)
    raise GraphError(f"vertex {v} outside parts {parts}")


def label_removal(parts: Sequence[int], edges: Iterable[tuple[int, int]], written=None) -> PartiteSpec:
    """Spec in table notation for an explicit set of removed vertex pairs."""
    removals = []
    for u, v in sorted(tuple(sorted(e)) for e in edges):
        removals.append((vertex_name(u, parts), vertex_name(v, parts)))
    base = written if written is not None else tuple(parts)
    return PartiteSpec(tuple(base), tuple(removals))


@dataclass(frozen=True)
class DeficientClass:
    """One isomorphism class of removals: a representative label and its graph."""

    spec: PartiteSpec
    removed: tuple[tuple[int, int], ...]
    graph: Graph


def _dedup(parts, written, choices: Iterable[frozenset], base: Graph) -> list[DeficientClass]:
    classes: dict[bytes, tuple] = {}
    for removed in choices:
        g = base
        for u, v in removed:
            g = delete_edge(g, u, v)
        key = canonical_form(g)
        rep = tuple(sorted(tuple(sorted(e)) for e in removed))
        if key not in classes or rep < classes[key][0]:
            classes[key] = (rep, g)
    out = [DeficientClass(label_removal(parts, rep, written), rep, g)
           for rep, g in classes.values()]
    out.sort(key=lambda c: c.removed)
    return out


def expand_spec(spec: PartiteSpec) -> list[DeficientClass]:
    """Every isomorphism class of graph the (possibly wildcarded) spec denotes."""
    parts = spec.effective_parts()
    base, offs, owner = _base(parts)
    cross = base.edges()
    items = list(spec.removals)
    if not items:
        return [DeficientClass(spec, (), base)]
    reps_first = None
    if all(r is None for r in items):
        # any removal set is equivalent to one whose first edge joins
        # vertex 1 of one part to vertex 1 of another
        reps_first = [(offs[i], offs[j]) for i, j in combinations(range(len(parts)), 2)]

    def rec(k, chosen, named):
        if k == len(items):
            yield frozenset(chosen)
            return
        item = items[k]
        if item is None:
            pool = reps_first if (k == 0 and reps_first is not None) else cross
            for e in pool:
                if e not in chosen:
                    yield from rec(k + 1, chosen | {e}, named)
            return
        a, b = item
        ca = _ref_choices(a, parts, offs)
        cb = _ref_choices(b, parts, offs)
        for u, v in product(ca, cb):
            nm = dict(named)
            ok = True
            for ref, x in ((a, u), (b, v)):
                if ref.index is not None:
                    key = (ref.part, ref.index)
                    if nm.setdefault(key, x) != x:
                        ok = False
            if not ok or u == v:
                continue
            e = (min(u, v), max(u, v))
            if owner[u] == owner[v]:
                raise GraphError(f"({a.format()},{b.format()}) lies inside one part")
            if e in chosen:
                continue
            yield from rec(k + 1, chosen | {e}, nm)

    choices = set(rec(0, frozenset(), {}))
    if not choices:
        raise GraphError(f"{format_spec(spec)} names no valid removal set")
    return _dedup(parts, spec.parts, choices, base)


def enumerate_deficient(parts: Sequence[int], k: int,
                        between: Iterable[tuple[int, int]] | None = None) -> list[DeficientClass]:
    """Isomorphism classes of ``K_parts`` minus k edges.

    ``between`` optionally restricts removals to the given part pairs
    (0-based). For a complete base (all parts of size 1) any k is handled
    level by level; otherwise k is limited to 2, which is all the tables need.
    """
    parts = tuple(parts)
    base, offs, owner = _base(parts)
    allowed = None
    if between is not None:
        allowed = {frozenset(p) for p in between}
    pool = [e for e in base.edges()
            if allowed is None or frozenset((owner[e[0]], owner[e[1]])) in allowed]
    if k == 0:
        return [DeficientClass(PartiteSpec(parts), (), base)]
    if all(p == 1 for p in parts) and allowed is None:
        return _complete_levels(parts, k, base)
    if k > 2:
        raise GraphError("partite removal enumeration is limited to k <= 2")
    choices = (frozenset(c) for c in combinations(pool, k))
    return _dedup(parts, parts, choices, base)


def _complete_levels(parts, k, base: Graph) -> list[DeficientClass]:
    level = {canonical_form(base): ((), base)}
    for _ in range(k):
        nxt: dict[bytes, tuple] = {}
        for removed, g in level.values():
            for u, v in g.edges():
                h = delete_edge(g, u, v)
                key = canonical_form(h)
                rep = tuple(sorted(removed + ((u, v),)))
                if key not in nxt or rep < nxt[key][0]:
                    nxt[key] = (rep, h)
        level = nxt
    out = [DeficientClass(label_removal(parts, rep), rep, g) for rep, g in level.values()]
    out.sort(key=lambda c: c.removed)
    return out


def combine_parts(spec: PartiteSpec, i: int, j: int) -> tuple[PartiteSpec, int]:
    """Merge parts i and j; removals between them disappear and are counted.

    The merged part takes the place of the lower-numbered one; vertices of
    the other part are renumbered after it.
    """
    parts = list(spec.effective_parts())
    if i == j or not (0 <= i < len(parts) and 0 <= j < len(parts)):
        raise GraphError(f"invalid parts {i}, {j}")
    i, j = min(i, j), max(i, j)
    shift = parts[i]

    def move(ref: VRef) -> VRef:
        idx = ref.index or 1
        if ref.part == j:
            return VRef(i, shift + idx)
        part = ref.part - 1 if ref.part > j else ref.part
        size = parts[ref.part]
        if part == i:
            return VRef(i, idx)
        return VRef(part, None if size == 1 else idx)

    dropped = 0
    removals = []
    for item in spec.removals:
        if item is None:
            raise GraphError("cannot combine parts of a spec with unnamed removals")
        a, b = item
        if {a.part, b.part} == {i, j}:
            dropped += 1
            continue
        removals.append((move(a), move(b)))
    new_parts = parts[:i] + [parts[i] + parts[j]] + parts[i + 1:j] + parts[j + 1:]
    return PartiteSpec(tuple(new_parts), tuple(removals)), dropped


def instantiate_family(spec: PartiteSpec, n: int) -> PartiteSpec:
    """Replace the symbolic part size with ``n``."""
    if n < 1:
        raise GraphError("instantiation size must be positive")
    return replace(spec, parts=tuple(n if p is None else p for p in spec.parts))


def letter(part: int) -> str:
    return chr(ord("a") + part)
