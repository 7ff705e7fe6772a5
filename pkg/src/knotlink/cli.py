"""Command-line entry point ``knotlink``.

Exit status: 0 everything decided and matching, 1 a mismatch or an
undecided graph, 2 bad input, 3 the search-node limit was hit.
"""
from __future__ import annotations

import argparse
import os
import sys

from .classifier import Value, decide_knotting, decide_linking, default_kb
from .family import MoveSet, cached_closure, named_graph
from .graph import Graph, GraphError, edges_oneline, parse_graph, parse_oneline
from .minor import RULES, SearchLimitError, verify_bound_exhaustive
from .partite import expand_spec, format_spec, instantiate_family, parse_spec

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3
SEEDS = {"k6": "K6", "k7": "K7", "k3311": "K3311"}


def _emit(lines) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def _load_subjects(text: str, n: int | None) -> list[tuple[str, Graph]]:
    if text.startswith("g:"):
        body = text[2:]
        if os.path.exists(body):
            with open(body, encoding="utf-8") as fh:
                return [(body, parse_graph(fh.read()))]
        return [(text, parse_oneline(body))]
    try:
        spec = parse_spec(text)
    except GraphError:
        try:
            return [(text, named_graph(text))]
        except KeyError:
            pass
        raise
    if spec.symbolic:
        if n is None:
            raise GraphError(f"{text} has a symbolic part; pass --n")
        spec = instantiate_family(spec, n)
    return [(format_spec(c.spec), c.graph) for c in expand_spec(spec)]


def cmd_classify(args) -> int:
    subjects = _load_subjects(args.subject, args.n)
    both = not (args.linking or args.knotting)
    status = EXIT_OK
    out = []
    for label, g in subjects:
        verdicts = []
        if args.linking or both:
            verdicts.append(decide_linking(g))
        if args.knotting or both:
            verdicts.append(decide_knotting(g))
        for v in verdicts:
            if v.value is Value.UNKNOWN:
                status = EXIT_FAIL
            if args.porcelain:
                rules = ",".join(s.rule for s in v.steps)
                out.append("\t".join([label, v.mode, v.label, rules, "axioms=" + ("; ".join(v.axioms) or "none")]))
            else:
                out.append(f"{label}: {v.mode} {v.label}")
                out.extend(v.trace("  ", witnesses=args.witness))
    _emit(out)
    return status


def cmd_table(args) -> int:
    from .tables import TABLE_IDS, run_table

    ids = TABLE_IDS if args.table == "all" else (int(args.table),)
    status = EXIT_OK
    out = []
    for tid in ids:
        report = run_table(tid, n_max=args.nmax)
        out.extend(report.lines(porcelain=args.porcelain, certificates=args.certificates))
        if not report.ok:
            status = EXIT_FAIL
    _emit(out)
    return status


def cmd_census8(args) -> int:
    from .census import run_census8

    report = run_census8()
    _emit(report.lines(porcelain=args.porcelain, listing=args.list, graph6=args.graph6))
    return EXIT_OK if report.ok else EXIT_FAIL


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise GraphError(f"bad range {text!r}; use A..B") from None
    if a > b:
        raise GraphError(f"empty range {text!r}")
    return range(a, b + 1)


def cmd_bounds(args) -> int:
    rule = RULES[args.rule]
    status = EXIT_OK
    out = []
    for n in _range(args.n):
        rep = verify_bound_exhaustive(n, rule)
        sharp = "none"
        if rep.sharp_example is not None:
            sharp = f"{rep.sharp_example.m} edges {edges_oneline(rep.sharp_example)}"
        if args.porcelain:
            out.append(f"bound\t{rule.name}\t{n}\t{rep.threshold}\t{rep.checked}\t{len(rep.violations)}\t{sharp}")
        else:
            out.append(f"rule {rule.name} (K{rule.target} minor once m >= {rule.coefficient}n-{rule.constant}) "
                       f"n={n}: threshold {rep.threshold}, {rep.checked} classes checked, "
                       f"{len(rep.violations)} violations")
            out.append(f"  largest class without the minor below threshold: {sharp}")
        for g in rep.violations:
            out.append(f"  violation: {edges_oneline(g)}")
        if not rep.ok:
            status = EXIT_FAIL
    _emit(out)
    return status


def cmd_family(args) -> int:
    moves = MoveSet(delta_y=args.dy or not args.yd, y_delta=args.yd)
    fam = cached_closure(SEEDS[args.seed], moves)
    keys = sorted(fam.members, key=fam.sort_key)
    index = {k: i for i, k in enumerate(keys)}
    out = []
    if not args.porcelain:
        out.append(f"closure of {SEEDS[args.seed]} under {moves.label()}: {len(keys)} members")
    for i, k in enumerate(keys):
        g = fam.members[k]
        parent, move = fam.parents.get(k, (None, "seed"))
        pidx = "-" if parent is None else str(index[parent])
        if args.porcelain:
            out.append(f"member\t{i}\t{fam.depth[k]}\t{g.n}\t{g.m}\t{pidx}\t{move}\t{edges_oneline(g)}")
        else:
            out.append(f"  #{i:<3} depth {fam.depth[k]}  {g.n:>2} vertices {g.m:>2} edges  "
                       f"from {pidx:>3} by {move}")
    if args.porcelain:
        out.append(f"count\t{len(keys)}")
    _emit(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotlink", description="Intrinsic linking and knotting of small graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify one graph or every class of a partite spec")
    c.add_argument("subject", help="partite spec (e.g. 3,3,1,1 or 4,2,2-{(b,c),e}), a graph name, "
                                   "g:FILE with an edge list, or g:N:u-v,...")
    c.add_argument("--linking", action="store_true", help="only decide linking")
    c.add_argument("--knotting", action="store_true", help="only decide knotting")
    c.add_argument("--n", type=int, help="size for a symbolic part n")
    c.add_argument("--witness", action="store_true", help="print branch sets of minor witnesses")
    c.add_argument("--porcelain", action="store_true")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("table", help="reproduce a classification table and diff it")
    t.add_argument("table", choices=[str(i) for i in range(1, 9)] + ["all"])
    t.add_argument("--nmax", type=int, default=7, help="largest size for symbolic parts (default 7)")
    t.add_argument("--certificates", action="store_true", help="print every certificate")
    t.add_argument("--porcelain", action="store_true")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("census8", help="knotting census of 8-vertex graphs")
    s.add_argument("--list", action="store_true", help="list knotted graphs with certificates")
    s.add_argument("--graph6", action="store_true", help="list knotted graphs in graph6")
    s.add_argument("--porcelain", action="store_true")
    s.set_defaults(func=cmd_census8)

    b = sub.add_parser("bounds", help="verify an edge bound exhaustively")
    b.add_argument("--rule", choices=sorted(RULES), required=True)
    b.add_argument("--n", required=True, help="order or range A..B (at most 8)")
    b.add_argument("--porcelain", action="store_true")
    b.set_defaults(func=cmd_bounds)

    f = sub.add_parser("family", help="closure of a seed under triangle-Y moves")
    f.add_argument("--seed", choices=sorted(SEEDS), required=True)
    f.add_argument("--dy", action="store_true", help="allow triangle to Y (default when no move given)")
    f.add_argument("--yd", action="store_true", help="allow Y to triangle")
    f.add_argument("--porcelain", action="store_true")
    f.set_defaults(func=cmd_family)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SearchLimitError as exc:
        sys.stderr.write(f"knotlink: search limit exceeded: {exc}\n")
        return EXIT_LIMIT
    except (GraphError, OSError) as exc:
        sys.stderr.write(f"knotlink: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
