"""Compare the compiled and pure-Python minor-search kernels.

The workload is recorded from real searches (a linking table, the K6/K7
edge-bound sweeps at n = 7, and the knotted-seed searches of the 8-vertex
census at k = 3, 4), then replayed through each kernel in turn.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

from knotlink import _core, _purecore, minor
from knotlink.classifier import decide_knotting
from knotlink.enumerate import edge_deletion_levels
from knotlink.minor import K6_RULE, K7_RULE, verify_bound_exhaustive
from knotlink.tables import run_table


def record_workload() -> list[tuple]:
    calls = []
    real = _core.search

    def spy(rows, order, twin_prev, pat_rows, limit):
        calls.append((list(rows), list(order), list(twin_prev), list(pat_rows), limit))
        return real(rows, order, twin_prev, pat_rows, limit)

    _core.search = spy
    try:
        minor.clear_cache()
        run_table(3)
        verify_bound_exhaustive(7, K6_RULE)
        verify_bound_exhaustive(7, K7_RULE)
        for m, level in edge_deletion_levels(8, 24):
            if m <= 25:
                for g in level:
                    decide_knotting(g)
    finally:
        _core.search = real
        minor.clear_cache()
    return calls


def replay(kernel, calls) -> tuple[float, int, list[int]]:
    start = time.perf_counter()
    nodes = 0
    statuses = []
    for rows, order, twin_prev, pat_rows, limit in calls:
        status, n, _ = kernel(rows, order, twin_prev, pat_rows, limit)
        nodes += n
        statuses.append(status)
    return time.perf_counter() - start, nodes, statuses


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    calls = record_workload()
    print(f"recorded {len(calls)} kernel calls; active backend: {_core.BACKEND}")
    kernels = [("python", _purecore.search)]
    try:
        from knotlink._minorcore import search as compiled
    except ImportError:
        print("compiled kernel not built; timing the pure-Python kernel only")
    else:
        kernels.insert(0, ("cython", compiled))
    results = {}
    for name, kernel in kernels:
        best = None
        for _ in range(args.repeat):
            elapsed, nodes, statuses = replay(kernel, calls)
            best = elapsed if best is None else min(best, elapsed)
        results[name] = (best, nodes, statuses)
        print(f"{name:>7}: {best:8.3f} s  {nodes} search nodes")
    if len(results) == 2:
        (tc, _, sc), (tp, _, sp) = results["cython"], results["python"]
        print(f"speedup: {tp / tc:.1f}x; decisions agree: {sc == sp}")


if __name__ == "__main__":
    main()
