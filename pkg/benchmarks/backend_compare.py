#!/usr/bin/env python3
"""Time the compiled kernels against the pure-numpy fallback.

Runs the truncated product to completion on built-in family instances,
once per backend, and prints best-of-N wall times side by side.  The
light VSEP cases stress many small merges where compilation pays off
most; the MD+PROC case pushes millions of terms through each merge,
where numpy's vectorization closes much of the gap.
"""

import argparse
import time

from choosability.graphs import generate_family, order_vertices
from choosability.kernels import set_backend
from choosability.poly import run_truncated_product

CASES = (
    ("cycle-triangles 12, VSEP", ("cycle-triangles", 12), "VSEP", "standard"),
    ("cycle-triangles 15, VSEP", ("cycle-triangles", 15), "VSEP", "standard"),
    ("glued-cliques 2 5, ext.", ("glued-cliques", 2, 5), "MD+PROC", "extended"),
    ("cycle-triangles 8, MD+PROC", ("cycle-triangles", 8), "MD+PROC", "standard"),
)


def time_case(p, heuristic, mode, repeat):
    ordering = order_vertices(p, heuristic)
    best = None
    stats = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        _, stats = run_truncated_product(
            p, ordering, mode=mode, branch_limit=None
        )
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return best, stats


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3, help="best-of runs")
    args = ap.parse_args()

    # compile outside the timed region
    set_backend("numba")
    warm = generate_family("glued-cliques", 2, 3)
    run_truncated_product(warm, order_vertices(warm, "INPUT"), mode="standard")
    run_truncated_product(warm, order_vertices(warm, "INPUT"), mode="extended")

    print(
        "%-28s %12s %10s %10s %8s"
        % ("case", "monomials", "numba", "numpy", "speedup")
    )
    try:
        for label, family, heuristic, mode in CASES:
            p = generate_family(*family)
            times = {}
            stats = None
            for backend in ("numba", "numpy"):
                set_backend(backend)
                times[backend], stats = time_case(
                    p, heuristic, mode, args.repeat
                )
            print(
                "%-28s %12d %9.3fs %9.3fs %7.1fx"
                % (
                    label,
                    stats.total_monomials,
                    times["numba"],
                    times["numpy"],
                    times["numpy"] / times["numba"],
                )
            )
    finally:
        set_backend(None)


if __name__ == "__main__":
    main()
