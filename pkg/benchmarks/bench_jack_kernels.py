#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot operations behind every series evaluation: the
horizontal-strip coefficient table and the per-variable value sweep.
Run from the repository root:

    python benchmarks/bench_jack_kernels.py [--max-degree 60] [--reps 5]
"""

import argparse
import time

import numpy as np

from vkbessel import branching, kernels


def _best(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(width, max_degree, nvars, reps):
    table = branching.BranchTable(width, max_degree)
    rng = np.random.default_rng(0)
    x = rng.uniform(-2.0, 2.0, size=(1, nvars))
    rows = []
    for backend in ("numba", "numpy"):
        if backend == "numba" and not kernels.HAVE_NUMBA:
            continue
        # warm-up compiles the jit kernels so timings are steady state
        kernels.psi_table(table.parts, table.pair_lam, table.pair_mu, 0.5,
                          backend=backend)
        branching.jack_p_values(table, "1/2", x, backend=backend)
        t_psi = _best(
            lambda: kernels.psi_table(
                table.parts, table.pair_lam, table.pair_mu, 0.75, backend=backend
            ),
            reps,
        )
        t_sweep = _best(
            lambda: branching.jack_p_values(table, "3/4", x, backend=backend), reps
        )
        rows.append((backend, t_psi, t_sweep))
    return table, rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--width", type=int, default=2)
    ap.add_argument("--max-degree", type=int, default=60)
    ap.add_argument("--nvars", type=int, default=64)
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args()

    table, rows = bench(args.width, args.max_degree, args.nvars, args.reps)
    print(
        f"table: width={args.width} max_degree={args.max_degree} "
        f"partitions={table.size} strip_pairs={table.pair_lam.size} "
        f"sweep_vars={args.nvars}"
    )
    print("backend,psi_table_s,value_sweep_s")
    for backend, t_psi, t_sweep in rows:
        print(f"{backend},{t_psi:.4f},{t_sweep:.4f}")
    if len(rows) == 2:
        print(
            f"speedup: psi {rows[1][1] / rows[0][1]:.1f}x, "
            f"sweep {rows[1][2] / rows[0][2]:.1f}x"
        )


if __name__ == "__main__":
    main()
