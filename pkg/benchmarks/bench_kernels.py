#!/usr/bin/env python3
"""Benchmark the compiled kernels against the interpreted/numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

With numba available both paths run in-process (the compiled dispatcher vs
its .py_func / the vectorized numpy scan).  Under ABFREE_NO_NUMBA=1 only the
fallback path is reported.
"""

import argparse
import time

import numpy as np

from abfree import kernels
from abfree.gadgets import circular_intervals, two_intervals
from abfree.model import ABAB, ABABA
from abfree.oracle import fano, random_hypergraph
from abfree.patterns import membership_matrix
from abfree.reductions import reduce_2col_to_abab
from abfree.solver import _symmetry, _tables


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_alternation(repeat):
    cases = {
        "alternation M=100 N=1000": membership_matrix(
            random_hypergraph(1, 1000, 100)
        ),
        "alternation fano-reduction M=238 N=42": membership_matrix(
            reduce_2col_to_abab(fano()).hypergraph
        ),
    }
    rows = []
    for name, memb in cases.items():
        memb = np.ascontiguousarray(memb)
        fast = None
        if kernels.NUMBA_ENABLED:
            kernels.alternation_matrix_kernel(memb)  # compile
            fast = timeit(lambda: kernels.alternation_matrix_kernel(memb), repeat)
        slow = timeit(lambda: kernels.alternation_matrix_numpy(memb), repeat)
        rows.append((name, fast, slow))
    return rows


def _enumerate_case(h, spec):
    n = h.n_vertices
    indptr, upd_pair, upd_sym, n_pairs = _tables(h, spec)
    out = np.empty((0, n), np.int32)
    args = (n, indptr, upd_pair, upd_sym, n_pairs, spec.length, 0, out)
    return args


def bench_enumerate(repeat):
    cases = {
        "enumerate circular-6 (720 perms)": _enumerate_case(circular_intervals(6), ABAB),
        "enumerate two-interval-7 (5040 perms)": _enumerate_case(two_intervals(7), ABABA),
    }
    rows = []
    for name, args in cases.items():
        fast = None
        if kernels.NUMBA_ENABLED:
            kernels.dfs_enumerate(*args)  # compile
            fast = timeit(lambda: kernels.dfs_enumerate(*args), repeat)
            slow_fn = kernels.dfs_enumerate.py_func
        else:
            slow_fn = kernels.dfs_enumerate
        slow = timeit(lambda: slow_fn(*args), repeat)
        rows.append((name, fast, slow))
    return rows


def bench_solve(repeat):
    h = two_intervals(7)
    spec = ABABA
    n = h.n_vertices
    indptr, upd_pair, upd_sym, n_pairs = _tables(h, spec)
    fix_first, rev_anchor = _symmetry(n, spec)
    abort = np.zeros(1, np.int64)
    prefix = np.empty(0, np.int32)

    def args():
        return (
            n, indptr, upd_pair, upd_sym, n_pairs, spec.length,
            fix_first, rev_anchor, 0, abort, prefix, np.empty(n, np.int32),
        )

    rows = []
    fast = None
    if kernels.NUMBA_ENABLED:
        kernels.dfs_solve(*args())  # compile
        fast = timeit(lambda: kernels.dfs_solve(*args()), repeat)
        slow_fn = kernels.dfs_solve.py_func
    else:
        slow_fn = kernels.dfs_solve
    slow = timeit(lambda: slow_fn(*args()), repeat)
    rows.append(("solve two-interval-7 (sat)", fast, slow))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"numba enabled: {kernels.NUMBA_ENABLED}")
    rows = []
    rows += bench_alternation(args.repeat)
    rows += bench_enumerate(args.repeat)
    rows += bench_solve(args.repeat)

    width = max(len(r[0]) for r in rows)
    print(f"\n{'case':<{width}}  {'numba':>10}  {'fallback':>10}  {'speedup':>8}")
    for name, fast, slow in rows:
        fast_s = f"{fast * 1e3:.2f}ms" if fast is not None else "-"
        ratio = f"{slow / fast:.0f}x" if fast else "-"
        print(f"{name:<{width}}  {fast_s:>10}  {slow * 1e3:>8.2f}ms  {ratio:>8}")


if __name__ == "__main__":
    main()
