"""Exact search for a pattern-free vertex ordering.

Branch and bound over ordering prefixes: a prefix dies as soon as some edge
pair's run count reaches the pattern length (counts never decrease under
extension).  Rotation symmetry pins vertex 1 to the first position for
even-length patterns; reversal symmetry is collapsed by demanding that the
last vertex exceed an anchor either way.  UNSAT is only reported after the
reduced search space is exhausted; budget exhaustion is a distinct outcome.
"""

from __future__ import annotations

import math
import threading
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import Hypergraph, PatternSpec
from .patterns import is_free_ordering, membership_matrix


@dataclass(frozen=True)
class Budget:
    """Node and wall-clock limits for the search; None means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None


@dataclass(frozen=True)
class SolveOutcome:
    status: str  # "sat" | "unsat" | "timeout"
    ordering: tuple[int, ...] | None
    nodes_explored: int
    elapsed: float


def _tables(h: Hypergraph, spec: PatternSpec):
    return kernels.pair_tables(membership_matrix(h), spec.length)


def _symmetry(n: int, spec: PatternSpec) -> tuple[bool, int]:
    fix_first = not spec.trailing_a
    if n < 3:
        return fix_first, -1
    return fix_first, (1 if fix_first else 0)


def solve(
    h: Hypergraph,
    spec: PatternSpec,
    budget: Budget | None = None,
    threads: int = 1,
) -> SolveOutcome:
    """Decide whether h admits a spec-free ordering.

    A sat outcome carries an ordering re-verified by the checker.  With
    threads > 1 the first-position subtrees run concurrently and any valid
    ordering may be returned; node budgets are then enforced per subtree.
    """
    budget = budget or Budget()
    t0 = time.perf_counter()
    n = h.n_vertices
    indptr, upd_pair, upd_sym, n_pairs = _tables(h, spec)
    fix_first, rev_anchor = _symmetry(n, spec)
    node_budget = budget.max_nodes or 0
    abort = np.zeros(1, np.int64)
    length = spec.length

    # a watchdog timer implements the time budget: the kernel polls the abort
    # flag, and without a sat result an aborted search is a timeout
    timer = None
    if budget.max_seconds is not None:

        def _expire():
            abort[0] = 1

        timer = threading.Timer(budget.max_seconds, _expire)
        timer.daemon = True
        timer.start()
    try:
        if threads > 1 and n >= 3:
            result = _solve_parallel(
                n, indptr, upd_pair, upd_sym, n_pairs, length,
                fix_first, rev_anchor, node_budget, abort, threads,
            )
        else:
            out = np.empty(n, np.int32)
            prefix = np.empty(0, np.int32)
            status, nodes = kernels.dfs_solve(
                n, indptr, upd_pair, upd_sym, n_pairs, length,
                fix_first, rev_anchor, node_budget, abort, prefix, out,
            )
            result = (status, nodes, out)
    finally:
        if timer is not None:
            timer.cancel()

    status, nodes, out = result
    elapsed = time.perf_counter() - t0
    if status == kernels.SAT:
        ordering = tuple(int(v) + 1 for v in out)
        if is_free_ordering(h, ordering, spec) is not None:
            raise RuntimeError("search returned an ordering the checker rejects")
        return SolveOutcome("sat", ordering, nodes, elapsed)
    if status == kernels.UNSAT:
        return SolveOutcome("unsat", None, nodes, elapsed)
    return SolveOutcome("timeout", None, nodes, elapsed)


def _solve_parallel(
    n, indptr, upd_pair, upd_sym, n_pairs, length,
    fix_first, rev_anchor, node_budget, abort, threads,
):
    if fix_first:
        prefixes = [np.array([0, v], np.int32) for v in range(1, n)]
    else:
        prefixes = [np.array([v], np.int32) for v in range(n)]
    outs = [np.empty(n, np.int32) for _ in prefixes]

    def run(i):
        return kernels.dfs_solve(
            n, indptr, upd_pair, upd_sym, n_pairs, length,
            fix_first, rev_anchor, node_budget, abort, prefixes[i], outs[i],
        )

    total_nodes = 0
    sat_out = None
    saw_limit = False
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending = {pool.submit(run, i): i for i in range(len(prefixes))}
        while pending:
            done, _ = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                i = pending.pop(fut)
                status, nodes = fut.result()
                total_nodes += nodes
                if status == kernels.SAT and sat_out is None:
                    sat_out = outs[i]
                    abort[0] = 1
                elif status in (kernels.NODE_BUDGET, kernels.ABORTED):
                    saw_limit = True
    if sat_out is not None:
        return kernels.SAT, total_nodes, sat_out
    if saw_limit:
        return kernels.ABORTED, total_nodes, outs[0]
    return kernels.UNSAT, total_nodes, outs[0]


def count_free_orderings(h: Hypergraph, spec: PatternSpec, max_n: int = 10) -> int:
    """Exact number of spec-free permutations, over all N! of them.

    No symmetry reduction; prefixes are still pruned once a pair's run count
    reaches the pattern length, which cannot drop any free completion.
    """
    n = h.n_vertices
    if n > max_n:
        raise ValueError(
            f"N={n} exceeds the enumeration cap {max_n}; pass a larger max_n"
        )
    indptr, upd_pair, upd_sym, n_pairs = _tables(h, spec)
    out = np.empty((0, n), np.int32)
    return int(
        kernels.dfs_enumerate(
            n, indptr, upd_pair, upd_sym, n_pairs, spec.length, 0, out
        )
    )


def free_orderings(
    h: Hypergraph, spec: PatternSpec, cap: int | None = None, max_n: int = 10
) -> list[tuple[int, ...]]:
    """All spec-free permutations in lexicographic order (up to cap)."""
    n = h.n_vertices
    if n > max_n:
        raise ValueError(
            f"N={n} exceeds the enumeration cap {max_n}; pass a larger max_n"
        )
    if cap is None:
        cap = math.factorial(n)
    indptr, upd_pair, upd_sym, n_pairs = _tables(h, spec)
    out = np.empty((cap, n), np.int32)
    count = kernels.dfs_enumerate(
        n, indptr, upd_pair, upd_sym, n_pairs, spec.length, cap, out
    )
    return [tuple(int(v) + 1 for v in out[i]) for i in range(min(count, cap))]


def decide_stabbed_pseudodisk(
    h: Hypergraph, budget: Budget | None = None, threads: int = 1
) -> SolveOutcome:
    """Alias for the 4-alternation decision: sat means h is realizable as the
    incidence hypergraph of points and pseudodisks sharing a common point."""
    return solve(h, PatternSpec(2, False), budget=budget, threads=threads)
