"""Hot inner loops: pairwise alternation scans and pruned permutation DFS.

Kernels are written as plain loops over numpy arrays and compiled with numba
when available.  Setting the environment variable ``ABFREE_NO_NUMBA`` (to
1/true/yes) before import disables compilation: the same loop code then runs
as ordinary Python, and the pairwise scan switches to a vectorized numpy
implementation.  ``benchmarks/bench_kernels.py`` compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np


def _flag_set(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


NUMBA_ENABLED = False
if not _flag_set("ABFREE_NO_NUMBA"):
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        pass

if not NUMBA_ENABLED:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


# DFS status codes shared with the solver
SAT = 1
UNSAT = 0
NODE_BUDGET = 2
ABORTED = 3


# ---------------------------------------------------------------------------
# Pairwise alternation counts.
#
# For two edges and an ordering, write +1 for a vertex in the first edge
# only, -1 for the second edge only, nothing otherwise; the count is the
# number of maximal constant runs.  An alternation pattern of length L
# between the pair exists in the ordering exactly when the count reaches L.

@njit(cache=True, nogil=True)
def alternation_matrix_kernel(memb):
    """Run counts for all edge pairs; memb is uint8 (M, N) in position space."""
    m, n = memb.shape
    out = np.zeros((m, m), np.int32)
    for i in range(m):
        for j in range(i + 1, m):
            last = 0
            cnt = 0
            for p in range(n):
                s = 0
                if memb[i, p] == 1:
                    if memb[j, p] == 0:
                        s = 1
                elif memb[j, p] == 1:
                    s = -1
                if s != 0 and s != last:
                    cnt += 1
                    last = s
            out[i, j] = cnt
            out[j, i] = cnt
    return out


def alternation_matrix_numpy(memb: np.ndarray) -> np.ndarray:
    """Vectorized equivalent of alternation_matrix_kernel (fallback path)."""
    a = memb.astype(np.int8)
    m, n = a.shape
    out = np.zeros((m, m), np.int32)
    if m == 0 or n == 0:
        return out
    chunk = max(1, 8_000_000 // max(1, m * n))
    pos = np.arange(n, dtype=np.int32)
    for i0 in range(0, m, chunk):
        i1 = min(m, i0 + chunk)
        s = a[i0:i1, None, :] - a[None, :, :]
        nz = s != 0
        idx = np.where(nz, pos, np.int32(-1))
        ff = np.maximum.accumulate(idx, axis=2)
        prev_idx = np.empty_like(ff)
        prev_idx[..., 0] = -1
        prev_idx[..., 1:] = ff[..., :-1]
        prev_val = np.take_along_axis(s, np.clip(prev_idx, 0, None), axis=2)
        prev_val = np.where(prev_idx >= 0, prev_val, np.int8(0))
        out[i0:i1] = (nz & (s != prev_val)).sum(axis=2, dtype=np.int32)
    return out


def alternation_matrix(memb: np.ndarray) -> np.ndarray:
    if NUMBA_ENABLED:
        return alternation_matrix_kernel(np.ascontiguousarray(memb, dtype=np.uint8))
    return alternation_matrix_numpy(memb)


# ---------------------------------------------------------------------------
# Update tables for the DFS kernels.
#
# Placing a vertex appends at most one symbol per edge pair.  The tables list,
# per vertex, the affected pair indices and the symbol contributed.  Pairs
# whose difference sizes cannot reach L runs under any ordering are dropped.

def pair_tables(memb: np.ndarray, length: int):
    """Build CSR (indptr, pair, sym) tables; returns also the pair count.

    memb is uint8 (M, N) in vertex space (column v-1 for identifier v).
    """
    a = memb.astype(bool)
    m, n = a.shape
    if m < 2:
        return (
            np.zeros(n + 1, np.int64),
            np.empty(0, np.int64),
            np.empty(0, np.int8),
            0,
        )
    iu, ju = np.triu_indices(m, 1)
    da = a[iu] & ~a[ju]  # (pairs, N): in first edge only
    db = a[ju] & ~a[iu]
    x = da.sum(axis=1)
    y = db.sum(axis=1)
    mn = np.minimum(x, y)
    mx = np.maximum(x, y)
    best = np.where(mn == 0, np.minimum(mx, 1), 2 * mn + (x != y))
    keep = best >= length
    sym = da[keep].astype(np.int8) - db[keep].astype(np.int8)  # (P, N)
    n_pairs = sym.shape[0]
    vs, ps = np.nonzero(sym.T)
    upd_pair = ps.astype(np.int64)
    upd_sym = sym.T[vs, ps].astype(np.int8)
    indptr = np.searchsorted(vs, np.arange(n + 1)).astype(np.int64)
    return indptr, upd_pair, upd_sym, n_pairs


# ---------------------------------------------------------------------------
# Exhaustive enumeration of pattern-free permutations, in lexicographic
# order, pruned as soon as any pair's run count reaches L (counts never
# decrease when a prefix is extended, so no free completion is lost).

@njit(cache=True, nogil=True)
def dfs_enumerate(n, indptr, upd_pair, upd_sym, n_pairs, length, cap, out):
    """Count free permutations of 0..n-1; store the first `cap` into out."""
    last = np.zeros(n_pairs, np.int8)
    runs = np.zeros(n_pairs, np.int64)
    used = np.zeros(n, np.uint8)
    order = np.empty(n, np.int32)
    cand = np.zeros(n + 1, np.int32)
    max_deg = 0
    for v in range(n):
        d = indptr[v + 1] - indptr[v]
        if d > max_deg:
            max_deg = d
    log_pair = np.empty(n * max_deg, np.int64)
    log_last = np.empty(n * max_deg, np.int8)
    log_runs = np.empty(n * max_deg, np.int64)
    log_len = np.zeros(n, np.int64)

    count = 0
    depth = 0
    cand[0] = 0
    while depth >= 0:
        if depth == n:
            if count < cap:
                for i in range(n):
                    out[count, i] = order[i]
            count += 1
            depth -= 1
            v = order[depth]
            used[v] = 0
            lp = depth * max_deg
            for t in range(log_len[depth] - 1, -1, -1):
                p = log_pair[lp + t]
                last[p] = log_last[lp + t]
                runs[p] = log_runs[lp + t]
            continue
        v = cand[depth]
        found = -1
        while v < n:
            if used[v] == 0:
                lp = depth * max_deg
                nlog = 0
                viol = False
                for t in range(indptr[v], indptr[v + 1]):
                    p = upd_pair[t]
                    s = upd_sym[t]
                    if last[p] != s:
                        log_pair[lp + nlog] = p
                        log_last[lp + nlog] = last[p]
                        log_runs[lp + nlog] = runs[p]
                        nlog += 1
                        runs[p] += 1
                        last[p] = s
                        if runs[p] >= length:
                            viol = True
                if viol:
                    for t in range(nlog - 1, -1, -1):
                        p = log_pair[lp + t]
                        last[p] = log_last[lp + t]
                        runs[p] = log_runs[lp + t]
                else:
                    found = v
                    log_len[depth] = nlog
                    break
            v += 1
        if found < 0:
            depth -= 1
            if depth >= 0:
                v = order[depth]
                used[v] = 0
                lp = depth * max_deg
                for t in range(log_len[depth] - 1, -1, -1):
                    p = log_pair[lp + t]
                    last[p] = log_last[lp + t]
                    runs[p] = log_runs[lp + t]
            continue
        used[found] = 1
        order[depth] = found
        cand[depth] = found + 1
        depth += 1
        cand[depth] = 0
    return count


# ---------------------------------------------------------------------------
# Branch-and-bound search for one free ordering.
#
# Candidates at each position are ordered fewest-new-runs-first (ties by
# identifier), so on rigidly structured edge families the forced next vertex
# is tried first.  Symmetry options: fix_first places vertex 0 at position 0
# (sound when freeness is invariant under rotation); rev_anchor >= 0 demands
# that the last vertex exceed order[rev_anchor], collapsing reversals.
#
# abort_flag is polled every 1024 placements; the driver's watchdog timer or
# a sibling search sets it to stop this one.

@njit(cache=True, nogil=True)
def dfs_solve(
    n,
    indptr,
    upd_pair,
    upd_sym,
    n_pairs,
    length,
    fix_first,
    rev_anchor,
    node_budget,
    abort_flag,
    prefix,
    out_order,
):
    last = np.zeros(n_pairs, np.int8)
    runs = np.zeros(n_pairs, np.int64)
    used = np.zeros(n, np.uint8)
    order = np.empty(n, np.int32)
    max_deg = 0
    for v in range(n):
        d = indptr[v + 1] - indptr[v]
        if d > max_deg:
            max_deg = d
    log_pair = np.empty(n * max_deg, np.int64)
    log_last = np.empty(n * max_deg, np.int8)
    log_runs = np.empty(n * max_deg, np.int64)
    log_len = np.zeros(n, np.int64)
    cand_list = np.empty(n * n, np.int32)
    cand_score = np.empty(n * n, np.int64)
    cand_len = np.zeros(n, np.int64)
    cand_ptr = np.zeros(n, np.int64)

    nodes = 0
    plen = prefix.shape[0]
    for d in range(plen):
        v = prefix[d]
        lp = d * max_deg
        nlog = 0
        viol = False
        for t in range(indptr[v], indptr[v + 1]):
            p = upd_pair[t]
            s = upd_sym[t]
            if last[p] != s:
                log_pair[lp + nlog] = p
                log_last[lp + nlog] = last[p]
                log_runs[lp + nlog] = runs[p]
                nlog += 1
                runs[p] += 1
                last[p] = s
                if runs[p] >= length:
                    viol = True
        if viol:
            return UNSAT, nodes
        used[v] = 1
        order[d] = v
        log_len[d] = nlog

    depth = plen
    build = True
    while depth >= plen:
        if depth == n:
            for i in range(n):
                out_order[i] = order[i]
            return SAT, nodes
        if build:
            base = depth * n
            cl = 0
            lim = -1
            if rev_anchor >= 0 and depth == n - 1:
                lim = order[rev_anchor]
            lo = 0
            hi = n
            if fix_first and depth == 0:
                hi = 1  # only vertex 0 may open the ordering
            for v in range(lo, hi):
                if used[v] == 1 or v <= lim:
                    continue
                newruns = 0
                viol = False
                for t in range(indptr[v], indptr[v + 1]):
                    p = upd_pair[t]
                    if last[p] != upd_sym[t]:
                        newruns += 1
                        if runs[p] + 1 >= length:
                            viol = True
                            break
                if viol:
                    continue
                # insertion keeping (newruns, v) ascending; v already ascends
                pos = cl
                while pos > 0 and cand_score[base + pos - 1] > newruns:
                    cand_list[base + pos] = cand_list[base + pos - 1]
                    cand_score[base + pos] = cand_score[base + pos - 1]
                    pos -= 1
                cand_list[base + pos] = v
                cand_score[base + pos] = newruns
                cl += 1
            cand_len[depth] = cl
            cand_ptr[depth] = 0
            build = False
        if cand_ptr[depth] >= cand_len[depth]:
            depth -= 1
            if depth >= plen:
                v = order[depth]
                used[v] = 0
                lp = depth * max_deg
                for t in range(log_len[depth] - 1, -1, -1):
                    p = log_pair[lp + t]
                    last[p] = log_last[lp + t]
                    runs[p] = log_runs[lp + t]
            continue
        v = cand_list[depth * n + cand_ptr[depth]]
        cand_ptr[depth] += 1
        lp = depth * max_deg
        nlog = 0
        for t in range(indptr[v], indptr[v + 1]):
            p = upd_pair[t]
            s = upd_sym[t]
            if last[p] != s:
                log_pair[lp + nlog] = p
                log_last[lp + nlog] = last[p]
                log_runs[lp + nlog] = runs[p]
                nlog += 1
                runs[p] += 1
                last[p] = s
        used[v] = 1
        order[depth] = v
        log_len[depth] = nlog
        nodes += 1
        if nodes % 1024 == 0 and abort_flag[0] != 0:
            return ABORTED, nodes
        if node_budget > 0 and nodes >= node_budget:
            return NODE_BUDGET, nodes
        depth += 1
        build = True
    return UNSAT, nodes
