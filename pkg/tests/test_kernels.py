import os
import random
import subprocess
import sys

import numpy as np

from abfree import kernels
from abfree.kernels import (
    alternation_matrix_kernel,
    alternation_matrix_numpy,
    dfs_enumerate,
    pair_tables,
)


def _random_membership(rng, m, n):
    return np.array(
        [[rng.randint(0, 1) for _ in range(n)] for _ in range(m)], dtype=np.uint8
    ).reshape(m, n)


def test_alternation_matrix_paths_agree():
    rng = random.Random(7)
    for _ in range(150):
        m = rng.randint(0, 8)
        n = rng.randint(1, 12)
        memb = _random_membership(rng, m, n)
        a = alternation_matrix_kernel(np.ascontiguousarray(memb))
        b = alternation_matrix_numpy(memb)
        assert np.array_equal(a, b)


def test_alternation_matrix_symmetric_zero_diag():
    rng = random.Random(8)
    memb = _random_membership(rng, 6, 9)
    out = alternation_matrix_kernel(np.ascontiguousarray(memb))
    assert np.array_equal(out, out.T)
    assert not out.diagonal().any()


def test_pair_tables_drop_infeasible_pairs():
    # nested edges can never alternate four times
    memb = np.array([[1, 1, 1, 0], [1, 1, 0, 0]], dtype=np.uint8)
    indptr, upd_pair, upd_sym, n_pairs = pair_tables(memb, 4)
    assert n_pairs == 0
    # crossing pairs survive
    memb = np.array([[1, 0, 1, 0], [0, 1, 0, 1]], dtype=np.uint8)
    indptr, upd_pair, upd_sym, n_pairs = pair_tables(memb, 4)
    assert n_pairs == 1
    assert list(upd_sym) == [1, -1, 1, -1]


def test_enumerate_counts_all_permutations_without_edges():
    indptr = np.zeros(5, np.int64)
    out = np.empty((0, 4), np.int32)
    total = dfs_enumerate(
        4, indptr, np.empty(0, np.int64), np.empty(0, np.int8), 0, 4, 0, out
    )
    assert total == 24


def test_enumerate_collects_lexicographic():
    # {1,2} vs {3,4}: exactly the 8 fully interleaved orders are excluded
    memb = np.array([[1, 1, 0, 0], [0, 0, 1, 1]], dtype=np.uint8)
    indptr, upd_pair, upd_sym, n_pairs = pair_tables(memb, 4)
    out = np.empty((24, 4), np.int32)
    total = dfs_enumerate(4, indptr, upd_pair, upd_sym, n_pairs, 4, 24, out)
    rows = [tuple(int(x) for x in out[i]) for i in range(total)]
    assert rows == sorted(rows)
    assert total == 16
    for row in rows:
        sides = [0 if v in (0, 1) else 1 for v in row]
        runs = 1 + sum(a != b for a, b in zip(sides, sides[1:]))
        assert runs < 4


def test_fallback_subprocess_matches():
    # run a small decision workload with numba disabled and compare results
    code = (
        "import itertools\n"
        "from abfree import circular_intervals, solve, count_free_orderings, Hypergraph\n"
        "from abfree.model import ABAB\n"
        "from abfree.kernels import NUMBA_ENABLED\n"
        "assert not NUMBA_ENABLED\n"
        "k4 = Hypergraph(4, tuple(frozenset(e) for e in itertools.combinations(range(1,5), 2)))\n"
        "print(count_free_orderings(circular_intervals(4), ABAB), solve(k4, ABAB).status)\n"
    )
    proc = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={**os.environ, "ABFREE_NO_NUMBA": "1"},
        timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.split() == ["8", "unsat"]


def test_numba_enabled_by_default():
    assert kernels.NUMBA_ENABLED
