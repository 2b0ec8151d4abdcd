import numpy as np
import pytest

from abfree import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger jit compilation once so timed tests measure runtime, not compile
    memb = np.array([[1, 0], [0, 1]], dtype=np.uint8)
    kernels.alternation_matrix(memb)
    indptr, upd_pair, upd_sym, n_pairs = kernels.pair_tables(memb, 2)
    kernels.dfs_enumerate(2, indptr, upd_pair, upd_sym, n_pairs, 2, 0,
                          np.empty((0, 2), np.int32))
    kernels.dfs_solve(2, indptr, upd_pair, upd_sym, n_pairs, 2, False, -1, 0,
                      np.zeros(1, np.int64), np.empty(0, np.int32),
                      np.empty(2, np.int32))
    from abfree.oracle import brute_free_ordering
    from abfree.model import ABAB, Hypergraph

    brute_free_ordering(Hypergraph(2, (frozenset({1}), frozenset({2}))), ABAB)
