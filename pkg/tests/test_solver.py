import itertools
import random

import pytest

from abfree.gadgets import circular_intervals, is_equivalent, two_intervals
from abfree.model import ABAB, ABABA, Hypergraph, PatternSpec
from abfree.oracle import brute_free_ordering, random_hypergraph
from abfree.patterns import is_free_ordering
from abfree.solver import (
    Budget,
    count_free_orderings,
    decide_stabbed_pseudodisk,
    free_orderings,
    solve,
)

K4 = Hypergraph(4, tuple(frozenset(e) for e in itertools.combinations(range(1, 5), 2)))
C4 = Hypergraph(
    4, (frozenset({1, 2}), frozenset({2, 3}), frozenset({3, 4}), frozenset({1, 4}))
)


def test_solve_examples():
    out = solve(circular_intervals(5), ABAB)
    assert out.status == "sat"
    assert is_equivalent(out.ordering, (1, 2, 3, 4, 5))
    assert is_free_ordering(circular_intervals(5), out.ordering, ABAB) is None

    assert solve(K4, ABAB).status == "unsat"

    out = solve(two_intervals(7), ABABA)
    assert out.status == "sat"
    assert out.ordering in ((1, 2, 3, 4, 5, 6, 7), (7, 6, 5, 4, 3, 2, 1))


def test_count_examples():
    assert count_free_orderings(circular_intervals(4), ABAB) == 8
    assert count_free_orderings(two_intervals(7), ABABA) == 2
    single = Hypergraph(3, (frozenset({1, 2}),))
    assert count_free_orderings(single, ABAB) == 6


def test_count_cap():
    h = Hypergraph(11, ())
    with pytest.raises(ValueError, match="cap"):
        count_free_orderings(h, ABAB)
    assert count_free_orderings(h, ABAB, max_n=11) == 39916800


def test_free_orderings_lists_lexicographic():
    got = free_orderings(two_intervals(7), ABABA)
    assert got == [tuple(range(1, 8)), tuple(range(7, 0, -1))]


def test_solver_agrees_with_enumeration():
    rng = random.Random(17)
    for trial in range(60):
        n = rng.randint(2, 6)
        m = rng.randint(0, min(6, 2**n - 1))
        h = random_hypergraph(rng.randint(0, 10**6), n, m)
        for spec in (ABAB, ABABA):
            cnt = count_free_orderings(h, spec)
            out = solve(h, spec)
            assert (out.status == "sat") == (cnt > 0), (h, spec)
            if out.status == "sat":
                assert is_free_ordering(h, out.ordering, spec) is None


def test_symmetry_reduction_never_loses_sat():
    # exhaustive: the reduced search finds an ordering iff any permutation works
    rng = random.Random(3)
    for trial in range(40):
        n = rng.randint(3, 5)
        h = random_hypergraph(rng.randint(0, 10**6), n, rng.randint(1, 5))
        for spec in (ABAB, ABABA):
            any_free = any(
                is_free_ordering(h, o, spec) is None
                for o in itertools.permutations(range(1, n + 1))
            )
            assert (solve(h, spec).status == "sat") == any_free


def test_solver_matches_brute_oracle_across_patterns():
    rng = random.Random(424242)
    for trial in range(80):
        n = rng.randint(2, 6)
        m = rng.randint(0, min(6, 2**n - 1))
        h = random_hypergraph(rng.randint(0, 10**9), n, m)
        spec = PatternSpec(rng.randint(1, 3), rng.random() < 0.5)
        got = solve(h, spec).status == "sat"
        want = brute_free_ordering(h, spec) is not None
        assert got == want, (h, spec)


def test_pruned_count_matches_unpruned_enumeration():
    rng = random.Random(5150)
    for trial in range(30):
        n = rng.randint(2, 5)
        h = random_hypergraph(rng.randint(0, 10**9), n, rng.randint(0, 2**n - 1))
        spec = PatternSpec(rng.randint(1, 2), rng.random() < 0.5)
        pruned = count_free_orderings(h, spec)
        unpruned = sum(
            1
            for o in itertools.permutations(range(1, n + 1))
            if is_free_ordering(h, o, spec) is None
        )
        assert pruned == unpruned, (h, spec)


def test_node_budget_timeout():
    out = solve(K4, ABAB, budget=Budget(max_nodes=2))
    assert out.status in ("timeout", "unsat")
    # unlimited it is a definite no
    assert solve(K4, ABAB).status == "unsat"


def test_deterministic_node_counts():
    a = solve(K4, ABAB)
    b = solve(K4, ABAB)
    assert a.nodes_explored == b.nodes_explored


def test_parallel_matches_sequential_status():
    for h, spec in ((K4, ABAB), (circular_intervals(5), ABAB), (two_intervals(7), ABABA)):
        seq = solve(h, spec).status
        par = solve(h, spec, threads=4).status
        assert seq == par
        if par == "sat":
            out = solve(h, spec, threads=4)
            assert is_free_ordering(h, out.ordering, spec) is None


def test_stabbed_pseudodisk_alias():
    assert decide_stabbed_pseudodisk(C4).status == "sat"
    assert decide_stabbed_pseudodisk(K4).status == "unsat"


def test_single_edge_and_empty():
    h = Hypergraph(3, (frozenset({1, 2}),))
    assert solve(h, ABAB).status == "sat"
    assert solve(Hypergraph(1, ()), ABAB).status == "sat"
