"""Polynomial-time detection of forbidden alternation patterns in a fixed
vertex ordering.

Everything reduces to run counting: restrict the ordering to the symmetric
difference of an edge pair, write one symbol per side, and count maximal
constant runs.  A pattern of length L (L alternations between the two sides)
exists if and only if the run count reaches L, because any L consecutive runs
supply one vertex each and either edge may play the leading role.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from . import kernels
from .model import Hypergraph, PatternSpec, PatternWitness, validate_ordering


class AlternationProfile(NamedTuple):
    """Run count of one edge pair under an ordering."""

    pair: tuple[int, int] | None
    block_count: int


@lru_cache(maxsize=64)
def membership_matrix(h: Hypergraph) -> np.ndarray:
    """uint8 (M, N) matrix; entry [e, v-1] = 1 iff vertex v lies in edge e."""
    out = np.zeros((h.n_edges, h.n_vertices), dtype=np.uint8)
    for i, e in enumerate(h.edges):
        for v in e:
            out[i, v - 1] = 1
    return out


def _symbols(order: Sequence[int], e1: Iterable[int], e2: Iterable[int]):
    """(vertex, side) for order positions in exactly one edge; side=+1 for e1."""
    s1, s2 = set(e1), set(e2)
    out = []
    for v in order:
        if v in s1:
            if v not in s2:
                out.append((v, 1))
        elif v in s2:
            out.append((v, -1))
    return out


def alternation_count(order: Sequence[int], e1: Iterable[int], e2: Iterable[int]) -> int:
    """Number of maximal runs in the two-symbol restriction of the ordering."""
    count = 0
    last = 0
    for _, s in _symbols(order, e1, e2):
        if s != last:
            count += 1
            last = s
    return count


def find_pattern_witness(
    order: Sequence[int],
    e1: Iterable[int],
    e2: Iterable[int],
    spec: PatternSpec,
    e1_index: int = 0,
    e2_index: int = 1,
) -> Optional[PatternWitness]:
    """Earliest (by position sequence) alternation of length spec.length.

    Returns None when the pair's run count stays below the pattern length.
    The witness picks whichever edge holds the first chosen vertex as edge_a;
    pass e1_index/e2_index to label the result with real edge indices.
    """
    length = spec.length
    syms = _symbols(order, e1, e2)
    z = len(syms)
    if z < length:
        return None
    # cap[t]: longest alternating subsequence starting at t using syms[t]
    cap = [0] * z
    best = {1: 0, -1: 0}
    for t in range(z - 1, -1, -1):
        s = syms[t][1]
        cap[t] = 1 + best[-s]
        if cap[t] > best[s]:
            best[s] = cap[t]
    if max(best.values()) < length:
        return None
    picked: list[int] = []
    first_side = 0
    prev = 0
    need = length
    for t in range(z):
        v, s = syms[t]
        if s != prev and cap[t] >= need:
            if not picked:
                first_side = s
            picked.append(v)
            prev = s
            need -= 1
            if need == 0:
                break
    a, b = (e1_index, e2_index) if first_side == 1 else (e2_index, e1_index)
    return PatternWitness(edge_a=a, edge_b=b, vertices=tuple(picked))


def _position_membership(h: Hypergraph, order: tuple[int, ...]) -> np.ndarray:
    memb = membership_matrix(h)
    cols = np.fromiter((v - 1 for v in order), dtype=np.int64, count=len(order))
    return np.ascontiguousarray(memb[:, cols])


def is_free_ordering(
    h: Hypergraph, order: Sequence[int], spec: PatternSpec
) -> Optional[PatternWitness]:
    """None when no edge pair alternates spec.length times; else a witness.

    The witness reported is the one for the first violating pair in edge-index
    order, with the earliest vertex positions within that pair.  Runs one
    linear scan per pair: O(M^2 N).
    """
    order = validate_ordering(order, h.n_vertices)
    if h.n_edges < 2:
        return None
    counts = kernels.alternation_matrix(_position_membership(h, order))
    length = spec.length
    m = h.n_edges
    for i in range(m):
        row = counts[i, i + 1 :]
        hit = np.nonzero(row >= length)[0]
        if hit.size:
            j = i + 1 + int(hit[0])
            w = find_pattern_witness(order, h.edges[i], h.edges[j], spec, i, j)
            assert w is not None
            return w
    return None


def max_pair_alternation(h: Hypergraph, order: Sequence[int]) -> AlternationProfile:
    """Largest run count over all edge pairs and the first pair attaining it."""
    order = validate_ordering(order, h.n_vertices)
    if h.n_edges < 2:
        return AlternationProfile(pair=None, block_count=0)
    counts = kernels.alternation_matrix(_position_membership(h, order))
    iu, ju = np.triu_indices(h.n_edges, 1)
    vals = counts[iu, ju]
    t = int(np.argmax(vals))
    best = int(vals[t])
    if best == 0:
        return AlternationProfile(pair=None, block_count=0)
    # argmax returns the first maximum; triu_indices order is (i, j) lex
    return AlternationProfile(pair=(int(iu[t]), int(ju[t])), block_count=best)
