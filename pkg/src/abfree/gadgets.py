"""Interval-based edge families and ordering-equivalence utilities.

The families built here pin down vertex orderings: with all circular
intervals present, the 4-alternation-free orderings of 1..N are exactly the
rotations and reflections of the increasing order; with all unions of two
intervals present (N >= 7), the 5-alternation-free orderings are exactly the
increasing order and its reverse.  Block variants force the same rigidity on
a coarser partition.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Sequence

from .model import Hypergraph, StructureError

BlockList = Sequence[Iterable[int]]


def _dedupe(edge_iter) -> tuple[frozenset[int], ...]:
    seen = set()
    out = []
    for e in edge_iter:
        e = frozenset(e)
        if e and e not in seen:
            seen.add(e)
            out.append(e)
    return tuple(out)


def circular_intervals(n: int) -> Hypergraph:
    """All non-empty proper circular intervals of 1..n as edges.

    A circular interval is a run of consecutive identifiers that may wrap
    from n back to 1.  The empty set and the full set are excluded; they
    cannot alternate with anything.
    """
    if n < 1:
        raise ValueError("need n >= 1")

    def gen():
        for start in range(1, n + 1):
            for length in range(1, n):
                yield ((start - 1 + t) % n + 1 for t in range(length))

    return Hypergraph(n, _dedupe(gen()))


def two_intervals(n: int) -> Hypergraph:
    """All non-empty unions of at most two intervals of 1..n as edges.

    Includes every single interval and the full set.  The rigidity guarantee
    (only the increasing order and its reverse avoid 5-alternations) needs
    n >= 7; smaller n still builds the family but promises nothing.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n < 7:
        warnings.warn(
            f"two_intervals({n}): ordering rigidity is only guaranteed for n >= 7",
            stacklevel=2,
        )
    ivs = [frozenset()] + [
        frozenset(range(a, b + 1)) for a in range(1, n + 1) for b in range(a, n + 1)
    ]

    def gen():
        for i in range(len(ivs)):
            for j in range(i, len(ivs)):
                yield ivs[i] | ivs[j]

    return Hypergraph(n, _dedupe(gen()))


def circular_block_intervals(blocks: BlockList) -> list[frozenset[int]]:
    """One edge per non-empty proper circular interval of block indices.

    Each edge is the union of the selected blocks; k blocks give k*(k-1)
    edges before deduplication.  Rigidity (every 4-alternation-free ordering
    is a rotation/reflection of the block order) needs k >= 4.
    """
    bs = [frozenset(b) for b in blocks]
    k = len(bs)

    def gen():
        for start in range(k):
            for length in range(1, k):
                e: set[int] = set()
                for t in range(length):
                    e |= bs[(start + t) % k]
                yield e

    return list(_dedupe(gen()))


def two_interval_blocks(blocks: BlockList) -> list[frozenset[int]]:
    """One edge per non-empty union of at most two intervals of block indices.

    Rigidity (only the block order and its reverse avoid 5-alternations)
    needs k >= 7.
    """
    bs = [frozenset(b) for b in blocks]
    k = len(bs)
    ivs = [frozenset()]
    for a in range(k):
        acc: set[int] = set()
        for b in range(a, k):
            acc |= bs[b]
            ivs.append(frozenset(acc))

    def gen():
        for i in range(len(ivs)):
            for j in range(i, len(ivs)):
                yield ivs[i] | ivs[j]

    return list(_dedupe(gen()))


def _shift(order: tuple[int, ...], k: int) -> tuple[int, ...]:
    # move the last k entries to the front
    if k == 0:
        return order
    return order[-k:] + order[:-k]


def _transforms(order: tuple[int, ...]):
    """All 2N rotations of the ordering and of its reverse, in scan order."""
    n = len(order)
    rev = order[::-1]
    for k in range(n):
        yield _shift(order, k)
    for k in range(n):
        yield _shift(rev, k)


def canonical_form(order: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest among all rotations and reflected rotations."""
    order = tuple(order)
    return min(_transforms(order))


def is_equivalent(o1: Sequence[int], o2: Sequence[int]) -> bool:
    """True when the orderings differ only by rotation and/or reversal."""
    o1, o2 = tuple(o1), tuple(o2)
    if len(o1) != len(o2):
        raise ValueError("orderings have different lengths")
    return canonical_form(o1) == canonical_form(o2)


def has_structure(order: Sequence[int], blocks: BlockList) -> bool:
    """True when block i's vertices all precede block j's for i < j.

    Vertices outside every block must come after the last block; blocks are
    internally unordered.
    """
    order = tuple(order)
    pos = {v: i for i, v in enumerate(order)}
    prev_max = -1
    covered: set[int] = set()
    for b in blocks:
        missing = [v for v in b if v not in pos]
        if missing:
            raise ValueError(f"block vertex {missing[0]} not in the ordering")
        ps = [pos[v] for v in b]
        if min(ps) <= prev_max:
            return False
        prev_max = max(ps)
        covered.update(b)
    for v in order:
        if v not in covered and pos[v] <= prev_max:
            return False
    return True


def normalize_to_structure(order: Sequence[int], blocks: BlockList) -> tuple[int, ...]:
    """The rotation/reflection of the ordering realizing the block structure.

    Scans the rotations of the ordering first, then of its reverse, and
    returns the first structured transform; raises StructureError when no
    transform is structured.
    """
    order = tuple(order)
    for t in _transforms(order):
        if has_structure(t, blocks):
            return t
    raise StructureError("no structured equivalent")
