"""Independent brute-force oracles and reproducible random generators.

The oracles here deliberately avoid the incremental run-state machinery of
the solver: the permutation oracle re-scans the prefix from scratch for every
pair it re-checks, and the tuple search literally enumerates position tuples.
Agreement between the two sides is therefore evidence, not tautology.
"""

from __future__ import annotations

import itertools
import math
import random
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .kernels import njit
from .model import (
    BLUE,
    RED,
    Coloring,
    Hypergraph,
    PatternSpec,
    PatternWitness,
    SourceHypergraph3,
    parse_hypergraph,
    parse_source3,
)
from .patterns import membership_matrix


def brute_two_colorable(g: SourceHypergraph3, max_n: int = 24) -> Optional[Coloring]:
    """First proper 2-coloring in lexicographic order (red < blue), or None.

    Exhausts the 2^n assignments; by complement symmetry only those coloring
    vertex 1 red need scanning.
    """
    if g.n > max_n:
        raise ValueError(f"n={g.n} exceeds the enumeration cap {max_n}")
    n = g.n
    masks = [sum(1 << (n - v) for v in t) for t in g.triples]
    # bit n-v of c is vertex v's color (0 = red); ascending c is lexicographic
    for c in range(1 << (n - 1)):
        ok = True
        for mk in masks:
            x = c & mk
            if x == 0 or x == mk:
                ok = False
                break
        if ok:
            return tuple(BLUE if (c >> (n - v)) & 1 else RED for v in range(1, n + 1))
    return None


@njit(cache=True, nogil=True)
def _first_free_perm(memb, pair_i, pair_j, v_indptr, v_pairs, length, out):
    """Lexicographic DFS over permutations; prefix re-evaluated from scratch.

    Only pairs whose symmetric difference contains the newly placed vertex
    are re-scanned (no other pair's count can change).  Returns 1 and fills
    out with the first free permutation, else 0.
    """
    n = memb.shape[1]
    used = np.zeros(n, np.uint8)
    order = np.empty(n, np.int32)
    cand = np.zeros(n + 1, np.int32)
    depth = 0
    while depth >= 0:
        if depth == n:
            for i in range(n):
                out[i] = order[i]
            return 1
        v = cand[depth]
        found = -1
        while v < n:
            if used[v] == 0:
                ok = True
                for t in range(v_indptr[v], v_indptr[v + 1]):
                    p = v_pairs[t]
                    ei = pair_i[p]
                    ej = pair_j[p]
                    last = 0
                    cnt = 0
                    for q in range(depth + 1):
                        w = order[q] if q < depth else v
                        s = 0
                        if memb[ei, w] == 1:
                            if memb[ej, w] == 0:
                                s = 1
                        elif memb[ej, w] == 1:
                            s = -1
                        if s != 0 and s != last:
                            cnt += 1
                            last = s
                    if cnt >= length:
                        ok = False
                        break
                if ok:
                    found = v
                    break
            v += 1
        if found < 0:
            depth -= 1
            if depth >= 0:
                used[order[depth]] = 0
            continue
        used[found] = 1
        order[depth] = found
        cand[depth] = found + 1
        depth += 1
        cand[depth] = 0
    return 0


def _oracle_pairs(h: Hypergraph, length: int):
    a = membership_matrix(h).astype(bool)
    m, n = a.shape
    pi: list[int] = []
    pj: list[int] = []
    per_vertex: list[list[int]] = [[] for _ in range(n)]
    for i in range(m):
        for j in range(i + 1, m):
            da = a[i] & ~a[j]
            db = a[j] & ~a[i]
            x, y = int(da.sum()), int(db.sum())
            best = min(max(x, y), 1) if min(x, y) == 0 else 2 * min(x, y) + (x != y)
            if best < length:
                continue
            p = len(pi)
            pi.append(i)
            pj.append(j)
            for v in np.nonzero(da | db)[0]:
                per_vertex[int(v)].append(p)
    indptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        indptr[v + 1] = indptr[v] + len(per_vertex[v])
    flat = np.fromiter(
        (p for chunk in per_vertex for p in chunk), np.int64, count=int(indptr[-1])
    )
    return (
        np.asarray(pi, dtype=np.int64),
        np.asarray(pj, dtype=np.int64),
        indptr,
        flat,
    )


def brute_free_ordering(
    h: Hypergraph, spec: PatternSpec, max_n: int = 10
) -> Optional[tuple[int, ...]]:
    """First spec-free permutation in lexicographic order, or None."""
    if h.n_vertices > max_n:
        raise ValueError(
            f"N={h.n_vertices} exceeds the enumeration cap {max_n}; pass a larger max_n"
        )
    memb = np.ascontiguousarray(membership_matrix(h))
    pair_i, pair_j, v_indptr, v_pairs = _oracle_pairs(h, spec.length)
    out = np.empty(h.n_vertices, np.int32)
    if memb.shape[0] < 2:
        return tuple(range(1, h.n_vertices + 1))
    found = _first_free_perm(
        memb, pair_i, pair_j, v_indptr, v_pairs, spec.length, out
    )
    if not found:
        return None
    return tuple(int(v) + 1 for v in out)


def naive_pattern_search(
    order, e1, e2, spec: PatternSpec, max_n: int = 12
) -> Optional[PatternWitness]:
    """Literal search over position tuples for an alternation of full length.

    Returns the lexicographically earliest witness (by position sequence),
    or None.  Restricted to the symmetric difference, since shared and
    outside vertices can never take part.
    """
    if len(order) > max_n:
        raise ValueError(f"N={len(order)} exceeds the enumeration cap {max_n}")
    s1, s2 = set(e1), set(e2)
    length = spec.length
    marked = [
        (v, 1 if v in s1 else -1) for v in order if (v in s1) != (v in s2)
    ]
    for combo in itertools.combinations(range(len(marked)), length):
        sides = [marked[t][1] for t in combo]
        if all(sides[q] == -sides[q + 1] for q in range(length - 1)):
            first = sides[0]
            return PatternWitness(
                edge_a=0 if first == 1 else 1,
                edge_b=1 if first == 1 else 0,
                vertices=tuple(marked[t][0] for t in combo),
            )
    return None


def random_3uniform(seed: int, n: int, m: int) -> SourceHypergraph3:
    """m distinct triples over 1..n, reproducible from the seed."""
    universe = list(itertools.combinations(range(1, n + 1), 3))
    if m > len(universe):
        raise ValueError(f"m={m} exceeds C({n},3)={len(universe)}")
    rng = random.Random(seed)
    return SourceHypergraph3(n, tuple(rng.sample(universe, m)))


def random_hypergraph(
    seed: int,
    n_vertices: int,
    n_edges: int,
    min_size: int = 1,
    max_size: int | None = None,
) -> Hypergraph:
    """n_edges distinct edges with sizes in [min_size, max_size]."""
    if max_size is None:
        max_size = n_vertices
    if not (0 <= min_size <= max_size <= n_vertices):
        raise ValueError(f"bad size bounds [{min_size}, {max_size}] for N={n_vertices}")
    available = sum(math.comb(n_vertices, s) for s in range(min_size, max_size + 1))
    if n_edges > available:
        raise ValueError(f"only {available} distinct edges available, need {n_edges}")
    rng = random.Random(seed)
    edges: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    attempts = 0
    while len(edges) < n_edges:
        attempts += 1
        if attempts > 10_000 * (n_edges + 1):
            raise RuntimeError("edge sampling failed to converge")
        size = rng.randint(min_size, max_size)
        e = frozenset(rng.sample(range(1, n_vertices + 1), size))
        if e not in seen:
            seen.add(e)
            edges.append(e)
    return Hypergraph(n_vertices, tuple(edges))


def fano() -> SourceHypergraph3:
    """The 7-point projective plane: the canonical non-2-colorable input."""
    return SourceHypergraph3(
        7,
        (
            (1, 2, 4),
            (2, 3, 5),
            (3, 4, 6),
            (4, 5, 7),
            (1, 5, 6),
            (2, 6, 7),
            (1, 3, 7),
        ),
    )


def corpus_dir() -> Path:
    return Path(str(resources.files("abfree") / "corpus"))


def corpus_path(name: str) -> Path:
    p = corpus_dir() / name
    if not p.exists():
        raise FileNotFoundError(f"no corpus file {name!r} in {corpus_dir()}")
    return p


def load_corpus_hypergraph(name: str) -> Hypergraph:
    return parse_hypergraph(corpus_path(name).read_text())


def load_corpus_source(name: str) -> SourceHypergraph3:
    return parse_source3(corpus_path(name).read_text())
