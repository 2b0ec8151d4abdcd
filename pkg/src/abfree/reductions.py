"""Reductions from 3-uniform hypergraph 2-coloring to alternation-freeness,
with certificate translation in both directions.

The base construction encodes each source vertex as a 2-vertex block (its
internal order is the color) and each source triple as a 4-vertex block whose
three adjacent pairs mirror the colors of the triple's members in reverse
order.  Circular block intervals freeze the block layout, tie edges link each
vertex block to its triple slots, and an adjacency pair per triple block
outlaws the two monochromatic layouts.  Further transforms raise the pattern
index (fresh-vertex lifts), switch to the odd pattern (appended tail vertex
plus two-interval scaffolding), or add an apex vertex lying in every edge.
"""

from __future__ import annotations

import dataclasses

from .gadgets import circular_block_intervals, two_interval_blocks, normalize_to_structure
from .model import (
    ABAB,
    ABABA,
    APEX_BLOCK,
    BLUE,
    EDGE_BLOCK,
    LIFT_BLOCK,
    RED,
    VERTEX_BLOCK,
    Block,
    CertificateError,
    Coloring,
    Hypergraph,
    Instance,
    PatternSpec,
    SourceHypergraph3,
    validate_ordering,
)

LIN_BASE = "2col→abab"
LIN_ODD = "abab→ababa"
LIN_APEX = "apex"

FAM_INTERVAL = "interval"       # circular block intervals
FAM_TIE = "tie"                 # vertex-block / triple-slot links
FAM_ADJACENCY = "adjacency"     # per-triple pair {first, last} and complement
FAM_BASE = "base"               # carried unchanged into a derived instance
FAM_EXTENDED = "extended"       # base edge plus the appended tail vertex
FAM_TWO_INTERVAL = "two-interval"
FAM_LIFTED = "lifted"

# Layout of a triple block (offsets from its first vertex) for each proper
# color combination of the triple's members in increasing index order.
_TRIPLE_LAYOUT = {
    (RED, RED, BLUE): (1, 2, 3, 0),
    (RED, BLUE, RED): (2, 3, 0, 1),
    (RED, BLUE, BLUE): (2, 1, 0, 3),
    (BLUE, RED, RED): (3, 0, 1, 2),
    (BLUE, RED, BLUE): (1, 0, 3, 2),
    (BLUE, BLUE, RED): (0, 3, 2, 1),
}


class _EdgePool:
    """Ordered edge accumulator that merges duplicates and their families."""

    def __init__(self):
        self._edges: list[frozenset[int]] = []
        self._families: list[list[str]] = []
        self._index: dict[frozenset[int], int] = {}

    def add(self, edge, family: str):
        e = frozenset(edge)
        i = self._index.get(e)
        if i is None:
            self._index[e] = len(self._edges)
            self._edges.append(e)
            self._families.append([family])
        elif family not in self._families[i]:
            self._families[i].append(family)

    def result(self):
        return tuple(self._edges), tuple(tuple(f) for f in self._families)


def triple_block_start(n: int, j: int) -> int:
    """First vertex of the j-th triple block (1-based j) for n source vertices."""
    return 2 * n + 4 * j - 3


def tie_edges(i: int, slot: int) -> tuple[frozenset[int], frozenset[int]]:
    """The two edges locking vertex block i's order to the order of a slot pair.

    ``slot`` is the smaller vertex of the pair inside the triple block.  The
    edges differ exactly on {2i-1, 2i, slot, slot+1}; one contains 2i and
    slot, the other 2i-1 and slot+1, so a 4-alternation appears unless both
    pairs are ordered the same way.
    """
    closed = frozenset(range(2 * i, slot + 1))
    split = frozenset({2 * i - 1, slot + 1}) | frozenset(range(2 * i + 1, slot))
    return closed, split


def reduce_2col_to_abab(g: SourceHypergraph3) -> Instance:
    """Build the hypergraph that is 4-alternation-free iff g is 2-colorable."""
    if g.n < 3 or g.m < 1:
        raise ValueError(f"need n >= 3 and m >= 1, got n={g.n}, m={g.m}")
    n, m = g.n, g.m
    nv = 2 * n + 4 * m
    blocks = [
        Block(VERTEX_BLOCK, (2 * i - 1, 2 * i), source_index=i) for i in range(1, n + 1)
    ] + [
        Block(
            EDGE_BLOCK,
            tuple(range(triple_block_start(n, j), triple_block_start(n, j) + 4)),
            source_index=j,
        )
        for j in range(1, m + 1)
    ]
    pool = _EdgePool()
    for e in circular_block_intervals([b.members for b in blocks]):
        pool.add(e, FAM_INTERVAL)
    for j, trip in enumerate(g.triples, start=1):
        t0 = triple_block_start(n, j)
        for r, i in enumerate(trip, start=1):
            closed, split = tie_edges(i, t0 + (3 - r))
            pool.add(closed, FAM_TIE)
            pool.add(split, FAM_TIE)
    full = frozenset(range(1, nv + 1))
    for j in range(1, m + 1):
        t0 = triple_block_start(n, j)
        pair = frozenset({t0, t0 + 3})
        pool.add(pair, FAM_ADJACENCY)
        pool.add(full - pair, FAM_ADJACENCY)
    edges, families = pool.result()
    inst = Instance(
        hypergraph=Hypergraph(nv, edges),
        blocks=tuple(blocks),
        source=g,
        spec=ABAB,
        lineage=(LIN_BASE,),
        edge_families=families,
    )
    _check_block_coverage(inst)
    return inst


def _check_block_coverage(inst: Instance) -> None:
    """Interval and tie edges must cover a cyclic arc of blocks, with every
    block strictly inside the arc fully contained."""
    sets = inst.block_sets()
    k = len(sets)
    for e, fams in zip(inst.hypergraph.edges, inst.edge_families or ()):
        if FAM_INTERVAL not in fams and FAM_TIE not in fams:
            continue
        hit = {i for i, b in enumerate(sets) if b & e}
        if len(hit) == k:
            interior = set(range(1, k - 1))
        else:
            changes = sum(1 for i in range(k) if (i in hit) != ((i + 1) % k in hit))
            if changes != 2:
                raise RuntimeError(f"edge {sorted(e)} does not cover a block arc")
            interior = {i for i in hit if (i - 1) % k in hit and (i + 1) % k in hit}
        for i in interior:
            if not sets[i] <= e:
                raise RuntimeError(
                    f"edge {sorted(e)} splits interior block {i} of its arc"
                )


def _require_base(inst: Instance) -> SourceHypergraph3:
    if (
        inst.source is None
        or not inst.blocks
        or not inst.lineage
        or inst.lineage[-1] != LIN_BASE
    ):
        raise ValueError("instance lacks base-reduction provenance")
    return inst.source


def _check_proper(src: SourceHypergraph3, coloring: Coloring) -> None:
    if len(coloring) != src.n:
        raise ValueError(
            f"coloring has {len(coloring)} entries, source has {src.n} vertices"
        )
    for t in src.triples:
        cs = {coloring[v - 1] for v in t}
        if len(cs) == 1:
            raise CertificateError(f"monochromatic triple {t}")


def ordering_from_coloring(inst: Instance, coloring: Coloring) -> tuple[int, ...]:
    """The structured free ordering encoding a proper coloring of the source."""
    src = _require_base(inst)
    _check_proper(src, coloring)
    order: list[int] = []
    for b in inst.blocks:
        if b.role == VERTEX_BLOCK:
            lo, hi = b.members
            if coloring[b.source_index - 1] == RED:
                order += [lo, hi]
            else:
                order += [hi, lo]
        else:
            trip = src.triples[b.source_index - 1]
            key = tuple(coloring[v - 1] for v in trip)
            t0 = b.members[0]
            order += [t0 + off for off in _TRIPLE_LAYOUT[key]]
    return tuple(order)


def coloring_from_ordering(inst: Instance, order) -> Coloring:
    """Read the source coloring off a free ordering of a base instance.

    The ordering is first rotated/reflected into block structure; each vertex
    block's internal order gives the color.  Every triple slot pair is checked
    against its vertex block (a mismatch means the ordering was not actually
    free), and the resulting coloring must be proper.
    """
    src = _require_base(inst)
    order = validate_ordering(order, inst.hypergraph.n_vertices)
    norm = normalize_to_structure(order, [b.members for b in inst.blocks])
    pos = {v: i for i, v in enumerate(norm)}
    colors: list[str] = []
    for b in inst.blocks:
        if b.role == VERTEX_BLOCK:
            lo, hi = b.members
            colors.append(RED if pos[lo] < pos[hi] else BLUE)
    for j, trip in enumerate(src.triples, start=1):
        t0 = triple_block_start(src.n, j)
        for r, i in enumerate(trip, start=1):
            slot = t0 + (3 - r)
            slot_red = pos[slot] < pos[slot + 1]
            if slot_red != (colors[i - 1] == RED):
                raise CertificateError(
                    f"inconsistent certificate: slot pair ({slot},{slot + 1}) of "
                    f"triple {j} contradicts vertex block {i}"
                )
    coloring = tuple(colors)
    _check_proper(src, coloring)
    return coloring


def reduce_abab_to_ababa(inst: Instance) -> Instance:
    """Transform a base instance so 4-alternation-freeness becomes
    5-alternation-freeness on one extra vertex.

    Requires at least 7 blocks after the appended tail vertex (pad the source
    first); the two-interval scaffolding only freezes the layout from there.
    """
    _require_base(inst)
    nv = inst.hypergraph.n_vertices
    tail = nv + 1
    blocks = inst.blocks + (Block(APEX_BLOCK, (tail,)),)
    if len(blocks) < 7:
        raise ValueError(
            f"needs at least 7 blocks, got {len(blocks)}; pad the source first"
        )
    pool = _EdgePool()
    fams = inst.edge_families or tuple(() for _ in inst.hypergraph.edges)
    for e, fam in zip(inst.hypergraph.edges, fams):
        pool.add(e, FAM_BASE)
        for f in fam:
            pool.add(e, f)
    for e in inst.hypergraph.edges:
        pool.add(e | {tail}, FAM_EXTENDED)
    for e in two_interval_blocks([b.members for b in blocks]):
        pool.add(e, FAM_TWO_INTERVAL)
    edges, families = pool.result()
    return Instance(
        hypergraph=Hypergraph(nv + 1, edges),
        blocks=blocks,
        source=inst.source,
        spec=ABABA,
        lineage=inst.lineage + (LIN_ODD,),
        edge_families=families,
    )


def lift_Ht(h: Hypergraph, t: int) -> Hypergraph:
    """Add t fresh vertices and, per edge, its union with each fresh vertex.

    Raises the alternation index by one when t matches the target pattern
    length: freeness for L alternations on h is equivalent to freeness for
    L+2 alternations on the lift with t = L+2 fresh vertices.
    """
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    n2 = h.n_vertices + t
    edges = list(h.edges)
    seen = set(edges)
    for e in h.edges:
        for x in range(h.n_vertices + 1, n2 + 1):
            e2 = e | {x}
            if e2 not in seen:
                seen.add(e2)
                edges.append(e2)
    return Hypergraph(n2, tuple(edges))


def pad_source(g: SourceHypergraph3, min_blocks: int) -> SourceHypergraph3:
    """Append isolated source vertices until n + m >= min_blocks.

    Isolated vertices take either color freely, so 2-colorability is
    untouched.
    """
    n = g.n
    while n + g.m < min_blocks:
        n += 1
    if n == g.n:
        return g
    return SourceHypergraph3(n, g.triples)


def apex_augment(h: Hypergraph) -> Hypergraph:
    """Add one vertex to the vertex set and to every edge.

    The apex never alternates, so 4-alternation-freeness is preserved both
    ways; on the augmented side it coincides with realizability by points
    and pseudodisks.
    """
    apex = h.n_vertices + 1
    return Hypergraph(apex, tuple(e | {apex} for e in h.edges))


def _lift_instance(inst: Instance, t: int, spec: PatternSpec) -> Instance:
    h = inst.hypergraph
    lifted = lift_Ht(h, t)
    fams = inst.edge_families or tuple(() for _ in h.edges)
    base_fams = tuple(tuple(dict.fromkeys(f + (FAM_BASE,))) for f in fams)
    new_fams = base_fams + ((FAM_LIFTED,),) * (lifted.n_edges - h.n_edges)
    blocks = inst.blocks + tuple(
        Block(LIFT_BLOCK, (v,)) for v in range(h.n_vertices + 1, lifted.n_vertices + 1)
    )
    return Instance(
        hypergraph=lifted,
        blocks=blocks,
        source=inst.source,
        spec=spec,
        lineage=inst.lineage + (f"lift(t={t})",),
        edge_families=new_fams,
    )


def compile(g: SourceHypergraph3, spec: PatternSpec) -> Instance:
    """Chain the reductions so g is 2-colorable iff the instance is spec-free.

    Even targets start from the base construction and lift once per extra
    alternation pair; odd targets insert the tail-vertex transform (padding
    the source to reach 7 blocks) before lifting.  Index know-how: a lift
    with t fresh vertices equal to the new pattern length raises k by one.
    """
    if spec.k < 2:
        raise ValueError(
            "unsupported target: deciding ab^1 / ab^1a freeness is not covered"
        )
    if not spec.trailing_a:
        inst = reduce_2col_to_abab(g)
        for j in range(2, spec.k):
            inst = _lift_instance(inst, 2 * j + 2, PatternSpec(j + 1, False))
    else:
        padded = pad_source(g, 6)
        inst = reduce_2col_to_abab(padded)
        if padded.n != g.n:
            inst = dataclasses.replace(
                inst, lineage=(f"pad(n={padded.n})",) + inst.lineage
            )
        inst = reduce_abab_to_ababa(inst)
        for j in range(3, spec.k + 1):
            inst = _lift_instance(inst, 2 * j + 1, PatternSpec(j, True))
    return inst
