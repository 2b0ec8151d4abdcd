"""Core data types: hypergraphs, orderings, pattern specs, reduction instances.

Vertices are 1-based identifiers everywhere (files, witnesses, block tables),
so layout formulas like "triple block j starts at 2n + 4j - 3" can be read off
directly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence

RED = "red"
BLUE = "blue"

VERTEX_BLOCK = "vertex"  # 2 vertices encoding the color of one source vertex
EDGE_BLOCK = "edge"      # 4 vertices encoding the colors of one source triple
APEX_BLOCK = "apex"
LIFT_BLOCK = "lift"

_ROLES = (VERTEX_BLOCK, EDGE_BLOCK, APEX_BLOCK, LIFT_BLOCK)


class FormatError(ValueError):
    """Malformed input file or document."""


class StructureError(ValueError):
    """No transform of an ordering realizes the requested block structure."""


class CertificateError(ValueError):
    """A coloring or ordering certificate fails verification."""


@dataclass(frozen=True)
class Hypergraph:
    """A vertex count plus an ordered list of vertex-set edges.

    Edge list order is significant: it provides stable edge indices (0-based)
    and round-trips through serialization unchanged.  Duplicate edges are
    rejected; empty edges are representable in memory but not in the `.hg`
    text format.
    """

    n_vertices: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError(f"n_vertices must be >= 1, got {self.n_vertices}")
        object.__setattr__(self, "edges", tuple(frozenset(e) for e in self.edges))
        seen = set()
        for idx, e in enumerate(self.edges):
            for v in e:
                if not (1 <= v <= self.n_vertices):
                    raise ValueError(
                        f"edge {idx}: identifier {v} exceeds N={self.n_vertices}"
                        if v > self.n_vertices
                        else f"edge {idx}: identifier {v} out of range"
                    )
            if e in seen:
                raise ValueError(f"edge {idx}: duplicate edge {sorted(e)}")
            seen.add(e)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)


@dataclass(frozen=True)
class PatternSpec:
    """The forbidden alternation pattern: k A/B pairs, optionally a trailing A.

    (k=2, trailing_a=False) is the 4-alternation ABAB; (k=2, trailing_a=True)
    is ABABA; (k=1, trailing_a=True) is ABA.
    """

    k: int
    trailing_a: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"pattern needs k >= 1, got {self.k}")

    @property
    def length(self) -> int:
        return 2 * self.k + (1 if self.trailing_a else 0)

    def __str__(self) -> str:
        return f"ab^{self.k}" + ("a" if self.trailing_a else "")

    @classmethod
    def parse(cls, text: str) -> "PatternSpec":
        m = re.fullmatch(r"ab\^(\d+)(a?)", text.strip().lower())
        if not m:
            raise FormatError(f"bad pattern {text!r}: expected ab^K or ab^Ka")
        return cls(k=int(m.group(1)), trailing_a=bool(m.group(2)))


ABAB = PatternSpec(2, False)
ABABA = PatternSpec(2, True)
ABA = PatternSpec(1, True)


@dataclass(frozen=True)
class PatternWitness:
    """A concrete forbidden alternation found in an ordering.

    ``vertices`` lists the alternating vertices in ordering position order;
    those at even indices (0, 2, ...) lie in edge_a only, odd indices in
    edge_b only.  Edge indices are 0-based positions in the edge list.
    """

    edge_a: int
    edge_b: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class SourceHypergraph3:
    """A 3-uniform hypergraph: the source problem of the reductions."""

    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1 source vertices, got {self.n}")
        object.__setattr__(
            self, "triples", tuple(tuple(t) for t in self.triples)
        )
        seen = set()
        for t in self.triples:
            if len(t) != 3 or not (1 <= t[0] < t[1] < t[2] <= self.n):
                raise ValueError(f"triple {t} not strictly increasing in [1, {self.n}]")
            if t in seen:
                raise ValueError(f"duplicate triple {t}")
            seen.add(t)

    @property
    def m(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class Block:
    """One block of a reduction instance's vertex partition."""

    role: str
    members: tuple[int, ...]
    source_index: int | None = None

    def __post_init__(self):
        if self.role not in _ROLES:
            raise ValueError(f"unknown block role {self.role!r}")
        object.__setattr__(self, "members", tuple(sorted(self.members)))
        if not self.members:
            raise ValueError("empty block")
        if self.role == VERTEX_BLOCK and len(self.members) != 2:
            raise ValueError(f"vertex block size must be 2, got {len(self.members)}")
        if self.role == EDGE_BLOCK and len(self.members) != 4:
            raise ValueError(f"edge block size must be 4, got {len(self.members)}")


@dataclass(frozen=True)
class Instance:
    """A reduced hypergraph together with its construction provenance.

    ``blocks`` partitions the vertex set into the per-source-vertex pairs,
    per-source-triple quadruples and any appended apex/lift vertices, in
    construction order.  ``edge_families`` records, per edge, which
    construction families produced it (deduplicated edges list every family).
    Bare instances (no reduction provenance) carry source=None and no blocks.
    """

    hypergraph: Hypergraph
    blocks: tuple[Block, ...]
    source: SourceHypergraph3 | None
    spec: PatternSpec
    lineage: tuple[str, ...]
    edge_families: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "lineage", tuple(self.lineage))
        if self.edge_families is not None:
            object.__setattr__(
                self, "edge_families", tuple(tuple(f) for f in self.edge_families)
            )
            if len(self.edge_families) != self.hypergraph.n_edges:
                raise ValueError("edge_families length differs from edge count")
        covered: set[int] = set()
        for b in self.blocks:
            if covered & set(b.members):
                raise ValueError("blocks not disjoint")
            covered |= set(b.members)
        if self.blocks:
            if covered != set(range(1, self.hypergraph.n_vertices + 1)):
                raise ValueError("blocks do not cover the vertex set")
            rank = {VERTEX_BLOCK: 0, EDGE_BLOCK: 1, APEX_BLOCK: 2, LIFT_BLOCK: 2}
            ranks = [rank[b.role] for b in self.blocks]
            if ranks != sorted(ranks):
                raise ValueError(
                    "blocks must be ordered: vertex blocks, edge blocks, then apex/lift"
                )

    def block_sets(self) -> list[frozenset[int]]:
        return [frozenset(b.members) for b in self.blocks]


Coloring = tuple[str, ...]  # entry i-1 is the color of source vertex i


def parse_coloring(text: str, n: int) -> Coloring:
    """Parse "red,red,blue" (or "r,r,b") into a coloring of n source vertices."""
    names = {"red": RED, "r": RED, "blue": BLUE, "b": BLUE}
    parts = [p.strip().lower() for p in text.split(",")]
    try:
        colors = tuple(names[p] for p in parts)
    except KeyError as exc:
        raise FormatError(f"bad color {exc.args[0]!r}: expected red or blue") from None
    if len(colors) != n:
        raise FormatError(f"coloring has {len(colors)} entries, source has {n} vertices")
    return colors


def validate_ordering(order: Sequence[int], n: int) -> tuple[int, ...]:
    """Check that order is a permutation of 1..n and return it as a tuple."""
    order = tuple(order)
    if len(order) != n or set(order) != set(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {order}")
    return order


# ---------------------------------------------------------------------------
# .hg text format: "N M" header, then one line of increasing identifiers per
# edge; blank lines and '#' comments ignored.

def parse_hypergraph(text: str) -> Hypergraph:
    lines = text.splitlines()
    rows: list[tuple[int, str]] = []  # (1-based line number, content)
    for ln, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        rows.append((ln, s))
    if not rows:
        raise FormatError("line 1: missing header")
    hln, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(f"line {hln}: header must be 'N M', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"line {hln}: header must be two integers") from None
    if n < 1 or m < 0:
        raise FormatError(f"line {hln}: need N >= 1 and M >= 0")
    if len(rows) - 1 != m:
        raise FormatError(
            f"line {hln}: header announces {m} edges, file has {len(rows) - 1}"
        )
    edges: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for ln, s in rows[1:]:
        try:
            ids = [int(tok) for tok in s.split()]
        except ValueError:
            raise FormatError(f"line {ln}: non-integer identifier in {s!r}") from None
        for v in ids:
            if v < 1:
                raise FormatError(f"line {ln}: identifier {v} must be >= 1")
            if v > n:
                raise FormatError(f"line {ln}: identifier {v} exceeds N={n}")
        if any(a >= b for a, b in zip(ids, ids[1:])):
            raise FormatError(f"line {ln}: identifiers must be strictly increasing")
        e = frozenset(ids)
        if e in seen:
            raise FormatError(f"line {ln}: duplicate edge {sorted(e)}")
        seen.add(e)
        edges.append(e)
    return Hypergraph(n, tuple(edges))


def serialize_hypergraph(h: Hypergraph) -> str:
    out = [f"{h.n_vertices} {h.n_edges}"]
    for idx, e in enumerate(h.edges):
        if not e:
            raise ValueError(f"edge {idx} is empty; the .hg format cannot express it")
        out.append(" ".join(str(v) for v in sorted(e)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# .3hg triple-list format for 3-uniform source hypergraphs: "n m" header,
# then one "i k l" line per triple (i < k < l).  Kept distinct from .hg so a
# source problem is never mistaken for a reduced hypergraph.

def parse_source3(text: str) -> SourceHypergraph3:
    rows = [
        (ln, s.strip())
        for ln, s in enumerate(text.splitlines(), start=1)
        if s.strip() and not s.strip().startswith("#")
    ]
    if not rows:
        raise FormatError("line 1: missing header")
    hln, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(f"line {hln}: header must be 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"line {hln}: header must be two integers") from None
    if len(rows) - 1 != m:
        raise FormatError(
            f"line {hln}: header announces {m} triples, file has {len(rows) - 1}"
        )
    triples = []
    for ln, s in rows[1:]:
        toks = s.split()
        if len(toks) != 3:
            raise FormatError(f"line {ln}: a triple needs exactly 3 identifiers")
        try:
            t = tuple(int(x) for x in toks)
        except ValueError:
            raise FormatError(f"line {ln}: non-integer identifier in {s!r}") from None
        triples.append(t)
    try:
        return SourceHypergraph3(n, tuple(triples))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_source3(g: SourceHypergraph3) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(" ".join(str(v) for v in t) for t in g.triples)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Instance JSON document.

def serialize_instance(inst: Instance) -> str:
    doc = {
        "n_vertices": inst.hypergraph.n_vertices,
        "edges": [sorted(e) for e in inst.hypergraph.edges],
        "blocks": [
            {
                "role": b.role,
                "members": list(b.members),
                "source_index": b.source_index,
            }
            for b in inst.blocks
        ],
        "source": (
            None
            if inst.source is None
            else {"n": inst.source.n, "triples": [list(t) for t in inst.source.triples]}
        ),
        "spec": {"k": inst.spec.k, "trailing_a": inst.spec.trailing_a},
        "lineage": list(inst.lineage),
        "edge_families": (
            None
            if inst.edge_families is None
            else [list(f) for f in inst.edge_families]
        ),
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("instance document must be a JSON object")
    required = {"n_vertices", "edges", "blocks", "source", "spec", "lineage"}
    missing = required - doc.keys()
    if missing:
        raise FormatError(f"missing fields: {sorted(missing)}")
    try:
        h = Hypergraph(int(doc["n_vertices"]), tuple(frozenset(e) for e in doc["edges"]))
        blocks = tuple(
            Block(b["role"], tuple(b["members"]), b.get("source_index"))
            for b in doc["blocks"]
        )
        source = None
        if doc["source"] is not None:
            source = SourceHypergraph3(
                int(doc["source"]["n"]),
                tuple(tuple(t) for t in doc["source"]["triples"]),
            )
        spec = PatternSpec(int(doc["spec"]["k"]), bool(doc["spec"]["trailing_a"]))
        fams = doc.get("edge_families")
        if fams is not None:
            fams = tuple(tuple(f) for f in fams)
        return Instance(h, blocks, source, spec, tuple(doc["lineage"]), fams)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad instance document: {exc!r}") from None
