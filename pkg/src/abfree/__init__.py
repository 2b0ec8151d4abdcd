"""Alternation-pattern-free hypergraph orderings: checking, exact search,
hardness-reduction instance generation and certificate translation."""

from .model import (
    ABA,
    ABAB,
    ABABA,
    BLUE,
    RED,
    Block,
    CertificateError,
    Coloring,
    FormatError,
    Hypergraph,
    Instance,
    PatternSpec,
    PatternWitness,
    SourceHypergraph3,
    StructureError,
    parse_hypergraph,
    parse_instance,
    parse_source3,
    serialize_hypergraph,
    serialize_instance,
    serialize_source3,
)
from .patterns import (
    AlternationProfile,
    alternation_count,
    find_pattern_witness,
    is_free_ordering,
    max_pair_alternation,
)
from .gadgets import (
    canonical_form,
    circular_block_intervals,
    circular_intervals,
    has_structure,
    is_equivalent,
    normalize_to_structure,
    two_interval_blocks,
    two_intervals,
)
from .reductions import (
    apex_augment,
    coloring_from_ordering,
    compile,
    lift_Ht,
    ordering_from_coloring,
    pad_source,
    reduce_2col_to_abab,
    reduce_abab_to_ababa,
)
from .solver import (
    Budget,
    SolveOutcome,
    count_free_orderings,
    decide_stabbed_pseudodisk,
    free_orderings,
    solve,
)
from .oracle import (
    brute_free_ordering,
    brute_two_colorable,
    fano,
    naive_pattern_search,
    random_3uniform,
    random_hypergraph,
)

__version__ = "0.1.0"
