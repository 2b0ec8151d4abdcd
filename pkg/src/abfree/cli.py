"""Command-line interface: check / solve / reduce / certify.

Exit codes form a scripting contract: 0 free/sat/success, 1 a definite
negative answer (pattern found, unsat, refused certificate), 2 usage or
input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .model import (
    CertificateError,
    FormatError,
    Instance,
    PatternSpec,
    StructureError,
    parse_coloring,
    parse_hypergraph,
    parse_instance,
    parse_source3,
    serialize_instance,
)
from .patterns import is_free_ordering
from .reductions import (
    LIN_APEX,
    apex_augment,
    coloring_from_ordering,
    compile as compile_reduction,
    ordering_from_coloring,
)
from .solver import Budget, count_free_orderings, solve

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3


def _read(path: str) -> str:
    return Path(path).read_text()


def _parse_order(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise FormatError(f"bad ordering {text!r}: expected comma-separated integers")


def _fmt_order(order) -> str:
    return ",".join(str(v) for v in order)


def cmd_check(args) -> int:
    h = parse_hypergraph(_read(args.file))
    spec = PatternSpec.parse(args.pattern)
    order = _parse_order(args.order)
    witness = is_free_ordering(h, order, spec)
    if witness is None:
        print("FREE")
        return EXIT_OK
    ea = sorted(h.edges[witness.edge_a])
    eb = sorted(h.edges[witness.edge_b])
    print(
        f"WITNESS edges {witness.edge_a},{witness.edge_b}; "
        f"sets {{{' '.join(map(str, ea))}}},{{{' '.join(map(str, eb))}}}; "
        f"vertices {_fmt_order(witness.vertices)}"
    )
    return EXIT_NEGATIVE


def cmd_solve(args) -> int:
    h = parse_hypergraph(_read(args.file))
    spec = PatternSpec.parse(args.pattern)
    if args.count:
        n = count_free_orderings(h, spec, max_n=args.enum_cap)
        print(n)
        return EXIT_OK if n > 0 else EXIT_NEGATIVE
    seconds = args.budget
    if seconds is None:
        env = os.environ.get("ABFREE_BUDGET", "").strip()
        if env:
            seconds = float(env)
    budget = Budget(max_nodes=args.nodes, max_seconds=seconds)
    threads = 1 if args.deterministic else args.threads
    outcome = solve(h, spec, budget=budget, threads=threads)
    if outcome.status == "sat":
        print(f"SAT {_fmt_order(outcome.ordering)}")
        return EXIT_OK
    if outcome.status == "unsat":
        print("UNSAT")
        return EXIT_NEGATIVE
    print("TIMEOUT")
    return EXIT_TIMEOUT


def cmd_reduce(args) -> int:
    if args.target == "pseudodisk":
        h = parse_hypergraph(_read(args.source))
        inst = Instance(
            hypergraph=apex_augment(h),
            blocks=(),
            source=None,
            spec=PatternSpec(2, False),
            lineage=(LIN_APEX,),
        )
    else:
        g = parse_source3(_read(args.source))
        spec = PatternSpec.parse(args.target)
        inst = compile_reduction(g, spec)
    if args.out:
        Path(args.out).write_text(serialize_instance(inst))
    print(
        f"N={inst.hypergraph.n_vertices} edges={inst.hypergraph.n_edges} "
        f"blocks={len(inst.blocks)} spec={inst.spec} "
        f"lineage={';'.join(inst.lineage)}"
    )
    return EXIT_OK


def cmd_certify(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.from_coloring:
        if inst.source is None:
            raise FormatError("instance has no source hypergraph to color")
        coloring = parse_coloring(args.from_coloring, inst.source.n)
        order = ordering_from_coloring(inst, coloring)
        witness = is_free_ordering(inst.hypergraph, order, inst.spec)
        if witness is not None:
            print(f"ordering {_fmt_order(order)}")
            print(f"NOT FREE: witness edges {witness.edge_a},{witness.edge_b}")
            return EXIT_NEGATIVE
        print(f"ordering {_fmt_order(order)}")
        print("FREE (verified)")
        return EXIT_OK
    order = _parse_order(args.from_ordering)
    coloring = coloring_from_ordering(inst, order)
    print(f"coloring {','.join(coloring)}")
    print("PROPER (verified)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abfree",
        description=(
            "Check, find and count alternation-pattern-free vertex orderings "
            "of hypergraphs; build hardness-reduction instances and translate "
            "their certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test one ordering against a pattern")
    p.add_argument("file", help=".hg hypergraph file")
    p.add_argument("--order", required=True, help="comma-separated permutation")
    p.add_argument("--pattern", required=True, help="ab^K or ab^Ka, e.g. ab^2")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="search for a pattern-free ordering")
    p.add_argument("file", help=".hg hypergraph file")
    p.add_argument("--pattern", required=True, help="ab^K or ab^Ka")
    p.add_argument(
        "--budget",
        type=float,
        default=None,
        help="time budget in seconds (default: ABFREE_BUDGET env var, else none)",
    )
    p.add_argument("--nodes", type=int, default=None, help="node budget")
    p.add_argument(
        "--count",
        action="store_true",
        help="print the exact number of free orderings instead (small N)",
    )
    p.add_argument(
        "--enum-cap",
        type=int,
        default=10,
        help="largest N allowed with --count (default 10)",
    )
    p.add_argument("--threads", type=int, default=1)
    p.add_argument(
        "--deterministic",
        action="store_true",
        help="force single-threaded, reproducible search",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="compile a source problem into an instance")
    p.add_argument("source", help=".3hg triple list, or .hg for --target pseudodisk")
    p.add_argument(
        "--target",
        required=True,
        help="ab^K, ab^Ka (K >= 2), or pseudodisk",
    )
    p.add_argument("--out", help="write the instance JSON here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("certify", help="translate and verify a certificate")
    p.add_argument("instance", help="instance JSON file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--from-coloring", help="red/blue list, e.g. red,red,blue")
    group.add_argument("--from-ordering", help="comma-separated permutation")
    p.set_defaults(func=cmd_certify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CertificateError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
