"""Command-line interface: ``kinsearch {generate,query,table1,bench,verify}``.

Exit codes: 0 success, 1 I/O or parse error, 2 not related, 3 unknown id,
4 verification or invariant failure.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys

from . import complexity
from .errors import ConfigInvalid, InsufficientPopulation, NotRelatedWithinLimit, ParseError, PedigreeError, UnknownPerson
from .genfam import GenConfig, generate, sample_pairs
from .harness import bench, verify_grid
from .kinship import name_relationship
from .pedigree import load_csv, save_csv
from .search import DEFAULT_L_MAX, Algorithm, run_search

EXIT_OK = 0
EXIT_IO = 1
EXIT_NOT_RELATED = 2
EXIT_UNKNOWN_ID = 3
EXIT_VERIFY_FAILED = 4


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _add_generation_flags(parser, required: bool):
    parser.add_argument("--generations", type=int, required=required, default=None if required else 7)
    parser.add_argument("--offspring", type=int, required=required, default=None if required else 3)
    parser.add_argument("--families", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--reference-date", type=dt.date.fromisoformat, default=dt.date(2012, 1, 1))
    parser.add_argument(
        "--allow-degenerate", action="store_true", help="permit a single child per couple"
    )


def _config(args) -> GenConfig:
    return GenConfig(
        generations=args.generations,
        offspring=args.offspring,
        families=args.families,
        seed=args.seed,
        reference_date=args.reference_date,
        allow_degenerate=args.allow_degenerate,
    )


def cmd_generate(args) -> int:
    try:
        graph, _ = generate(_config(args))
        save_csv(graph, args.out)
    except ConfigInvalid as exc:
        return _fail(str(exc), EXIT_IO)
    except OSError as exc:
        return _fail(str(exc), EXIT_IO)
    print(f"persons: {len(graph)}")
    return EXIT_OK


def cmd_query(args) -> int:
    try:
        graph = load_csv(args.data)
    except (OSError, PedigreeError) as exc:
        return _fail(str(exc), EXIT_IO)
    try:
        result = run_search(graph, args.p1, args.p2, args.algorithm, args.max_level)
    except UnknownPerson as exc:
        return _fail(str(exc), EXIT_UNKNOWN_ID)
    except NotRelatedWithinLimit as exc:
        message = f"{args.p1} and {args.p2}: not in the same family (no common ancestor within {args.max_level} levels)"
        if args.json:
            out = {"p1": args.p1, "p2": args.p2, "related": False, "message": message}
            if args.stats:
                out["nodes_expanded"] = exc.result.stats.nodes_expanded
            _emit(out)
        else:
            print(message)
        return EXIT_NOT_RELATED

    term, sentence = name_relationship(result, graph)
    out = {
        "p1": args.p1,
        "p2": args.p2,
        "related": True,
        "algorithm": result.stats.algorithm.value,
        "sentence": sentence,
        "term_for_a": term.term_for_a,
        "term_for_b": term.term_for_b,
        "lineal": term.lineal,
        "degree": term.degree,
        "removed": term.removed,
        "d_a": result.d_a,
        "d_b": result.d_b,
        "intersections": list(result.intersections),
        "route_a": list(result.route_a),
        "route_b": list(result.route_b),
    }
    if args.stats:
        out["nodes_expanded"] = result.stats.nodes_expanded
        out["levels_used"] = result.stats.levels_used
    if args.json:
        _emit(out)
        return EXIT_OK
    print(sentence)
    print(f"(d_a, d_b) = ({result.d_a}, {result.d_b})")
    print("intersection: " + ", ".join(map(str, result.intersections)))
    print("route a: " + " -> ".join(map(str, result.route_a)))
    print("route b: " + " -> ".join(map(str, result.route_b)))
    if args.stats:
        print(f"nodes expanded ({result.stats.algorithm.value}): {result.stats.nodes_expanded}")
        print(f"levels used: {result.stats.levels_used}")
    return EXIT_OK


def cmd_table1(args) -> int:
    try:
        rows = complexity.table1(args.max_level, args.offspring)
    except ValueError as exc:
        return _fail(str(exc), EXIT_IO)
    footnote = None
    if args.offspring == complexity.DEFAULT_FANOUT and args.max_level >= complexity.ERRATUM_LEVEL:
        printed = complexity.PUBLISHED_TABLE[complexity.ERRATUM_LEVEL - 1][1]
        footnote = (
            f"level {complexity.ERRATUM_LEVEL} BFS: the published table prints {printed}, "
            f"which repeats level {complexity.ERRATUM_LEVEL + 1}; the closed form gives "
            f"{rows[complexity.ERRATUM_LEVEL - 1].bfs_nodes:,}"
        )
    if args.json:
        _emit(
            {
                "offspring": args.offspring,
                "rows": [
                    {"level": r.level, "bfs": r.bfs_nodes, "bidi": r.bidi_nodes, "pbba": r.pbba_nodes}
                    for r in rows
                ],
                "footnote": footnote,
            }
        )
        return EXIT_OK
    width = max(len(str(rows[-1].bfs_nodes)), 3)
    print(f"{'level':>5}  {'BFS':>{width}}  {'bidirectional':>15}  {'PBBA':>8}")
    for r in rows:
        mark = "*" if footnote and r.level == complexity.ERRATUM_LEVEL else " "
        print(f"{r.level:>5}  {r.bfs_nodes:>{width}}{mark} {r.bidi_nodes:>15}  {r.pbba_nodes:>8}")
    if footnote:
        print(f"* {footnote}")
    return EXIT_OK


def cmd_bench(args) -> int:
    ledger = None
    try:
        if args.data:
            graph = load_csv(args.data)
        else:
            graph, ledger = generate(_config(args))
    except (OSError, PedigreeError, ConfigInvalid) as exc:
        return _fail(str(exc), EXIT_IO)
    try:
        if args.related_only and ledger is None:
            return _fail("--related-only needs generated data (no --data)", EXIT_IO)
        pairs = sample_pairs(graph, args.pairs, args.pair_seed, ledger, related_only=args.related_only)
        report = bench(graph, pairs, args.max_level, timing=args.timing)
    except InsufficientPopulation as exc:
        return _fail(str(exc), EXIT_IO)
    if args.json:
        _emit({"persons": len(graph), **report.to_dict()})
    else:
        print(f"persons: {len(graph)}  pairs: {report.pairs}  related: {report.related_pairs}")
        print(f"{'algorithm':<10} {'mean nodes':>12} {'max nodes':>10}" + ("  median s" if args.timing else ""))
        for name in report.mean_nodes:
            line = f"{name:<10} {report.mean_nodes[name]:>12.2f} {report.max_nodes[name]:>10}"
            if args.timing:
                line += f"  {report.median_seconds[name]:.6f}"
            print(line)
        print(f"ordering violations: {len(report.ordering_violations)}")
    if report.ordering_violations:
        return _fail(f"expansion ordering violated on {len(report.ordering_violations)} pairs", EXIT_VERIFY_FAILED)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = []
    try:
        for seed in args.seed:
            reports.extend(
                verify_grid(seed, args.generations, args.offspring, args.families, args.pairs, l_max=args.max_level)
            )
    except ConfigInvalid as exc:
        return _fail(str(exc), EXIT_IO)
    ok = all(r.correct == r.pairs_tested for r in reports)
    if args.json:
        _emit({"passed": ok, "cells": [r.to_dict() for r in reports]})
    else:
        print(f"{'seed':>6} {'G':>3} {'V':>3} {'fam':>4} {'persons':>8} {'pairs':>6} {'correct':>8}")
        for r in reports:
            print(
                f"{r.seed:>6} {r.generations:>3} {r.offspring:>3} {r.families:>4} {r.persons:>8} "
                f"{r.pairs_tested:>6} {r.correctness_pct:>7.0f}%"
            )
            for f in r.failures:
                print(f"       FAIL {f.pair}: expected {f.expected}; got {f.got}")
        total = sum(r.pairs_tested for r in reports)
        print(f"{sum(r.correct for r in reports)}/{total} pair tests correct")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kinsearch", description="Blood-relationship search over pedigree graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic pedigree CSV")
    _add_generation_flags(p, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("query", help="name the relationship between two persons")
    p.add_argument("--data", required=True, help="pedigree CSV")
    p.add_argument("p1", type=int)
    p.add_argument("p2", type=int)
    p.add_argument("--algorithm", choices=[a.value for a in Algorithm], default=Algorithm.PBBA.value)
    p.add_argument("--max-level", type=int, default=DEFAULT_L_MAX)
    p.add_argument("--stats", action="store_true", help="report nodes expanded")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("table1", help="analytic node counts per search level")
    p.add_argument("--max-level", type=int, default=10)
    p.add_argument("--offspring", type=int, default=complexity.DEFAULT_FANOUT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("bench", help="compare expansion counts of the three engines")
    p.add_argument("--data", help="pedigree CSV (otherwise generated from the flags below)")
    _add_generation_flags(p, required=False)
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--pair-seed", type=int, default=0)
    p.add_argument("--related-only", action="store_true")
    p.add_argument("--max-level", type=int, default=DEFAULT_L_MAX)
    p.add_argument("--timing", action="store_true", help="also report median wall-clock time")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="check search + naming against brute force on generated families")
    p.add_argument("--generations", type=int, default=7)
    p.add_argument("--offspring", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--families", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--pairs", type=int, default=5)
    p.add_argument("--seed", type=int, nargs="+", default=[42])
    p.add_argument("--max-level", type=int, default=DEFAULT_L_MAX)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
