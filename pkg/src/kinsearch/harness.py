"""Correctness and benchmark harnesses behind the ``verify`` and ``bench`` commands."""

from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

from .errors import InsufficientPopulation, NotRelatedWithinLimit
from .genfam import GenConfig, generate, sample_pairs
from .kinship import KinshipInput, classify, kinship_input, rule_table, shared_parent_count
from .pedigree import PedigreeGraph
from .search import DEFAULT_L_MAX, Algorithm, SearchResult, lca_oracle, pbba_search, run_search

TABLE2_GENERATIONS = 7
TABLE2_OFFSPRING = (2, 3, 4, 5)
TABLE2_FAMILIES = (1, 2, 3)
TABLE2_PAIRS = 5


@dataclass
class Failure:
    pair: tuple[int, int]
    expected: str
    got: str


@dataclass
class VerifyReport:
    generations: int
    offspring: int
    families: int
    seed: int
    persons: int
    pairs_tested: int = 0
    correct: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def correctness_pct(self) -> float:
        return 100.0 * self.correct / self.pairs_tested if self.pairs_tested else 100.0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["correctness_pct"] = self.correctness_pct
        return out


def replay_route(graph: PedigreeGraph, route, start: int, apex: int) -> bool:
    """True when the route climbs real parent links from ``start`` to ``apex``."""
    steps = list(route)
    if not steps or steps[0] != start or steps[-1] != apex:
        return False
    return all(parent in graph.parents_of(child) for child, parent in zip(steps, steps[1:]))


def _describe_expected(graph, p1, p2, table):
    winners, d_a, d_b = lca_oracle(graph, p1, p2)
    if not winners:
        return None, "unrelated"
    a, b = graph.person(p1), graph.person(p2)
    shared = 1 if (d_a, d_b) == (1, 1) and shared_parent_count(graph, p1, p2) == 1 else 2
    query = KinshipInput(d_a, d_b, a.sex, b.sex, shared)
    term = table.get(query) or classify(query)
    return (winners, d_a, d_b, term), f"{term.term_for_a} via {winners} at ({d_a},{d_b})"


def check_pair(graph, p1, p2, search=pbba_search, l_max=DEFAULT_L_MAX, table=None) -> Optional[Failure]:
    """Run one search and apply both correctness checks. ``None`` means correct."""
    table = table if table is not None else rule_table()
    expected, expected_text = _describe_expected(graph, p1, p2, table)
    try:
        result: SearchResult = search(graph, p1, p2, l_max)
    except NotRelatedWithinLimit:
        if expected is None:
            return None
        # claimed unrelated: differing family labels would have confirmed it
        fam_a = graph.person(p1).family_check_id
        fam_b = graph.person(p2).family_check_id
        note = "different family labels" if fam_a != fam_b else "same family label"
        return Failure((p1, p2), expected_text, f"unrelated ({note})")

    if expected is None:
        return Failure((p1, p2), expected_text, f"related via {list(result.intersections)}")
    winners, d_a, d_b, term = expected
    apex = result.intersection
    if not (replay_route(graph, result.route_a, p1, apex) and replay_route(graph, result.route_b, p2, apex)):
        return Failure((p1, p2), expected_text, f"broken route {result.route_a.steps} / {result.route_b.steps}")
    got = classify(kinship_input(result, graph))
    got_text = f"{got.term_for_a} via {list(result.intersections)} at ({result.d_a},{result.d_b})"
    if list(result.intersections) != winners or (result.d_a, result.d_b) != (d_a, d_b) or got != term:
        return Failure((p1, p2), expected_text, got_text)
    return None


def verify_cell(config: GenConfig, pairs: int = TABLE2_PAIRS, search=pbba_search, l_max=DEFAULT_L_MAX) -> VerifyReport:
    graph, _ = generate(config)
    report = VerifyReport(config.generations, config.offspring, config.families, config.seed, len(graph))
    table = rule_table()
    pair_seed = config.seed * 1_000_003 + config.offspring * 101 + config.families
    for p1, p2 in sample_pairs(graph, pairs, pair_seed):
        failure = check_pair(graph, p1, p2, search, l_max, table)
        report.pairs_tested += 1
        if failure is None:
            report.correct += 1
        else:
            report.failures.append(failure)
    return report


def verify_grid(
    seed: int = 42,
    generations: int = TABLE2_GENERATIONS,
    offspring: Sequence[int] = TABLE2_OFFSPRING,
    families: Sequence[int] = TABLE2_FAMILIES,
    pairs: int = TABLE2_PAIRS,
    search: Callable = pbba_search,
    l_max: int = DEFAULT_L_MAX,
) -> list[VerifyReport]:
    return [
        verify_cell(GenConfig(generations, v, f, seed), pairs, search, l_max)
        for v in offspring
        for f in families
    ]


@dataclass
class BenchReport:
    pairs: int
    related_pairs: int
    mean_nodes: dict[str, float]
    max_nodes: dict[str, int]
    median_seconds: dict[str, float]
    ordering_violations: list[dict]

    def to_dict(self) -> dict:
        return asdict(self)


ORDER = (Algorithm.PBBA, Algorithm.BIDIRECTIONAL_BFS, Algorithm.PLAIN_BFS)


def _timed(graph, p1, p2, algorithm, l_max):
    started = time.perf_counter()
    result = run_search(graph, p1, p2, algorithm, l_max, strict=False)
    return result, time.perf_counter() - started


def bench(
    graph: PedigreeGraph,
    pair_list: Sequence[tuple[int, int]],
    l_max: int = DEFAULT_L_MAX,
    timing: bool = False,
) -> BenchReport:
    """Run all three engines on each pair and compare expansion counts.

    The ordering PBBA <= bidirectional <= plain BFS is checked on pairs the
    engines find related; for unrelated pairs the engines stop for different
    reasons (PBBA climbs until both ancestries are exhausted, the baselines
    stop as soon as one side runs dry) so their counts are not comparable.
    """
    if len(graph) < 2:
        raise InsufficientPopulation(f"need at least 2 persons, graph has {len(graph)}")
    counts = {alg: [] for alg in ORDER}
    seconds = {alg: [] for alg in ORDER}
    violations = []
    related = 0
    for p1, p2 in pair_list:
        results = {}
        for alg in ORDER:
            result, elapsed = _timed(graph, p1, p2, alg, l_max)
            results[alg] = result
            counts[alg].append(result.stats.nodes_expanded)
            seconds[alg].append(elapsed)
        if all(r.related for r in results.values()):
            related += 1
            n = [results[alg].stats.nodes_expanded for alg in ORDER]
            if not n[0] <= n[1] <= n[2]:
                violations.append({"pair": [p1, p2], **{alg.value: c for alg, c in zip(ORDER, n)}})
    return BenchReport(
        pairs=len(pair_list),
        related_pairs=related,
        mean_nodes={alg.value: statistics.fmean(c) if c else 0.0 for alg, c in counts.items()},
        max_nodes={alg.value: max(c, default=0) for alg, c in counts.items()},
        median_seconds={
            alg.value: (statistics.median(s) if s and timing else 0.0) for alg, s in seconds.items()
        },
        ordering_violations=violations,
    )
