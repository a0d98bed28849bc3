"""Consanguine-relationship search over a pedigree graph.

Three engines share one result type:

* :func:`pbba_search` - parent bidirectional breadth search. Both subjects
  climb parent links one level at a time; the first level at which a node
  has been reached from both sides yields the intersection (common
  ancestor).
* :func:`bidi_bfs_search` - bidirectional breadth-first search over parent
  and child links (baseline).
* :func:`plain_bfs_search` - single-source breadth-first search over parent
  and child links (baseline).

The baselines walk blood paths only: a path may climb parent links and then
descend child links, never descend and climb again. Without that rule a
husband and wife would be "connected" through their own child.

``nodes_expanded`` counts every neighbour generated while expanding a
frontier (one per parent or child link followed), which is the quantity the
closed-form models in :mod:`kinsearch.complexity` count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import NotRelatedWithinLimit, UnknownPerson
from .pedigree import PedigreeGraph

DEFAULT_L_MAX = 10


class Algorithm(str, enum.Enum):
    PBBA = "pbba"
    BIDIRECTIONAL_BFS = "bidi"
    PLAIN_BFS = "bfs"


@dataclass(frozen=True)
class SearchStats:
    algorithm: Algorithm
    nodes_expanded: int
    levels_used: int


@dataclass(frozen=True)
class Route:
    """Person ids from a subject up to the intersection, both ends included."""

    steps: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def start(self) -> int:
        return self.steps[0]

    @property
    def end(self) -> int:
        return self.steps[-1]

    @property
    def depth(self) -> int:
        return len(self.steps) - 1


@dataclass(frozen=True)
class SearchResult:
    p1: int
    p2: int
    related: bool
    intersections: tuple[int, ...]
    route_a: Route
    route_b: Route
    stats: SearchStats

    @property
    def intersection(self) -> Optional[int]:
        """Canonical intersection: the route apex (lowest id among the minimal ones)."""
        return self.route_a.end if self.related else None

    @property
    def d_a(self) -> int:
        return self.route_a.depth

    @property
    def d_b(self) -> int:
        return self.route_b.depth


def _unrelated(p1, p2, stats, strict):
    result = SearchResult(p1, p2, False, (), Route((p1,)), Route((p2,)), stats)
    if strict:
        raise NotRelatedWithinLimit(p1, p2, result)
    return result


def _check_args(graph: PedigreeGraph, p1, p2, limit, name="l_max"):
    for pid in (p1, p2):
        if pid not in graph:
            raise UnknownPerson(pid)
    if limit < 1:
        raise ValueError(f"{name} must be >= 1, got {limit}")


def _identity(p1, algorithm):
    return SearchResult(p1, p1, True, (p1,), Route((p1,)), Route((p1,)), SearchStats(algorithm, 0, 0))


# --------------------------------------------------------------------------
# PBBA


def _climb(graph, frontier, depth, pred, level):
    """Expand one level upward. Returns (next frontier, parents generated)."""
    father, mother = graph._father, graph._mother
    nxt = []
    generated = 0
    for node in frontier:
        for parent in (father[node], mother[node]):
            if parent is None:
                continue
            generated += 1
            if parent not in depth:
                depth[parent] = level
                pred[parent] = node
                nxt.append(parent)
    return nxt, generated


def _younger_first(graph, a, b) -> bool:
    """Whether ``a`` was born after ``b`` (ties keep the given order)."""
    return graph.person(a).birth_date > graph.person(b).birth_date


def _trace_up(pred, start, apex):
    path = [apex]
    while path[-1] != start:
        path.append(pred[path[-1]])
    path.reverse()
    return Route(tuple(path))


def pbba_search(
    graph: PedigreeGraph,
    p1: int,
    p2: int,
    l_max: int = DEFAULT_L_MAX,
    *,
    strict: bool = True,
) -> SearchResult:
    """Find the common ancestor linking ``p1`` and ``p2`` by climbing parents.

    Levels are expanded in lock-step. Within a level the younger subject's
    side climbs first (a descendant has to climb to reach an ancestor, the
    reverse never happens), and the search stops after the first side-level
    that produces a meeting. The side-level is always finished, so the
    statistics do not depend on the order in which parents are listed.
    Among the meeting nodes the ones with the smallest combined depth are
    returned.

    This is first-meeting semantics: with pedigree collapse (the same
    ancestor reachable along lines of different length) a common ancestor
    with a smaller combined depth but a deeper one-sided depth can exist
    beyond the meeting level. The baselines always return the global
    minimum.

    Raises :class:`NotRelatedWithinLimit` (or returns an unrelated result
    when ``strict`` is false) if no meeting happens within ``l_max`` levels.
    """
    _check_args(graph, p1, p2, l_max)
    if p1 == p2:
        return _identity(p1, Algorithm.PBBA)

    depth_a, depth_b = {p1: 0}, {p2: 0}
    pred_a: dict[int, int] = {}
    pred_b: dict[int, int] = {}
    sides = [([p1], depth_a, pred_a, depth_b), ([p2], depth_b, pred_b, depth_a)]
    if _younger_first(graph, p2, p1):
        sides.reverse()
    expanded = 0
    level = 0
    meets: set[int] = set()
    while not meets and level < l_max and (sides[0][0] or sides[1][0]):
        level += 1
        for side in sides:
            frontier, depth, pred, other = side
            frontier[:], n = _climb(graph, frontier, depth, pred, level)
            expanded += n
            meets = {x for x in frontier if x in other}
            if meets:
                break

    stats = SearchStats(Algorithm.PBBA, expanded, level)
    if not meets:
        return _unrelated(p1, p2, stats, strict)
    best = min(depth_a[x] + depth_b[x] for x in meets)
    intersections = tuple(sorted(x for x in meets if depth_a[x] + depth_b[x] == best))
    apex = intersections[0]
    return SearchResult(
        p1, p2, True, intersections, _trace_up(pred_a, p1, apex), _trace_up(pred_b, p2, apex), stats
    )


# --------------------------------------------------------------------------
# Blood-path breadth-first baselines
#
# A search state is (person, descending). While climbing (descending=False)
# both parents and children may be followed; once a child link has been
# taken only further child links are allowed.


class _BloodPathFrontier:
    """Level-by-level BFS over blood-path states from one subject.

    Keeps every shortest-path predecessor so all apexes of all shortest
    paths can be recovered.
    """

    def __init__(self, graph: PedigreeGraph, start: int):
        self.graph = graph
        self.start = start
        root = (start, False)
        self.dist: dict[tuple[int, bool], int] = {root: 0}
        self.preds: dict[tuple[int, bool], list[tuple[int, bool]]] = {root: []}
        self.frontier = [root]
        self.level = 0
        self.generated = 0
        self._apex_cache: dict[tuple[int, bool], frozenset] = {}

    @property
    def exhausted(self) -> bool:
        return not self.frontier

    def step(self) -> list[tuple[int, bool]]:
        g = self.graph
        father, mother, children = g._father, g._mother, g._children
        dist, preds = self.dist, self.preds
        self.level += 1
        level = self.level
        nxt = []
        generated = 0
        for state in self.frontier:
            node, descending = state
            successors = [(c, True) for c in children[node]]
            if not descending:
                successors[:0] = [(p, False) for p in (father[node], mother[node]) if p is not None]
            for succ in successors:
                generated += 1
                seen = dist.get(succ)
                if seen is None:
                    dist[succ] = level
                    preds[succ] = [state]
                    nxt.append(succ)
                elif seen == level:
                    preds[succ].append(state)
        self.generated += generated
        self.frontier = nxt
        return nxt

    def states_of(self, node: int):
        for descending in (False, True):
            state = (node, descending)
            if state in self.dist:
                yield state

    def apexes(self, state) -> frozenset:
        """{(apex, climb)} over shortest paths from the start to a descending state."""
        cached = self._apex_cache.get(state)
        if cached is not None:
            return cached
        out = set()
        for pred in self.preds[state]:
            if pred[1]:
                out |= self.apexes(pred)
            else:
                out.add((pred[0], self.dist[pred]))
        result = frozenset(out)
        self._apex_cache[state] = result
        return result

    def climb_route(self, node: int) -> list[int]:
        """Start ... node along climbing states."""
        path = [node]
        state = (node, False)
        while state[0] != self.start or state[1]:
            state = self.preds[state][0]
            path.append(state[0])
        path.reverse()
        return path

    def descent_from(self, state, apex: int) -> list[int]:
        """apex ... state's node along a shortest path whose turning point is ``apex``."""
        path = [state[0]]
        while state[1]:
            options = self.preds[state]
            nxt = None
            for pred in options:
                if (not pred[1] and pred[0] == apex) or (pred[1] and any(a == apex for a, _ in self.apexes(pred))):
                    nxt = pred
                    break
            state = nxt
            path.append(state[0])
        path.reverse()
        return path


def _meetings(side_a: _BloodPathFrontier, side_b: _BloodPathFrontier, candidates):
    """Joined blood paths through each candidate node: (total, apex, d_a, route_a, route_b) thunks."""
    found = []
    for node in candidates:
        for sa in side_a.states_of(node):
            for sb in side_b.states_of(node):
                if sa[1] and sb[1]:
                    continue
                found.append((side_a.dist[sa] + side_b.dist[sb], sa, sb))
    return found


def _resolve(side_a, side_b, meetings, algorithm, levels, strict, p1, p2):
    stats = SearchStats(algorithm, side_a.generated + side_b.generated, levels)
    if not meetings:
        return _unrelated(p1, p2, stats, strict)
    best = min(m[0] for m in meetings)
    # apex -> (d_a, meeting) keeping the first seen in deterministic order
    apexes: dict[int, tuple[int, tuple, tuple, str]] = {}
    for total, sa, sb in sorted(m for m in meetings if m[0] == best):
        da, db = side_a.dist[sa], side_b.dist[sb]
        if not sa[1] and not sb[1]:
            apexes.setdefault(sa[0], (da, sa, sb, "both"))
        elif sb[1]:
            for apex, climb in sorted(side_b.apexes(sb)):
                apexes.setdefault(apex, (da + db - climb, sa, sb, "b"))
        else:
            for apex, climb in sorted(side_a.apexes(sa)):
                apexes.setdefault(apex, (climb, sa, sb, "a"))

    intersections = tuple(sorted(apexes))
    apex = intersections[0]
    _, sa, sb, where = apexes[apex]
    node = sa[0]
    if where == "both":
        route_a = side_a.climb_route(node)
        route_b = side_b.climb_route(node)
    elif where == "b":
        # a climbs to the meeting node, then up b's descent to the apex
        route_b = side_b.climb_route(apex)
        route_a = side_a.climb_route(node) + side_b.descent_from(sb, apex)[::-1][1:]
    else:
        route_a = side_a.climb_route(apex)
        route_b = side_b.climb_route(node) + side_a.descent_from(sa, apex)[::-1][1:]
    return SearchResult(p1, p2, True, intersections, Route(tuple(route_a)), Route(tuple(route_b)), stats)


def bidi_bfs_search(
    graph: PedigreeGraph,
    p1: int,
    p2: int,
    l_max: int = DEFAULT_L_MAX,
    *,
    strict: bool = True,
) -> SearchResult:
    """Bidirectional BFS over parent and child links (baseline).

    The two sides alternate one level at a time, each side at most ``l_max``
    levels deep. The side-level in which they first meet is finished, and
    every shortest blood path found is turned into its apex ancestor.
    """
    _check_args(graph, p1, p2, l_max)
    if p1 == p2:
        return _identity(p1, Algorithm.BIDIRECTIONAL_BFS)
    side_a = _BloodPathFrontier(graph, p1)
    side_b = _BloodPathFrontier(graph, p2)
    meetings = []
    while not meetings:
        if side_a.exhausted or side_b.exhausted:
            break
        if side_a.level <= side_b.level:
            if side_a.level >= l_max:
                break
            new = side_a.step()
        else:
            new = side_b.step()
        meetings = _meetings(side_a, side_b, {s[0] for s in new})
    levels = max(side_a.level, side_b.level)
    return _resolve(side_a, side_b, meetings, Algorithm.BIDIRECTIONAL_BFS, levels, strict, p1, p2)


def plain_bfs_search(
    graph: PedigreeGraph,
    p1: int,
    p2: int,
    depth_limit: int = 2 * DEFAULT_L_MAX,
    *,
    strict: bool = True,
) -> SearchResult:
    """Single-source BFS from ``p1`` over parent and child links (baseline).

    The level in which ``p2`` is first reached is finished before stopping.
    """
    _check_args(graph, p1, p2, depth_limit, "depth_limit")
    if p1 == p2:
        return _identity(p1, Algorithm.PLAIN_BFS)
    side_a = _BloodPathFrontier(graph, p1)
    target = _BloodPathFrontier(graph, p2)
    meetings = []
    while not meetings and not side_a.exhausted and side_a.level < depth_limit:
        new = side_a.step()
        if any(s[0] == p2 for s in new):
            meetings = _meetings(side_a, target, [p2])
    return _resolve(side_a, target, meetings, Algorithm.PLAIN_BFS, side_a.level, strict, p1, p2)


SEARCHES = {
    Algorithm.PBBA: pbba_search,
    Algorithm.BIDIRECTIONAL_BFS: bidi_bfs_search,
    Algorithm.PLAIN_BFS: plain_bfs_search,
}


def run_search(graph, p1, p2, algorithm=Algorithm.PBBA, l_max=DEFAULT_L_MAX, *, strict=True):
    """Dispatch by algorithm; plain BFS gets a depth limit of ``2 * l_max``."""
    algorithm = Algorithm(algorithm)
    limit = 2 * l_max if algorithm is Algorithm.PLAIN_BFS else l_max
    return SEARCHES[algorithm](graph, p1, p2, limit, strict=strict)


def lca_oracle(graph: PedigreeGraph, p1: int, p2: int) -> tuple[list[int], Optional[int], Optional[int]]:
    """Brute-force common-ancestor finder used to check the searches.

    Walks each person's entire ancestry, intersects the two depth maps and
    returns every common ancestor with minimal combined depth, plus the
    depths of the lowest-id one. Unrelated pairs give ``([], None, None)``.
    """
    graph.require(p1, p2)

    def ancestry(person):
        depths = {person: 0}
        todo = [person]
        while todo:
            later = []
            for child in todo:
                for parent in graph.parents_of(child):
                    if parent is not None and parent not in depths:
                        depths[parent] = depths[child] + 1
                        later.append(parent)
            todo = later
        return depths

    up_a, up_b = ancestry(p1), ancestry(p2)
    common = [x for x in up_a if x in up_b]
    if not common:
        return [], None, None
    best = min(up_a[x] + up_b[x] for x in common)
    winners = sorted(x for x in common if up_a[x] + up_b[x] == best)
    return winners, up_a[winners[0]], up_b[winners[0]]
