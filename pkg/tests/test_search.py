import datetime as dt
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kinsearch.complexity import pbba_count
from kinsearch.errors import NotRelatedWithinLimit, UnknownPerson
from kinsearch.genfam import GenConfig, generate
from kinsearch.pedigree import Sex, build_graph
from kinsearch.search import (
    Algorithm,
    bidi_bfs_search,
    lca_oracle,
    pbba_search,
    plain_bfs_search,
    run_search,
)

from conftest import complete_ancestry, person

ENGINES = [pbba_search, bidi_bfs_search, plain_bfs_search]


def replays(graph, route):
    return all(parent in graph.parents_of(child) for child, parent in zip(route.steps, route.steps[1:]))


@pytest.mark.parametrize("engine", ENGINES)
def test_same_person(three_generations, engine):
    r = engine(three_generations, 7, 7)
    assert r.related and r.intersections == (7,)
    assert len(r.route_a) == len(r.route_b) == 1
    assert r.stats.nodes_expanded == 0


@pytest.mark.parametrize("engine", ENGINES)
def test_father_child(three_generations, engine):
    r = engine(three_generations, 3, 7)
    assert r.intersections == (3,)
    assert (r.d_a, r.d_b) == (0, 1)


@pytest.mark.parametrize("engine", ENGINES)
def test_full_siblings_share_both_parents(three_generations, engine):
    r = engine(three_generations, 7, 8)
    assert r.intersections == (3, 10)
    assert (r.d_a, r.d_b) == (1, 1)
    assert r.route_a.end == r.route_b.end == 3


@pytest.mark.parametrize("engine", ENGINES)
def test_half_siblings_share_one_parent(three_generations, engine):
    r = engine(three_generations, 3, 6)
    assert r.intersections == (1,)


@pytest.mark.parametrize("engine", ENGINES)
def test_first_cousins(three_generations, engine):
    r = engine(three_generations, 7, 9)
    assert r.intersections == (1, 2)
    assert (r.d_a, r.d_b) == (2, 2)
    assert r.route_a.steps == (7, 3, 1)
    assert r.route_b.steps == (9, 4, 1)


@pytest.mark.parametrize("engine", ENGINES)
def test_spouses_are_not_blood_relatives(three_generations, engine):
    # 3 and 10 share children but no ancestor
    with pytest.raises(NotRelatedWithinLimit) as info:
        engine(three_generations, 3, 10)
    assert info.value.result.related is False
    r = engine(three_generations, 3, 10, strict=False)
    assert not r.related and r.intersections == ()


@pytest.mark.parametrize("engine", ENGINES)
def test_unknown_person(three_generations, engine):
    with pytest.raises(UnknownPerson):
        engine(three_generations, 7, 99)


def test_bad_limit(three_generations):
    with pytest.raises(ValueError):
        pbba_search(three_generations, 7, 8, 0)


def test_limit_cuts_search(three_generations):
    with pytest.raises(NotRelatedWithinLimit):
        pbba_search(three_generations, 7, 9, l_max=1)
    assert pbba_search(three_generations, 7, 9, l_max=2).related


def test_pbba_counts_parents_generated(three_generations):
    # siblings 7 and 8: each side generates its two parents
    r = pbba_search(three_generations, 7, 8)
    assert r.stats.nodes_expanded == 4
    assert r.stats.levels_used == 1
    assert r.stats.algorithm is Algorithm.PBBA


def test_run_search_dispatch(three_generations):
    for alg in Algorithm:
        assert run_search(three_generations, 7, 9, alg).stats.algorithm is alg


@pytest.mark.parametrize("level", range(1, 7))
def test_frontier_size_law(level):
    graph, a, b = complete_ancestry(level)
    r = pbba_search(graph, a, b)
    assert r.stats.nodes_expanded == pbba_count(level) == 2 ** (level + 2) - 4
    assert (r.d_a, r.d_b) == (level, level)


def test_pbba_first_meeting_under_pedigree_collapse():
    # 4 descends from 1 by three steps, and both share grandfather 10 two steps up.
    # PBBA meets at 10 on level 2 before 4 climbs to 1 on level 3.
    graph = build_graph(
        [
            person(10, "M"),
            person(11, "F"),
            person(12, "M", 10, 11, born=dt.date(1930, 1, 1)),
            person(1, "M", 12, None, born=dt.date(1950, 1, 1)),
            person(2, "M", 1, None, born=dt.date(1975, 1, 1)),
            person(3, "M", 2, None, born=dt.date(2000, 1, 1)),
            person(13, "F", 10, 11, born=dt.date(1980, 1, 1)),
            person(4, "F", 3, 13, born=dt.date(2020, 1, 1)),
        ]
    )
    winners, d_a, d_b = lca_oracle(graph, 1, 4)
    assert (winners, d_a, d_b) == ([1], 0, 3)
    r = pbba_search(graph, 1, 4)
    assert (r.d_a, r.d_b) == (2, 2)
    assert set(r.intersections) <= {10, 11}
    for engine in (bidi_bfs_search, plain_bfs_search):
        r = engine(graph, 1, 4)
        assert r.intersections == (1,) and (r.d_a, r.d_b) == (0, 3)


def test_oracle_cases(three_generations):
    assert lca_oracle(three_generations, 7, 7) == ([7], 0, 0)
    assert lca_oracle(three_generations, 7, 9) == ([1, 2], 2, 2)
    assert lca_oracle(three_generations, 3, 10) == ([], None, None)


def test_cross_family_pairs_unrelated(small_family):
    graph, ledger = small_family
    a, b = ledger.founders[1][0], ledger.founders[2][0]
    kid_a = graph.children_of(a)[0]
    kid_b = graph.children_of(b)[0]
    assert lca_oracle(graph, kid_a, kid_b)[0] == []
    for engine in ENGINES:
        with pytest.raises(NotRelatedWithinLimit):
            engine(graph, kid_a, kid_b)


def test_generated_siblings_share_parent_couple(small_family):
    graph, ledger = small_family
    (father, mother), kids = next(iter(ledger.couples.items()))
    for engine in ENGINES:
        r = engine(graph, kids[0], kids[1])
        assert r.intersections == tuple(sorted((father, mother)))
        assert (r.d_a, r.d_b) == (1, 1)


def test_first_cousins_in_generated_family(small_family):
    graph, ledger = small_family
    founders = ledger.founders[1]
    c1, c2 = ledger.couples[founders]
    kid1 = next(k for k in ledger.couples if c1 in k)
    kid2 = next(k for k in ledger.couples if c2 in k)
    g1, g2 = ledger.couples[kid1][0], ledger.couples[kid2][0]
    assert lca_oracle(graph, g1, g2) == (sorted(founders), 2, 2)


def test_engines_agree_with_oracle_on_every_pair():
    graph, _ = generate(GenConfig(4, 2, 2, seed=3))
    ids = graph.ids()
    for p1, p2 in itertools.product(ids, ids):
        winners, d_a, d_b = lca_oracle(graph, p1, p2)
        results = [engine(graph, p1, p2, strict=False) for engine in ENGINES]
        for r in results:
            assert r.related == bool(winners)
            assert list(r.intersections) == winners
            if winners:
                assert (r.d_a, r.d_b) == (d_a, d_b)
                assert r.route_a.start == p1 and r.route_b.start == p2
                assert r.route_a.end == r.route_b.end
                assert replays(graph, r.route_a) and replays(graph, r.route_b)
        n = [r.stats.nodes_expanded for r in results]
        if winners:
            assert n[0] <= n[1] <= n[2], (p1, p2, n)


def test_search_is_deterministic(small_family):
    graph, _ = small_family
    ids = graph.ids()
    for p1, p2 in zip(ids[::7], ids[3::11]):
        for engine in ENGINES:
            assert engine(graph, p1, p2, strict=False) == engine(graph, p1, p2, strict=False)


@st.composite
def pedigrees(draw, max_size=25):
    n = draw(st.integers(2, max_size))
    persons = []
    for pid in range(1, n + 1):
        males = [p.id for p in persons if p.sex is Sex.MALE]
        females = [p.id for p in persons if p.sex is Sex.FEMALE]
        father = draw(st.sampled_from([None] + males))
        mother = draw(st.sampled_from([None] + females))
        persons.append(person(pid, draw(st.sampled_from("MF")), father, mother, born=dt.date(1800 + pid, 1, 1)))
    graph = build_graph(persons)
    p1 = draw(st.integers(1, n))
    p2 = draw(st.integers(1, n))
    return graph, p1, p2


@settings(max_examples=300, deadline=None)
@given(pedigrees())
def test_baselines_match_oracle_on_arbitrary_pedigrees(case):
    graph, p1, p2 = case
    winners, d_a, d_b = lca_oracle(graph, p1, p2)
    for engine in (bidi_bfs_search, plain_bfs_search):
        r = engine(graph, p1, p2, 30, strict=False)
        assert list(r.intersections) == winners
        if winners:
            assert (r.d_a, r.d_b) == (d_a, d_b)
            assert replays(graph, r.route_a) and replays(graph, r.route_b)
            assert r.route_a.end == r.route_b.end


@settings(max_examples=300, deadline=None)
@given(pedigrees())
def test_pbba_sound_on_arbitrary_pedigrees(case):
    graph, p1, p2 = case
    winners, d_a, d_b = lca_oracle(graph, p1, p2)
    r = pbba_search(graph, p1, p2, 30, strict=False)
    assert r.related == bool(winners)
    if winners:
        assert r.d_a + r.d_b >= d_a + d_b
        assert replays(graph, r.route_a) and replays(graph, r.route_b)
        assert r.route_a.end == r.route_b.end == r.intersections[0]
        assert list(r.intersections) == sorted(r.intersections)
