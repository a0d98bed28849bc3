import datetime as dt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kinsearch.errors import (
    CycleDetected,
    DanglingParent,
    DuplicateId,
    GraphFinalized,
    ParentSexMismatch,
    ParseError,
    UnknownPerson,
)
from kinsearch.genfam import GenConfig, generate
from kinsearch.pedigree import CSV_COLUMNS, PedigreeBuilder, Person, Sex, build_graph, load_csv, save_csv

from conftest import person

HEADER = ",".join(CSV_COLUMNS) + "\n"


def test_add_single_person():
    builder = PedigreeBuilder()
    builder.add(person(1, "M"))
    assert len(builder.finalize()) == 1


def test_duplicate_id_rejected():
    builder = PedigreeBuilder([person(1, "M")])
    with pytest.raises(DuplicateId):
        builder.add(person(1, "F"))


def test_builder_frozen_after_finalize():
    builder = PedigreeBuilder([person(1, "M")])
    builder.finalize()
    with pytest.raises(GraphFinalized):
        builder.add(person(2, "M"))


def test_forward_parent_reference_resolves():
    graph = build_graph([person(3, "M", 1, 2), person(1, "M"), person(2, "F")])
    assert graph.parents_of(3) == (1, 2)
    assert graph.children_of(1) == (3,)


def test_father_must_be_male():
    with pytest.raises(ParentSexMismatch):
        build_graph([person(1, "F"), person(2, "M", father=1)])


def test_mother_must_be_female():
    with pytest.raises(ParentSexMismatch):
        build_graph([person(1, "M"), person(2, "M", mother=1)])


def test_two_cycle_detected():
    with pytest.raises(CycleDetected) as info:
        build_graph([person(1, "M", father=2), person(2, "M", father=1)])
    assert set(info.value.path) == {1, 2}


def test_dangling_parent():
    with pytest.raises(DanglingParent):
        build_graph([person(1, "M", father=99)])


@pytest.mark.parametrize("bad", [0, -3, True, "7"])
def test_person_id_must_be_positive_int(bad):
    with pytest.raises(ValueError):
        person(bad, "M")


def test_self_parent_rejected():
    with pytest.raises(ValueError):
        person(4, "M", father=4)


def test_queries(three_generations):
    g = three_generations
    assert g.parents_of(1) == (None, None)
    assert g.parents_of(7) == (3, 10)
    assert g.children_of(1) == (3, 4, 6)
    assert g.children_of(9) == ()
    with pytest.raises(UnknownPerson):
        g.parents_of(404)
    with pytest.raises(UnknownPerson):
        g.children_of(404)


def test_age():
    p = person(1, "M", born=dt.date(1950, 6, 15))
    assert p.age(dt.date(2000, 6, 14)) == 49
    assert p.age(dt.date(2000, 6, 15)) == 50


def test_generated_family_is_valid_and_indexed():
    graph, ledger = generate(GenConfig(7, 2, 1, seed=42))
    assert len(graph) == 254
    founder = ledger.founders[1][0]
    assert len(graph.children_of(founder)) == 2
    for (father, mother), kids in ledger.couples.items():
        for kid in kids:
            assert graph.parents_of(kid) == (father, mother)


def test_children_index_is_inverse_of_parent_links(small_family):
    graph, _ = small_family
    for p in graph:
        for c in graph.children_of(p.id):
            assert p.id in graph.parents_of(c)
        for parent in graph.parents_of(p.id):
            if parent is not None:
                assert p.id in graph.children_of(parent)


def test_csv_round_trip(tmp_path, small_family):
    graph, _ = small_family
    path = tmp_path / "f.csv"
    save_csv(graph, path)
    assert load_csv(path) == graph


def test_csv_header_only_is_empty_graph(tmp_path):
    path = tmp_path / "e.csv"
    path.write_text(HEADER)
    assert len(load_csv(path)) == 0


def test_csv_empty_parents_mean_unknown(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text(HEADER + "1,Ann,Lee,F,1950-01-02,,,\n")
    p = load_csv(path).person(1)
    assert (p.father_id, p.mother_id, p.family_check_id) == (None, None, None)


@pytest.mark.parametrize(
    "row, column",
    [
        ("1,Ann,Lee,X,1950-01-02,,,", "sex"),
        ("1,Ann,Lee,F,02/01/1950,,,", "birth_date"),
        ("1,Ann,Lee,F,1950-01-02,abc,,", "father_id"),
        ("0,Ann,Lee,F,1950-01-02,,,", "person_id"),
    ],
)
def test_csv_parse_errors(tmp_path, row, column):
    path = tmp_path / "bad.csv"
    path.write_text(HEADER + row + "\n")
    with pytest.raises(ParseError) as info:
        load_csv(path)
    assert info.value.line == 2
    assert info.value.column == column


def test_csv_wrong_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("id,name\n")
    with pytest.raises(ParseError):
        load_csv(path)


@settings(max_examples=25, deadline=None)
@given(
    st.integers(1, 5),
    st.integers(2, 4),
    st.integers(1, 2),
    st.integers(0, 2**64 - 1),
)
def test_csv_round_trip_any_config(tmp_path_factory, generations, offspring, families, seed):
    graph, _ = generate(GenConfig(generations, offspring, families, seed))
    path = tmp_path_factory.mktemp("rt") / "g.csv"
    save_csv(graph, path)
    assert load_csv(path) == graph


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_finalized_graphs_are_topologically_ordered(data):
    # random pedigrees built in birth order are always accepted
    n = data.draw(st.integers(1, 30))
    persons = []
    for pid in range(1, n + 1):
        males = [p.id for p in persons if p.sex is Sex.MALE]
        females = [p.id for p in persons if p.sex is Sex.FEMALE]
        father = data.draw(st.sampled_from([None] + males))
        mother = data.draw(st.sampled_from([None] + females))
        persons.append(person(pid, data.draw(st.sampled_from("MF")), father, mother))
    graph = build_graph(persons)
    order = {}
    remaining = set(graph.ids())
    while remaining:
        ready = [p for p in remaining if all(q is None or q in order for q in graph.parents_of(p))]
        assert ready
        for p in ready:
            order[p] = len(order)
            remaining.discard(p)
