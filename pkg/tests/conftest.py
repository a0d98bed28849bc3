import datetime as dt
import itertools

import pytest

from kinsearch.genfam import GenConfig, generate
from kinsearch.pedigree import Person, Sex, build_graph

_CRITERIA = {}


@pytest.fixture
def record_criterion():
    def record(number, name, passed, detail=""):
        _CRITERIA[number] = (name, passed, detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        name, passed, detail = _CRITERIA[number]
        line = f"[{'PASS' if passed else 'FAIL'}] {number}. {name}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


def person(pid, sex, father=None, mother=None, family=None, first=None, born=None):
    return Person(
        id=pid,
        first_name=first or f"P{pid}",
        last_name="Test",
        sex=Sex.MALE if sex == "M" else Sex.FEMALE,
        birth_date=born or dt.date(1900, 1, 1),
        father_id=father,
        mother_id=mother,
        family_check_id=family,
    )


def complete_ancestry(level):
    """Subjects A and B with full binary ancestry ``level`` deep.

    Their leftmost lines end in one shared founder couple; every other
    ancestor is distinct, so the first common ancestors sit at exactly
    ``level`` on both sides.
    """
    ids = itertools.count(1)
    shared = (next(ids), next(ids))
    persons = [person(shared[0], "M"), person(shared[1], "F")]

    def node(depth, sex, leftmost):
        pid = next(ids)
        if depth == level:
            persons.append(person(pid, sex))
            return pid
        if depth == level - 1 and leftmost:
            father, mother = shared
        else:
            father = node(depth + 1, "M", leftmost)
            mother = node(depth + 1, "F", False)
        persons.append(person(pid, sex, father, mother))
        return pid

    a = node(0, "M", True)
    b = node(0, "F", True)
    return build_graph(persons), a, b


@pytest.fixture
def three_generations():
    """Grandparents 1+2; children 3 (m), 4 (f, half-sib 6's mother is 5); grandchildren 7, 8, 9.

        1 x 2          5
       /     \\        |
      3 x 10  4 ------+ (4's husband 11)
      |       |
      7, 8    9
    6 is child of 1 and 5 (half-sibling of 3 and 4).
    """
    return build_graph(
        [
            person(1, "M", born=dt.date(1900, 1, 1)),
            person(2, "F", born=dt.date(1901, 1, 1)),
            person(3, "M", 1, 2, born=dt.date(1925, 1, 1)),
            person(4, "F", 1, 2, born=dt.date(1927, 1, 1)),
            person(5, "F", born=dt.date(1903, 1, 1)),
            person(6, "M", 1, 5, born=dt.date(1930, 1, 1)),
            person(10, "F", born=dt.date(1926, 1, 1)),
            person(11, "M", born=dt.date(1926, 1, 1)),
            person(7, "M", 3, 10, born=dt.date(1950, 1, 1)),
            person(8, "F", 3, 10, born=dt.date(1952, 1, 1)),
            person(9, "M", 11, 4, born=dt.date(1951, 1, 1)),
        ]
    )


@pytest.fixture(scope="session")
def small_family():
    return generate(GenConfig(generations=5, offspring=2, families=2, seed=11))
