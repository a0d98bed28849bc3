"""Pedigree data model: persons, the parent->child network, CSV persistence.

A pedigree is assembled with :class:`PedigreeBuilder` and frozen into an
immutable :class:`PedigreeGraph` by :meth:`PedigreeBuilder.finalize`, which
is where the structural invariants (resolvable parents, parent sexes,
acyclic ancestry) are checked.
"""

from __future__ import annotations

import csv
import datetime as dt
import enum
import graphlib
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from .errors import (
    CycleDetected,
    DanglingParent,
    DuplicateId,
    GraphFinalized,
    ParentSexMismatch,
    ParseError,
    UnknownPerson,
)

CSV_COLUMNS = (
    "person_id",
    "first_name",
    "last_name",
    "sex",
    "birth_date",
    "father_id",
    "mother_id",
    "family_check_id",
)


class Sex(str, enum.Enum):
    MALE = "M"
    FEMALE = "F"

    @classmethod
    def parse(cls, text: str) -> "Sex":
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"sex must be 'M' or 'F', got {text!r}") from None


def _check_id(value, what: str) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"{what} must be a positive integer, got {value!r}")


@dataclass(frozen=True, slots=True)
class Person:
    id: int
    first_name: str
    last_name: str
    sex: Sex
    birth_date: dt.date
    father_id: Optional[int] = None
    mother_id: Optional[int] = None
    family_check_id: Optional[int] = None

    def __post_init__(self):
        _check_id(self.id, "person id")
        if not isinstance(self.sex, Sex):
            raise ValueError(f"sex must be a Sex, got {self.sex!r}")
        for role in ("father_id", "mother_id"):
            parent = getattr(self, role)
            if parent is None:
                continue
            _check_id(parent, role)
            if parent == self.id:
                raise ValueError(f"person {self.id} cannot be their own parent")
        if self.family_check_id is not None:
            _check_id(self.family_check_id, "family_check_id")

    @property
    def full_name(self) -> str:
        return f"{self.first_name} {self.last_name}".strip()

    def age(self, on: dt.date) -> int:
        """Completed years of age on the given reference date."""
        years = on.year - self.birth_date.year
        if (on.month, on.day) < (self.birth_date.month, self.birth_date.day):
            years -= 1
        return years


class PedigreeGraph:
    """Immutable, indexed collection of persons with parent/child adjacency.

    Use :class:`PedigreeBuilder` or :func:`build_graph` to create one.
    Search code only touches the parent and child indexes; the
    ``family_check_id`` ground-truth label stays on the person records.
    """

    __slots__ = ("_persons", "_father", "_mother", "_children")

    def __init__(self, persons: dict[int, Person], children: dict[int, tuple[int, ...]]):
        self._persons = persons
        self._father = {pid: p.father_id for pid, p in persons.items()}
        self._mother = {pid: p.mother_id for pid, p in persons.items()}
        self._children = children

    @property
    def persons(self) -> Mapping[int, Person]:
        return MappingProxyType(self._persons)

    def __len__(self) -> int:
        return len(self._persons)

    def __contains__(self, person_id) -> bool:
        return person_id in self._persons

    def __iter__(self) -> Iterator[Person]:
        return iter(self._persons.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PedigreeGraph):
            return NotImplemented
        return list(self._persons.items()) == list(other._persons.items())

    def __repr__(self) -> str:
        return f"PedigreeGraph({len(self)} persons)"

    def ids(self) -> list[int]:
        return list(self._persons)

    def person(self, person_id: int) -> Person:
        try:
            return self._persons[person_id]
        except KeyError:
            raise UnknownPerson(person_id) from None

    def require(self, *person_ids: int) -> None:
        for pid in person_ids:
            if pid not in self._persons:
                raise UnknownPerson(pid)

    def parents_of(self, person_id: int) -> tuple[Optional[int], Optional[int]]:
        """(father_id, mother_id) as recorded; ``None`` marks an unknown parent."""
        if person_id not in self._persons:
            raise UnknownPerson(person_id)
        return self._father[person_id], self._mother[person_id]

    def children_of(self, person_id: int) -> tuple[int, ...]:
        """Children in insertion order."""
        if person_id not in self._persons:
            raise UnknownPerson(person_id)
        return self._children[person_id]


class PedigreeBuilder:
    """Mutable staging area; parent references may point forward until finalize."""

    def __init__(self, persons: Iterable[Person] = ()):
        self._persons: dict[int, Person] = {}
        self._finalized = False
        for person in persons:
            self.add(person)

    def __len__(self) -> int:
        return len(self._persons)

    def add(self, person: Person) -> None:
        if self._finalized:
            raise GraphFinalized("builder already finalized")
        if person.id in self._persons:
            raise DuplicateId(person.id)
        self._persons[person.id] = person

    def finalize(self) -> PedigreeGraph:
        persons = self._persons
        children: dict[int, list[int]] = {pid: [] for pid in persons}
        for pid, person in persons.items():
            for role, parent_id, sex in (
                ("father", person.father_id, Sex.MALE),
                ("mother", person.mother_id, Sex.FEMALE),
            ):
                if parent_id is None:
                    continue
                parent = persons.get(parent_id)
                if parent is None:
                    raise DanglingParent(pid, parent_id)
                if parent.sex is not sex:
                    raise ParentSexMismatch(pid, parent_id, role)
                children[parent_id].append(pid)

        sorter = graphlib.TopologicalSorter(
            {pid: [q for q in (p.father_id, p.mother_id) if q is not None] for pid, p in persons.items()}
        )
        try:
            sorter.prepare()
        except graphlib.CycleError as exc:
            raise CycleDetected(exc.args[1]) from None

        self._finalized = True
        return PedigreeGraph(dict(persons), {pid: tuple(c) for pid, c in children.items()})


def build_graph(persons: Iterable[Person]) -> PedigreeGraph:
    return PedigreeBuilder(persons).finalize()


def _optional_id(text: str, line: int, column: str) -> Optional[int]:
    if text == "":
        return None
    try:
        value = int(text)
    except ValueError:
        raise ParseError(line, column, f"not an integer: {text!r}") from None
    if value < 1:
        raise ParseError(line, column, f"ids must be >= 1, got {value}")
    return value


def _parse_row(row: dict, line: int) -> Person:
    person_id = _optional_id(row["person_id"], line, "person_id")
    if person_id is None:
        raise ParseError(line, "person_id", "missing person id")
    try:
        sex = Sex.parse(row["sex"])
    except ValueError as exc:
        raise ParseError(line, "sex", str(exc)) from None
    try:
        birth = dt.date.fromisoformat(row["birth_date"])
    except ValueError:
        raise ParseError(line, "birth_date", f"not an ISO date: {row['birth_date']!r}") from None
    try:
        return Person(
            id=person_id,
            first_name=row["first_name"],
            last_name=row["last_name"],
            sex=sex,
            birth_date=birth,
            father_id=_optional_id(row["father_id"], line, "father_id"),
            mother_id=_optional_id(row["mother_id"], line, "mother_id"),
            family_check_id=_optional_id(row["family_check_id"], line, "family_check_id"),
        )
    except ValueError as exc:
        raise ParseError(line, "person_id", str(exc)) from None


def load_csv(path) -> PedigreeGraph:
    """Read a pedigree CSV (see ``CSV_COLUMNS``) and finalize it."""
    builder = PedigreeBuilder()
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError(1, "", "missing header")
        if tuple(header) != CSV_COLUMNS:
            raise ParseError(1, "", f"expected header {','.join(CSV_COLUMNS)}")
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) != len(CSV_COLUMNS):
                raise ParseError(line, "", f"expected {len(CSV_COLUMNS)} fields, got {len(row)}")
            person = _parse_row(dict(zip(CSV_COLUMNS, row)), line)
            try:
                builder.add(person)
            except DuplicateId:
                raise ParseError(line, "person_id", f"duplicate id {person.id}") from None
    return builder.finalize()


def _field(value) -> str:
    return "" if value is None else str(value)


def save_csv(graph: PedigreeGraph, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for p in graph:
            writer.writerow(
                (
                    p.id,
                    p.first_name,
                    p.last_name,
                    p.sex.value,
                    p.birth_date.isoformat(),
                    _field(p.father_id),
                    _field(p.mother_id),
                    _field(p.family_check_id),
                )
            )
