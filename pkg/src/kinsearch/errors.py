"""Exception hierarchy shared by every kinsearch module."""

from __future__ import annotations


class KinsearchError(Exception):
    """Base class for all errors raised by this package."""


class PedigreeError(KinsearchError):
    pass


class DuplicateId(PedigreeError):
    def __init__(self, person_id: int):
        super().__init__(f"person id {person_id} already present")
        self.person_id = person_id


class DanglingParent(PedigreeError):
    def __init__(self, person_id: int, parent_id: int):
        super().__init__(f"person {person_id} references missing parent {parent_id}")
        self.person_id = person_id
        self.parent_id = parent_id


class ParentSexMismatch(PedigreeError):
    def __init__(self, person_id: int, parent_id: int, role: str):
        super().__init__(f"person {person_id}: {role} {parent_id} has the wrong sex")
        self.person_id = person_id
        self.parent_id = parent_id
        self.role = role


class CycleDetected(PedigreeError):
    def __init__(self, path):
        self.path = list(path)
        super().__init__("ancestry cycle: " + " -> ".join(map(str, self.path)))


class GraphFinalized(PedigreeError):
    pass


class UnknownPerson(PedigreeError, KeyError):
    def __init__(self, person_id):
        super().__init__(person_id)
        self.person_id = person_id

    def __str__(self) -> str:
        return f"unknown person id {self.person_id}"


class ParseError(PedigreeError):
    def __init__(self, line: int, column: str, reason: str):
        super().__init__(f"line {line}, column {column!r}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class NotRelated(KinsearchError):
    """Raised when a relationship name is requested for an unrelated pair."""


class NotRelatedWithinLimit(NotRelated):
    """No common ancestor was reached within the search limit.

    The failed search's statistics are kept on ``result`` so callers that
    benchmark unrelated pairs still get expansion counts.
    """

    def __init__(self, p1: int, p2: int, result=None):
        super().__init__(f"persons {p1} and {p2} are not in the same family")
        self.p1 = p1
        self.p2 = p2
        self.result = result


class ConfigInvalid(KinsearchError, ValueError):
    pass


class InsufficientPopulation(KinsearchError, ValueError):
    pass
