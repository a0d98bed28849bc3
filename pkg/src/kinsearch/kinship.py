"""English names for blood relationships.

Naming works from the two generation distances to the intersection node
(``d_a`` for person A, ``d_b`` for person B) plus the two sexes:

=================  ==========================================
distances          A is ... of B
=================  ==========================================
(0, 0)             self
(0, k)             father/mother, grandfather, great-grandfather, ...
(k, 0)             son/daughter, grandson, great-grandson, ...
(1, 1)             brother/sister (half- when one parent shared)
(1, k >= 2)        uncle/aunt, grand-uncle, great-grand-uncle, ...
(k >= 2, 1)        nephew/niece, grand-nephew, great-grand-nephew, ...
(m >= 2, n >= 2)   (min-1)th cousin, |m-n| times removed
=================  ==========================================

Age is accepted on the input for rule sets that need it but English naming
does not use it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import NotRelated
from .pedigree import PedigreeGraph, Sex
from .search import SearchResult

_ORDINALS = (
    "first", "second", "third", "fourth", "fifth",
    "sixth", "seventh", "eighth", "ninth", "tenth",
)


@dataclass(frozen=True)
class KinshipInput:
    d_a: int
    d_b: int
    sex_a: Sex
    sex_b: Sex
    shared_parents: int = 2
    age_a: Optional[int] = None
    age_b: Optional[int] = None

    def __post_init__(self):
        if self.d_a < 0 or self.d_b < 0:
            raise ValueError("generation distances must be non-negative")
        if self.shared_parents not in (1, 2):
            raise ValueError("shared_parents must be 1 or 2")

    def swapped(self) -> "KinshipInput":
        return KinshipInput(self.d_b, self.d_a, self.sex_b, self.sex_a, self.shared_parents, self.age_b, self.age_a)


@dataclass(frozen=True)
class KinshipTerm:
    lineal: bool
    term_for_a: str
    term_for_b: str
    degree: Optional[int] = None
    removed: Optional[int] = None


def _ordinal(n: int) -> str:
    if n <= len(_ORDINALS):
        return _ORDINALS[n - 1]
    suffix = "th" if 10 <= n % 100 <= 20 else {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")
    return f"{n}{suffix}"


def _times(n: int) -> str:
    return {1: "once", 2: "twice"}.get(n, f"{n} times")


def _lineal_up(k: int, sex: Sex) -> str:
    base = "father" if sex is Sex.MALE else "mother"
    if k == 1:
        return base
    return "great-" * (k - 2) + "grand" + base


def _lineal_down(k: int, sex: Sex) -> str:
    base = "son" if sex is Sex.MALE else "daughter"
    if k == 1:
        return base
    return "great-" * (k - 2) + "grand" + base


def _collateral_up(k: int, sex: Sex) -> str:
    base = "uncle" if sex is Sex.MALE else "aunt"
    if k == 2:
        return base
    return "great-" * (k - 3) + "grand-" + base


def _collateral_down(k: int, sex: Sex) -> str:
    base = "nephew" if sex is Sex.MALE else "niece"
    if k == 2:
        return base
    return "great-" * (k - 3) + "grand-" + base


def cousin_term(degree: int, removed: int) -> str:
    term = f"{_ordinal(degree)} cousin"
    if removed:
        term += f" {_times(removed)} removed"
    return term


def classify(query: KinshipInput) -> KinshipTerm:
    d_a, d_b, sex_a, sex_b = query.d_a, query.d_b, query.sex_a, query.sex_b
    if d_a == 0 and d_b == 0:
        return KinshipTerm(True, "self", "self")
    if d_a == 0:
        return KinshipTerm(True, _lineal_up(d_b, sex_a), _lineal_down(d_b, sex_b))
    if d_b == 0:
        return KinshipTerm(True, _lineal_down(d_a, sex_a), _lineal_up(d_a, sex_b))
    if d_a == 1 and d_b == 1:
        prefix = "" if query.shared_parents == 2 else "half-"
        a = "brother" if sex_a is Sex.MALE else "sister"
        b = "brother" if sex_b is Sex.MALE else "sister"
        return KinshipTerm(False, prefix + a, prefix + b)
    if d_a == 1:
        return KinshipTerm(False, _collateral_up(d_b, sex_a), _collateral_down(d_b, sex_b))
    if d_b == 1:
        return KinshipTerm(False, _collateral_down(d_a, sex_a), _collateral_up(d_a, sex_b))
    term = cousin_term(min(d_a, d_b) - 1, abs(d_a - d_b))
    return KinshipTerm(False, term, term, min(d_a, d_b) - 1, abs(d_a - d_b))


def rule_table(max_distance: int = 6) -> dict[KinshipInput, KinshipTerm]:
    """Every classification for distances up to ``max_distance``.

    Includes both sexes for each person and the half-sibling variant.
    """
    table = {}
    for d_a, d_b, sex_a, sex_b in itertools.product(range(max_distance + 1), range(max_distance + 1), Sex, Sex):
        for shared in ((2, 1) if (d_a, d_b) == (1, 1) else (2,)):
            query = KinshipInput(d_a, d_b, sex_a, sex_b, shared)
            table[query] = classify(query)
    return table


def shared_parent_count(graph: PedigreeGraph, a: int, b: int) -> int:
    pa = {p for p in graph.parents_of(a) if p is not None}
    pb = {p for p in graph.parents_of(b) if p is not None}
    return len(pa & pb)


def kinship_input(result: SearchResult, graph: PedigreeGraph, on=None) -> KinshipInput:
    if not result.related:
        raise NotRelated(f"persons {result.p1} and {result.p2} are not related")
    a, b = graph.person(result.p1), graph.person(result.p2)
    shared = 2
    if result.d_a == 1 and result.d_b == 1:
        shared = 1 if shared_parent_count(graph, a.id, b.id) == 1 else 2
    return KinshipInput(
        result.d_a,
        result.d_b,
        a.sex,
        b.sex,
        shared,
        a.age(on) if on else None,
        b.age(on) if on else None,
    )


def describe(person) -> str:
    return f"#{person.id} {person.full_name}"


def render(term: KinshipTerm, a, b) -> str:
    if term.term_for_a == "self":
        return f"{describe(a)} and {describe(b)} are the same person (self)"
    return f"{describe(a)} is the {term.term_for_a} of {describe(b)}"


def name_relationship(result: SearchResult, graph: PedigreeGraph) -> tuple[KinshipTerm, str]:
    """Name the relationship found by a search and render it as a sentence."""
    term = classify(kinship_input(result, graph))
    return term, render(term, graph.person(result.p1), graph.person(result.p2))
