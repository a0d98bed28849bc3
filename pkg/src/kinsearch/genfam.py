"""Seeded synthetic family generator.

Each family starts from a founding man and his wife. Every couple below the
last generation has ``offspring`` children of uniformly random sex, and
every child marries a generated spouse with no recorded parents. Sons keep
their father's surname; daughters take their husband's. All persons of a
family carry the same ``family_check_id`` so results can be checked against
ground truth.

Family ``k`` depends only on ``(seed, k)``, so a config with more families
extends the graph of a config with fewer.
"""

from __future__ import annotations

import datetime as dt
import itertools
import random
from dataclasses import dataclass, field

from .errors import ConfigInvalid, InsufficientPopulation
from .pedigree import PedigreeBuilder, PedigreeGraph, Person, Sex

YEARS_PER_GENERATION = 25

MALE_NAMES = (
    "Adam", "Arthur", "Benjamin", "Charles", "Daniel", "Edward", "Francis", "George",
    "Henry", "Isaac", "James", "John", "Leonard", "Michael", "Nathan", "Oliver",
    "Peter", "Robert", "Samuel", "Thomas", "Victor", "Walter", "William",
)
FEMALE_NAMES = (
    "Alice", "Anna", "Beatrice", "Catherine", "Clara", "Dorothy", "Eleanor", "Emily",
    "Florence", "Grace", "Helen", "Isabel", "Jane", "Louise", "Margaret", "Mary",
    "Nora", "Olivia", "Rose", "Sarah", "Sophia", "Victoria", "Winifred",
)
SURNAMES = (
    "Abbott", "Baker", "Carter", "Dawson", "Ellis", "Fisher", "Gardner", "Harper",
    "Irving", "Jennings", "Kendall", "Lambert", "Mercer", "Norris", "Osborne", "Palmer",
    "Quinn", "Reed", "Spencer", "Turner", "Underwood", "Vaughan", "Walsh", "Yates",
)


@dataclass(frozen=True)
class GenConfig:
    generations: int
    offspring: int
    families: int = 1
    seed: int = 0
    reference_date: dt.date = dt.date(2012, 1, 1)
    allow_degenerate: bool = False

    def validate(self) -> None:
        if self.generations < 1:
            raise ConfigInvalid(f"generations must be >= 1, got {self.generations}")
        min_offspring = 1 if self.allow_degenerate else 2
        if self.offspring < min_offspring:
            raise ConfigInvalid(
                f"offspring must be >= {min_offspring}, got {self.offspring}"
                + ("" if self.allow_degenerate else " (pass allow_degenerate to permit 1)")
            )
        if self.families < 1:
            raise ConfigInvalid(f"families must be >= 1, got {self.families}")
        if not 0 <= self.seed < 2**64:
            raise ConfigInvalid("seed must fit in an unsigned 64-bit integer")
        if self.reference_date.year - YEARS_PER_GENERATION * self.generations - 1 < dt.MINYEAR:
            raise ConfigInvalid("too many generations for the reference date")


@dataclass
class GenLedger:
    """What the generator did, for cross-checking the emitted graph."""

    founders: dict[int, tuple[int, int]] = field(default_factory=dict)
    generation: dict[int, int] = field(default_factory=dict)
    couples: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    spouses: set[int] = field(default_factory=set)
    family_of: dict[int, int] = field(default_factory=dict)

    def blood_members(self, family: int) -> list[int]:
        return [
            pid for pid, fam in self.family_of.items()
            if fam == family and pid not in self.spouses
        ]


def population(generations: int, offspring: int) -> int:
    """Persons per family: couples at every generation, ``offspring`` children per couple."""
    if generations < 1 or offspring < 1:
        raise ValueError("generations and offspring must be >= 1")
    if offspring == 1:
        return 2 * generations
    return 2 * (offspring**generations - 1) // (offspring - 1)


class _FamilyBuilder:
    def __init__(self, config: GenConfig, family: int, next_id: int, builder, ledger):
        self.config = config
        self.family = family
        self.rng = random.Random(f"{config.seed}:{family}")
        self.ids = itertools.count(next_id)
        self.builder = builder
        self.ledger = ledger

    def _birth(self, generation: int) -> dt.date:
        ref = self.config.reference_date
        year = ref.year - YEARS_PER_GENERATION * (self.config.generations - generation + 1)
        year += self.rng.randint(-1, 1)
        return dt.date(year, self.rng.randint(1, 12), self.rng.randint(1, 28))

    def _person(self, sex, last_name, generation, father=None, mother=None, spouse=False) -> Person:
        names = MALE_NAMES if sex is Sex.MALE else FEMALE_NAMES
        person = Person(
            id=next(self.ids),
            first_name=self.rng.choice(names),
            last_name=last_name,
            sex=sex,
            birth_date=self._birth(generation),
            father_id=father,
            mother_id=mother,
            family_check_id=self.family,
        )
        self.builder.add(person)
        self.ledger.generation[person.id] = generation
        self.ledger.family_of[person.id] = self.family
        if spouse:
            self.ledger.spouses.add(person.id)
        return person

    def build(self) -> int:
        rng = self.rng
        surname = rng.choice(SURNAMES)
        husband = self._person(Sex.MALE, surname, 1)
        wife = self._person(Sex.FEMALE, surname, 1, spouse=True)
        self.ledger.founders[self.family] = (husband.id, wife.id)
        couples = [(husband, wife)]
        for generation in range(2, self.config.generations + 1):
            nxt = []
            for father, mother in couples:
                kids = self.ledger.couples.setdefault((father.id, mother.id), [])
                for _ in range(self.config.offspring):
                    sex = Sex.MALE if rng.random() < 0.5 else Sex.FEMALE
                    if sex is Sex.MALE:
                        child = self._person(sex, father.last_name, generation, father.id, mother.id)
                        partner = self._person(Sex.FEMALE, child.last_name, generation, spouse=True)
                        nxt.append((child, partner))
                    else:
                        married_name = rng.choice(SURNAMES)
                        child = self._person(sex, married_name, generation, father.id, mother.id)
                        partner = self._person(Sex.MALE, married_name, generation, spouse=True)
                        nxt.append((partner, child))
                    kids.append(child.id)
            couples = nxt
        return next(self.ids)


def generate(config: GenConfig) -> tuple[PedigreeGraph, GenLedger]:
    config.validate()
    builder = PedigreeBuilder()
    ledger = GenLedger()
    next_id = 1
    for family in range(1, config.families + 1):
        next_id = _FamilyBuilder(config, family, next_id, builder, ledger).build()
    return builder.finalize(), ledger


def sample_pairs(
    graph: PedigreeGraph,
    n: int,
    seed: int = 0,
    ledger: GenLedger | None = None,
    related_only: bool = False,
) -> list[tuple[int, int]]:
    """Draw ``n`` unordered pairs of distinct persons, uniformly and reproducibly.

    With ``related_only`` (needs the ledger) both persons are blood members
    of one randomly chosen family, so they always share the founders.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(graph) < 2:
        raise InsufficientPopulation(f"need at least 2 persons, graph has {len(graph)}")
    rng = random.Random(seed)
    if related_only:
        if ledger is None:
            raise ValueError("related_only sampling needs the generator ledger")
        pools = [ledger.blood_members(f) for f in sorted(ledger.founders)]
        pools = [p for p in pools if len(p) >= 2]
        if not pools:
            raise InsufficientPopulation("no family has two blood members")
        draws = (rng.sample(rng.choice(pools), 2) for _ in range(n))
    else:
        ids = graph.ids()
        draws = (rng.sample(ids, 2) for _ in range(n))
    return [(min(a, b), max(a, b)) for a, b in draws]
