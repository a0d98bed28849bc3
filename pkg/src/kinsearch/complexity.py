"""Worst-case node counts for the three search strategies.

Counts are exact Python integers. ``fanout`` is the number of children per
couple; a plain BFS step can move to two parents plus ``fanout`` children.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_FANOUT = 3

#: Values as printed in the published comparison table for fan-out 3.
#: The level-8 BFS entry repeats level 9's value; the closed form gives
#: 190,734,863,280 there.
PUBLISHED_TABLE = (
    (1, "30", "10", "4"),
    (2, "780", "60", "12"),
    (3, "19530", "310", "28"),
    (4, "488280", "1560", "60"),
    (5, "12207030", "7810", "124"),
    (6, "305175780", "39060", "252"),
    (7, "7629394530", "195310", "508"),
    (8, "4.76837E+12", "976560", "1020"),
    (9, "4.76837E+12", "4882810", "2044"),
    (10, "1.19209E+14", "24414060", "4092"),
)
ERRATUM_LEVEL = 8


@dataclass(frozen=True)
class CostRow:
    level: int
    bfs_nodes: int
    bidi_nodes: int
    pbba_nodes: int


def _geometric(base: int, terms: int) -> int:
    # sum of base**l for l = 1..terms
    if base == 1:
        return terms
    return (base ** (terms + 1) - base) // (base - 1)


def _check(level: int, fanout: int) -> None:
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    if fanout < 1:
        raise ValueError(f"fanout must be >= 1, got {fanout}")


def bfs_count(level: int, fanout: int = DEFAULT_FANOUT) -> int:
    """Nodes a one-sided BFS generates to link two people ``level`` steps from their ancestor.

    The single search has to cover ``2 * level`` steps.
    """
    _check(level, fanout)
    return _geometric(2 + fanout, 2 * level)


def bidi_count(level: int, fanout: int = DEFAULT_FANOUT) -> int:
    _check(level, fanout)
    return 2 * _geometric(2 + fanout, level)


def pbba_count(level: int) -> int:
    """Two sides each climbing ``level`` generations of two parents: 2^(L+2) - 4."""
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    return 2 * _geometric(2, level)


def table1(max_level: int = 10, fanout: int = DEFAULT_FANOUT) -> list[CostRow]:
    if max_level < 1:
        raise ValueError(f"max_level must be >= 1, got {max_level}")
    return [
        CostRow(level, bfs_count(level, fanout), bidi_count(level, fanout), pbba_count(level))
        for level in range(1, max_level + 1)
    ]


def published_form(value: int) -> str:
    """Render a count the way the published table does (6 significant digits past 1e12)."""
    if value < 10**12:
        return str(value)
    mantissa, exponent = f"{value:.5E}".split("E")
    return f"{mantissa}E+{int(exponent):02d}"
