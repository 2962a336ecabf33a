"""Mixed-level arrays, interactions, and the row-coverage primitive.

Conventions used by every public interface in this package:

* columns are numbered 1..k, the way test plans are usually tabulated,
* the levels of a column with v levels are the integers 0..v-1,
* row (test) numbers are 1-based in all user-facing output.

``rho(A, T)`` is the customary name in interaction testing for the set of
rows of an array A that cover an interaction T; nearly everything else in
the package is defined in terms of it.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

TypeVector = tuple[int, ...]
"""Per-column alphabet sizes; ``types[j]`` is the size of column ``j + 1``."""

RowSet = tuple[int, ...]
"""Ascending 1-based row indices."""


class DomainError(ValueError):
    """A column, level, or interaction is invalid for the array at hand."""


@dataclass(frozen=True)
class Interaction:
    """An assignment of levels to t distinct columns.

    ``pins`` is a tuple of ``(column, level)`` pairs with strictly
    increasing 1-based columns; a row covers the interaction when it
    matches every pinned column. ``strength`` is the number of pins.
    """

    pins: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pins = tuple((int(c), int(level)) for c, level in self.pins)
        object.__setattr__(self, "pins", pins)
        if not pins:
            raise DomainError("an interaction needs at least one pinned column")
        cols = [c for c, _ in pins]
        if cols[0] < 1:
            raise DomainError(f"columns are numbered from 1, got {cols[0]}")
        if any(b <= a for a, b in zip(cols, cols[1:])):
            raise DomainError(f"pinned columns must be strictly increasing, got {cols}")
        if any(level < 0 for _, level in pins):
            raise DomainError("levels are non-negative integers")

    @classmethod
    def of(cls, *pins: tuple[int, int]) -> "Interaction":
        """Build an interaction from ``(column, level)`` pairs in any order."""
        return cls(tuple(sorted((int(c), int(level)) for c, level in pins)))

    @property
    def strength(self) -> int:
        return len(self.pins)

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.pins)

    def __str__(self) -> str:
        return "{" + ", ".join(f"c{c}={level}" for c, level in self.pins) + "}"


@dataclass(frozen=True)
class MixedArray:
    """An N x k matrix of level indices plus the per-column alphabet sizes.

    Rows are tests, columns are factors. Instances are immutable and all
    operations on them are pure functions, so they can be shared freely
    across threads or processes.
    """

    types: TypeVector
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        types = tuple(int(v) for v in self.types)
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "types", types)
        object.__setattr__(self, "rows", rows)
        if not types:
            raise DomainError("an array needs at least one column")
        if any(v < 1 for v in types):
            raise DomainError(f"column sizes must be at least 1, got {types}")
        if not rows:
            raise DomainError("an array needs at least one row")
        k = len(types)
        for r, row in enumerate(rows, start=1):
            if len(row) != k:
                raise DomainError(f"row {r} has {len(row)} entries, expected {k}")
            for j, (x, v) in enumerate(zip(row, types), start=1):
                if not 0 <= x < v:
                    raise DomainError(
                        f"row {r}, column {j}: level {x} outside 0..{v - 1}"
                    )

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return len(self.types)

    def validate_interaction(self, interaction: Interaction) -> None:
        """Raise :class:`DomainError` unless every pin fits this array."""
        for c, level in interaction.pins:
            if c > self.k:
                raise DomainError(f"column {c} out of range 1..{self.k}")
            if level >= self.types[c - 1]:
                raise DomainError(
                    f"column {c}: level {level} outside 0..{self.types[c - 1] - 1}"
                )


def rho(array: MixedArray, interaction: Interaction) -> RowSet:
    """Rows of ``array`` that cover ``interaction``, ascending and 1-based."""
    array.validate_interaction(interaction)
    pins = [(c - 1, level) for c, level in interaction.pins]
    return tuple(
        r
        for r, row in enumerate(array.rows, start=1)
        if all(row[c] == level for c, level in pins)
    )


def rho_union(array: MixedArray, interactions: Iterable[Interaction]) -> RowSet:
    """Union of :func:`rho` over a collection of interactions (empty -> empty)."""
    hit: set[int] = set()
    for interaction in interactions:
        hit.update(rho(array, interaction))
    return tuple(sorted(hit))


def extensions(array: MixedArray, interaction: Interaction) -> list[Interaction]:
    """All interactions that pin exactly one extra column of ``array``.

    There are ``sum(v_j for unpinned j)`` of them, ordered by column then
    level. Every extension covers a subset of the rows the original does.
    """
    array.validate_interaction(interaction)
    if interaction.strength >= array.k:
        raise DomainError("cannot extend an interaction that pins every column")
    pinned = set(interaction.columns)
    out = []
    for j in range(1, array.k + 1):
        if j in pinned:
            continue
        for level in range(array.types[j - 1]):
            out.append(Interaction(tuple(sorted(interaction.pins + ((j, level),)))))
    return out


def all_interactions(types: TypeVector, t: int) -> Iterator[Interaction]:
    """Every strength-``t`` interaction over ``types``, in a fixed order.

    Column subsets are lexicographic and, within a subset, level tuples are
    lexicographic. Every enumeration-based check in the package walks
    interactions in this order, which keeps witnesses deterministic.
    """
    k = len(types)
    if not 1 <= t <= k:
        raise DomainError(f"strength {t} outside 1..{k}")
    for cols in itertools.combinations(range(k), t):
        for levels in itertools.product(*(range(types[c]) for c in cols)):
            yield Interaction(tuple((c + 1, level) for c, level in zip(cols, levels)))


def level_masks(array: MixedArray) -> list[list[int]]:
    """Per-column, per-level row bitmasks (bit r set = 0-based row r matches).

    A performance helper: the rows covering an interaction are the AND of
    the masks of its pins, and set algebra on masks is how the verification
    and localization code stays fast.
    """
    masks = [[0] * v for v in array.types]
    for r, row in enumerate(array.rows):
        bit = 1 << r
        for j, x in enumerate(row):
            masks[j][x] |= bit
    return masks


def mask_to_rowset(mask: int) -> RowSet:
    """Convert a row bitmask to ascending 1-based row indices."""
    out = []
    r = 1
    while mask:
        if mask & 1:
            out.append(r)
        mask >>= 1
        r += 1
    return tuple(out)
