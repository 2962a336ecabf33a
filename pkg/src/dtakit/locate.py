"""Run a detecting array as a test suite and recover the faulty interactions.

The model is deterministic and noise-free: a set of faulty strength-t
interactions is fixed, and a test (row) fails exactly when it covers at
least one of them. Localization inverts that map: given the pass/fail
vector of a verified (d, t)-detecting array, the faulty set of size at
most d is recovered exactly, and larger fault sets are flagged rather than
misreported.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass

from .core import (
    DomainError,
    Interaction,
    MixedArray,
    RowSet,
    level_masks,
    mask_to_rowset,
    rho_union,
)
from .verify import is_detecting

OutcomeVector = tuple[bool, ...]
"""Per-row outcome aligned to an array's rows; True = pass, False = fail."""


@dataclass(frozen=True)
class Identified:
    """The failing rows are explained by exactly these <= d interactions."""

    faults: frozenset[Interaction]


@dataclass(frozen=True)
class TooManyFaults:
    """More candidate interactions fit the failures than d allows."""

    candidates: tuple[Interaction, ...]


@dataclass(frozen=True)
class Inconsistent:
    """No interaction set of size <= d explains every failing row.

    Signals either more than d faults masking each other or a failure mode
    that is not a strength-t interaction at all; the unexplained failing
    rows are carried as a diagnostic.
    """

    unexplained: RowSet


LocateResult = Identified | TooManyFaults | Inconsistent


def simulate_outcome(array: MixedArray, faults: Iterable[Interaction]) -> OutcomeVector:
    """Outcome of running ``array`` against a set of faulty interactions.

    A row fails iff it covers at least one fault. All faults must share
    one strength.
    """
    faults = list(faults)
    strengths = {f.strength for f in faults}
    if len(strengths) > 1:
        raise DomainError(f"fault interactions must share one strength, got {sorted(strengths)}")
    failing = set(rho_union(array, faults))
    return tuple(r not in failing for r in range(1, array.n + 1))


def locate_faults(
    array: MixedArray,
    d: int,
    t: int,
    outcomes: OutcomeVector,
    *,
    verify: bool = True,
) -> LocateResult:
    """Recover the faulty strength-t interactions from a pass/fail vector.

    Candidates are the interactions whose covering rows all failed, found
    in one pass over every strength-t interaction. For a verified
    (d, t)-detecting array and any true fault set of size <= d this
    returns exactly that set (requires more than d interactions overall,
    which any such array has). With ``verify=False`` the detecting
    property is taken on trust and the exactness guarantee is void.
    """
    if len(outcomes) != array.n:
        raise DomainError(
            f"outcome vector has {len(outcomes)} entries for {array.n} rows"
        )
    if verify:
        report = is_detecting(array, d, t)
        if not report.verdict:
            raise DomainError(
                "array is not a (d, t)-detecting array; localization results "
                "would be unreliable (pass verify=False to force)"
            )
    fail_mask = 0
    for r, passed in enumerate(outcomes):
        if not passed:
            fail_mask |= 1 << r
    masks = level_masks(array)
    candidates: list[tuple[Interaction, int]] = []
    for cols in itertools.combinations(range(array.k), t):
        for levels in itertools.product(*(range(array.types[c]) for c in cols)):
            m = -1
            for c, level in zip(cols, levels):
                m &= masks[c][level]
            if m | fail_mask == fail_mask:
                pins = tuple((c + 1, level) for c, level in zip(cols, levels))
                candidates.append((Interaction(pins), m))
    if len(candidates) > d:
        return TooManyFaults(tuple(i for i, _ in candidates))
    union = 0
    for _, m in candidates:
        union |= m
    if union == fail_mask:
        return Identified(frozenset(i for i, _ in candidates))
    return Inconsistent(mask_to_rowset(fail_mask & ~union))
