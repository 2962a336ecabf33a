"""Predicates and size bounds for covering and detecting properties.

Two routes are provided for the detecting property: the structural check
(:func:`is_detecting`, coverage index plus d-extendibility) used in
production, and the definitional brute-force check
(:func:`is_detecting_brute`) kept as an independent oracle for small
instances. They must agree everywhere; the test suite enforces that.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field

from .core import (
    DomainError,
    Interaction,
    MixedArray,
    TypeVector,
    level_masks,
    mask_to_rowset,
)

DEFAULT_ENUM_CAP = 5_000_000
"""Fallback ceiling on brute-force enumeration sizes.

Override per call via the ``max_*`` keyword arguments or globally with the
``DTA_MAX_ENUM`` environment variable.
"""


class InfeasibleParametersError(ValueError):
    """The requested (d, t, types) combination admits no detecting array."""


class EnumerationCapError(RuntimeError):
    """An exact check would exceed the configured enumeration budget."""


@dataclass
class VerifyReport:
    """Outcome of one structural check.

    ``witness`` is populated exactly when ``verdict`` is false and carries
    the violating object(s); its shape depends on the check and is spelled
    out in each function's docstring. ``stats`` holds computed numbers
    (coverage index, bounds, enumeration sizes, ...).
    """

    name: str
    verdict: bool
    witness: object | None = None
    stats: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict


def _cap(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("DTA_MAX_ENUM")
    return int(env) if env else DEFAULT_ENUM_CAP


def _check_strength(array: MixedArray, t: int) -> None:
    if not 1 <= t <= array.k:
        raise DomainError(f"strength {t} outside 1..{array.k}")


def coverage_index(array: MixedArray, t: int, *, max_cells: int | None = None) -> int:
    """Largest lam such that every t columns cover every t-tuple >= lam times.

    Returns 0 as soon as some t-tuple never occurs. Tuples are tallied per
    column subset in a hash table whose size is the product of the subset's
    alphabet sizes; subsets larger than the enumeration cap raise
    :class:`EnumerationCapError` rather than silently exhausting memory.
    """
    _check_strength(array, t)
    cap = _cap(max_cells)
    best: int | None = None
    for cols in itertools.combinations(range(array.k), t):
        cells = math.prod(array.types[c] for c in cols)
        if cells > cap:
            raise EnumerationCapError(
                f"columns {tuple(c + 1 for c in cols)} span {cells} tuples, "
                f"over the cap of {cap}"
            )
        tally: dict[tuple[int, ...], int] = {}
        for row in array.rows:
            key = tuple(row[c] for c in cols)
            tally[key] = tally.get(key, 0) + 1
        if len(tally) < cells:
            return 0
        low = min(tally.values())
        if best is None or low < best:
            best = low
    assert best is not None
    return best


def _first_undercovered(
    array: MixedArray, t: int, need: int
) -> tuple[Interaction, int] | None:
    """First strength-t interaction covered fewer than ``need`` times."""
    masks = level_masks(array)
    for cols in itertools.combinations(range(array.k), t):
        for levels in itertools.product(*(range(array.types[c]) for c in cols)):
            m = -1
            for c, level in zip(cols, levels):
                m &= masks[c][level]
            count = m.bit_count() if m >= 0 else 0
            if count < need:
                pins = tuple((c + 1, level) for c, level in zip(cols, levels))
                return Interaction(pins), count
    return None


def is_super_simple(array: MixedArray, t: int) -> VerifyReport:
    """Check that no (t+1)-tuple occurs twice within any t+1 columns.

    Witness on failure: ``{"interaction": ..., "rows": (r1, r2)}`` naming
    the first duplicated (t+1)-tuple and the two earliest rows carrying it.
    """
    if t + 1 > array.k:
        raise DomainError(f"needs t+1 = {t + 1} <= k = {array.k} columns")
    if t < 1:
        raise DomainError("strength must be at least 1")
    for cols in itertools.combinations(range(array.k), t + 1):
        seen: dict[tuple[int, ...], int] = {}
        for r, row in enumerate(array.rows, start=1):
            key = tuple(row[c] for c in cols)
            first = seen.get(key)
            if first is not None:
                pins = tuple((c + 1, level) for c, level in zip(cols, key))
                return VerifyReport(
                    "super-simple",
                    False,
                    witness={"interaction": Interaction(pins), "rows": (first, r)},
                    stats={"t": t},
                )
            seen[key] = r
    return VerifyReport("super-simple", True, stats={"t": t})


def is_d_extendible(array: MixedArray, t: int, d: int) -> VerifyReport:
    """Check that no d extensions of any t-way interaction cover its rows.

    For each strength-t interaction T the candidate extensions are those
    with a nonempty row set (empty ones add nothing to a union); the check
    then tries every mix of at most d of them, across columns. Exact
    enumeration is limited to d <= 4. Witness on failure:
    ``{"interaction": T, "extensions": (...)}`` whose row sets cover T's.
    """
    if not 1 <= t < array.k:
        raise DomainError(f"needs 1 <= t < k, got t={t}, k={array.k}")
    if d < 1:
        raise DomainError("d must be at least 1")
    if d > 4:
        raise EnumerationCapError(f"exact check infeasible for d={d} (supported: d <= 4)")
    masks = level_masks(array)
    types = array.types
    for cols in itertools.combinations(range(array.k), t):
        others = [j for j in range(array.k) if j not in cols]
        for levels in itertools.product(*(range(types[c]) for c in cols)):
            m = -1
            for c, level in zip(cols, levels):
                m &= masks[c][level]
            pins = tuple((c + 1, level) for c, level in zip(cols, levels))
            if m == 0:
                # nothing to cover: any d extensions trivially swallow it
                ext = [
                    Interaction(tuple(sorted(pins + ((j + 1, x),))))
                    for j in others
                    for x in range(types[j])
                ]
                return VerifyReport(
                    "d-extendible",
                    False,
                    witness={
                        "interaction": Interaction(pins),
                        "extensions": tuple(ext[: min(d, len(ext))]),
                    },
                    stats={"t": t, "d": d},
                )
            need = m.bit_count()
            cands: list[tuple[int, int, tuple[int, int]]] = []
            for j in others:
                for x in range(types[j]):
                    em = m & masks[j][x]
                    if em:
                        cands.append((em, em.bit_count(), (j + 1, x)))
            for size in range(1, min(d, len(cands)) + 1):
                for combo in itertools.combinations(cands, size):
                    if sum(c[1] for c in combo) < need:
                        continue
                    union = 0
                    for em, _, _ in combo:
                        union |= em
                    if union == m:
                        ext = tuple(
                            Interaction(tuple(sorted(pins + (pin,))))
                            for _, _, pin in combo
                        )
                        return VerifyReport(
                            "d-extendible",
                            False,
                            witness={"interaction": Interaction(pins), "extensions": ext},
                            stats={"t": t, "d": d},
                        )
    return VerifyReport("d-extendible", True, stats={"t": t, "d": d})


def _require_feasible(types: TypeVector, d: int, t: int) -> None:
    k = len(types)
    if min(types) < 2:
        raise InfeasibleParametersError(
            f"every column needs at least 2 levels, got {types}"
        )
    if not 1 <= t < k:
        raise InfeasibleParametersError(
            f"detection needs 1 <= t < k, got t={t}, k={k}"
        )
    if d < 1:
        raise InfeasibleParametersError("d must be at least 1")
    if d >= min(types):
        raise InfeasibleParametersError(
            f"d={d} faults cannot be separated when some column has only "
            f"{min(types)} levels (requires d < min level count)"
        )


def lower_bound(d: int, t: int, types: TypeVector) -> int:
    """Minimum rows of any (d, t)-detecting array: (d+1) * prod(t largest sizes).

    ``d = 0`` is allowed and gives the plain covering bound (index 1).
    Invariant under permutations of ``types``.
    """
    if d == 0:
        k = len(types)
        if not 1 <= t <= k or min(types) < 1:
            raise InfeasibleParametersError(f"invalid t={t} for {len(types)} columns")
    else:
        _require_feasible(tuple(types), d, t)
    largest = sorted(types)[-t:]
    return (d + 1) * math.prod(largest)


def is_detecting(array: MixedArray, d: int, t: int) -> VerifyReport:
    """Structural (d, t)-detecting check: index >= d+1 and d-extendible.

    ``stats`` reports the coverage index, the size lower bound, and whether
    the array is optimum (meets the bound). Witness on failure: either an
    undercovered interaction with its count, or a d-extendibility witness.
    """
    _require_feasible(array.types, d, t)
    ci = coverage_index(array, t)
    lb = lower_bound(d, t, array.types)
    stats = {
        "d": d,
        "t": t,
        "n": array.n,
        "coverage_index": ci,
        "lower_bound": lb,
        "optimum": array.n == lb,
    }
    if ci < d + 1:
        under = _first_undercovered(array, t, d + 1)
        assert under is not None
        interaction, count = under
        return VerifyReport(
            "detecting",
            False,
            witness={"interaction": interaction, "count": count, "needed": d + 1},
            stats=stats,
        )
    ext = is_d_extendible(array, t, d)
    verdict = ext.verdict
    stats["optimum"] = verdict and array.n == lb
    return VerifyReport("detecting", verdict, witness=ext.witness, stats=stats)


def is_detecting_brute(
    array: MixedArray, d: int, t: int, *, max_checks: int | None = None
) -> VerifyReport:
    """Definitional (d, t)-detecting check, by exhaustive enumeration.

    Walks every strength-t interaction T and every set of exactly d
    interactions S, requiring rows(T) within rows(S) exactly when T is in
    S. Both directions of the biconditional are checked. Intended as an
    oracle on small instances; refuses with the offending count when the
    number of (T, S) checks exceeds the enumeration cap. Witness on
    failure: ``{"interaction": T, "set": S}``.
    """
    _require_feasible(array.types, d, t)
    masks = level_masks(array)
    pool: list[tuple[Interaction, int]] = []
    for cols in itertools.combinations(range(array.k), t):
        for levels in itertools.product(*(range(array.types[c]) for c in cols)):
            m = -1
            for c, level in zip(cols, levels):
                m &= masks[c][level]
            pins = tuple((c + 1, level) for c, level in zip(cols, levels))
            pool.append((Interaction(pins), m))
    m_count = len(pool)
    total = math.comb(m_count, d) * m_count
    cap = _cap(max_checks)
    if total > cap:
        raise EnumerationCapError(
            f"{m_count} interactions give {total} (interaction, set) checks, "
            f"over the cap of {cap}"
        )
    stats = {"d": d, "t": t, "interactions": m_count, "sets": math.comb(m_count, d)}
    rho_masks = [m for _, m in pool]
    for chosen in itertools.combinations(range(m_count), d):
        union = 0
        for i in chosen:
            union |= rho_masks[i]
        in_set = set(chosen)
        for i in range(m_count):
            covered = (rho_masks[i] | union) == union
            if i in in_set:
                if not covered:  # impossible by construction; checked anyway
                    return VerifyReport(
                        "detecting-brute",
                        False,
                        witness={
                            "interaction": pool[i][0],
                            "set": tuple(pool[j][0] for j in chosen),
                        },
                        stats=stats,
                    )
            elif covered:
                return VerifyReport(
                    "detecting-brute",
                    False,
                    witness={
                        "interaction": pool[i][0],
                        "set": tuple(pool[j][0] for j in chosen),
                    },
                    stats=stats,
                )
    return VerifyReport("detecting-brute", True, stats=stats)


def min_rho_check(array: MixedArray, d: int, t: int) -> VerifyReport:
    """Necessary condition: every t-way interaction covered >= d+1 times.

    Reported separately for diagnostics; equivalent to
    ``coverage_index(array, t) >= d + 1``. Witness on failure: the first
    undercovered interaction with its count and its covering rows.
    """
    _check_strength(array, t)
    ci = coverage_index(array, t)
    stats = {"d": d, "t": t, "coverage_index": ci, "needed": d + 1}
    if ci >= d + 1:
        return VerifyReport("min-coverage", True, stats=stats)
    under = _first_undercovered(array, t, d + 1)
    assert under is not None
    interaction, count = under
    masks = level_masks(array)
    m = -1
    for c, level in interaction.pins:
        m &= masks[c - 1][level]
    return VerifyReport(
        "min-coverage",
        False,
        witness={
            "interaction": interaction,
            "count": count,
            "rows": mask_to_rowset(m) if m > 0 else (),
        },
        stats=stats,
    )


def _as_two_three_w(sizes: list[int]) -> tuple[int, int, int] | None:
    """Decompose a sorted size multiset as u twos, m threes, one w >= 3."""
    big = [v for v in sizes if v >= 4]
    if len(big) > 1:
        return None
    small = [v for v in sizes if v < 4]
    if any(v not in (2, 3) for v in small):
        return None
    u = small.count(2)
    threes = small.count(3)
    if big:
        return u, threes, big[0]
    if threes >= 1:
        return u, threes - 1, 3
    return None


def check_search_constraints(types: TypeVector, d: int, t: int) -> VerifyReport:
    """Known necessary conditions for bound-meeting (1, 2) arrays.

    Published caps exist for two families of types: uniform q^k (at most
    2q factors) and 2^u 3^m w^1 with w >= 3 (u or m below 2, plus per-case
    caps). Anything else, and any (d, t) other than (1, 2), gets status
    UNKNOWN: no known constraint, which is not an existence promise.

    ``stats["status"]`` is PASS, REJECT, or UNKNOWN; on REJECT the witness
    lists every violated cap as a human-readable inequality.
    """
    types = tuple(types)
    if (d, t) != (1, 2):
        return VerifyReport(
            "search-constraints",
            True,
            stats={"status": "UNKNOWN", "reason": f"no known constraint for (d,t)=({d},{t})"},
        )
    sizes = sorted(types)
    k = len(sizes)
    violations: list[str] = []
    matched: list[str] = []
    if len(set(sizes)) == 1:
        q = sizes[0]
        matched.append("uniform")
        if k > 2 * q:
            violations.append(
                f"uniform type {q}^{k}: a bound-meeting array needs k <= 2q = {2 * q}"
            )
    decomp = _as_two_three_w(sizes)
    if decomp is not None:
        u, m, w = decomp
        matched.append("2^u 3^m w^1")
        label = f"type 2^{u} 3^{m} {w}^1"
        if u >= 2 and m >= 2:
            violations.append(f"{label}: needs u < 2 or m < 2 (got u={u}, m={m})")
        if m == 0 and u > 3:
            violations.append(f"{label}: with no 3-level factors, u <= 3 (got u={u})")
        if m == 1 and u > 4:
            violations.append(f"{label}: with one 3-level factor, u <= 4 (got u={u})")
        if u == 0 and m > 5:
            violations.append(f"{label}: with no 2-level factors, m <= 5 (got m={m})")
        if u == 1 and m > 3:
            violations.append(f"{label}: with one 2-level factor, m <= 3 (got m={m})")
    if violations:
        return VerifyReport(
            "search-constraints",
            False,
            witness=tuple(violations),
            stats={"status": "REJECT", "families": tuple(matched)},
        )
    status = "PASS" if matched else "UNKNOWN"
    return VerifyReport(
        "search-constraints", True, stats={"status": status, "families": tuple(matched)}
    )
