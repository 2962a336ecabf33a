"""Deterministic builders: orthogonal arrays, optimum covering arrays, and
the compositions that turn them into larger detecting arrays.

All builders are pure functions of their inputs. They enforce the cheap
structural preconditions themselves; the expensive semantic claims (index,
super-simplicity, the detecting property) are verified by the
:mod:`dtakit.verify` module, which the test suite runs over every builder.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import DomainError, MixedArray, TypeVector
from .verify import InfeasibleParametersError


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


@dataclass(frozen=True)
class OaSpec:
    """Parameters of an orthogonal-array request.

    ``construction`` selects the builder: ``"sum"`` needs any alphabet
    ``order >= 2`` and yields t+1 columns; ``"bush"`` needs a prime
    ``order`` and yields order+1 columns.
    """

    strength: int
    order: int
    construction: str = "bush"

    def build(self) -> MixedArray:
        if self.construction == "sum":
            return oa_sum(self.strength, self.order)
        if self.construction == "bush":
            return oa_bush(self.strength, self.order)
        raise DomainError(f"unknown construction {self.construction!r}")

    @property
    def columns(self) -> int:
        return self.strength + 1 if self.construction == "sum" else self.order + 1


def full_factorial(types: TypeVector) -> MixedArray:
    """Every level combination once, in lexicographic row order."""
    types = tuple(types)
    rows = tuple(itertools.product(*(range(v) for v in types)))
    return MixedArray(types, rows)


def oa_sum(t: int, v: int) -> MixedArray:
    """Index-1 orthogonal array of strength t with t+1 columns over 0..v-1.

    Rows are (x_1, ..., x_t, sum(x) mod v) for all x. Any t of the t+1
    columns determine the remaining one linearly, so every t-tuple appears
    exactly once; v^t rows.
    """
    if t < 1:
        raise DomainError("strength must be at least 1")
    if v < 2:
        raise DomainError("alphabet must have at least 2 levels")
    rows = tuple(
        x + (sum(x) % v,) for x in itertools.product(range(v), repeat=t)
    )
    return MixedArray((v,) * (t + 1), rows)


def oa_bush(t: int, q: int) -> MixedArray:
    """Index-1 orthogonal array of strength t with q+1 columns over a prime q.

    Classical polynomial construction: one row per polynomial of degree
    < t over the integers mod q, listing its values at the q points plus
    its degree-(t-1) coefficient; q^t rows. Any t columns pin either t
    point evaluations or t-1 evaluations plus the leading coefficient, and
    both determine the polynomial uniquely.
    """
    if not _is_prime(q):
        raise DomainError(f"unsupported order {q}: only prime fields are built here")
    if not 1 <= t <= q:
        raise DomainError(f"strength must satisfy 1 <= t <= q, got t={t}, q={q}")
    rows = []
    for coeffs in itertools.product(range(q), repeat=t):
        # coeffs[i] multiplies x^i; coeffs[-1] is the leading coefficient
        row = [sum(c * pow(x, i, q) for i, c in enumerate(coeffs)) % q for x in range(q)]
        row.append(coeffs[-1])
        rows.append(tuple(row))
    return MixedArray((q,) * (q + 1), tuple(rows))


def mca_optimum(t: int, types: TypeVector) -> MixedArray:
    """Optimum index-1 mixed covering array of strength t on t+1 columns.

    Columns come out sorted by size, smallest first. Rows are the full
    factorial of the t largest columns with the smallest column set to
    their sum mod its size, giving N = prod(t largest) rows: the minimum
    possible. The t largest columns cover every t-tuple exactly once.
    """
    types = tuple(sorted(types))
    if len(types) != t + 1:
        raise DomainError(f"needs exactly k = t+1 = {t + 1} columns, got {len(types)}")
    if t < 1:
        raise DomainError("strength must be at least 1")
    if types[0] < 2:
        raise DomainError("every column needs at least 2 levels")
    v1 = types[0]
    rows = tuple(
        (sum(x) % v1,) + x for x in itertools.product(*(range(v) for v in types[1:]))
    )
    return MixedArray(types, rows)


def stack(array: MixedArray, copies: int) -> MixedArray:
    """Vertical concatenation of ``copies`` copies; the coverage index adds."""
    if copies < 1:
        raise DomainError("need at least one copy")
    return MixedArray(array.types, array.rows * copies)


def insert_expand(
    a: MixedArray, b: MixedArray, col: int, e: int
) -> MixedArray:
    """Grow column ``col`` of a strength-t array by ``e`` fresh levels.

    ``a`` must be a covering array of strength t and ``b`` one of strength
    t-1 on ``a``'s types with column ``col`` removed. The result appends,
    for each fresh level, a copy of ``b`` with that level inserted as a
    constant column, giving a strength-t covering array on the widened
    type with ``a.n + e * b.n`` rows. Only the type compatibility is
    checked here; coverage of the inputs is the caller's contract.
    """
    if not 1 <= col <= a.k:
        raise DomainError(f"column {col} out of range 1..{a.k}")
    if e < 1:
        raise DomainError("need at least one fresh level")
    reduced = a.types[: col - 1] + a.types[col:]
    if b.types != reduced:
        raise DomainError(
            f"type mismatch: second array has {b.types}, expected {reduced} "
            f"(first array's types without column {col})"
        )
    v = a.types[col - 1]
    rows = list(a.rows)
    for r in range(1, e + 1):
        fresh = v - 1 + r
        for row in b.rows:
            rows.append(row[: col - 1] + (fresh,) + row[col - 1 :])
    types = a.types[: col - 1] + (v + e,) + a.types[col:]
    return MixedArray(types, tuple(rows))


def kronecker(a: MixedArray, b: MixedArray) -> MixedArray:
    """Row-block product of two arrays with the same column count.

    Each row of ``a`` is paired with every row of ``b``; the entry pair
    (x, y) in column j is flattened to the single level x * u_j + y where
    u_j is ``b``'s column size, so the output stays an integer-leveled
    array of type (v_1 u_1, ..., v_k u_k) with a.n * b.n rows. When both
    inputs are super-simple optimum covering arrays of indices d1+1 and
    d2+1, the product is an optimum ((d1+1)(d2+1)-1, t)-detecting array.
    """
    if a.k != b.k:
        raise DomainError(f"column counts differ: {a.k} vs {b.k}")
    u = b.types
    types = tuple(va * ub for va, ub in zip(a.types, u))
    rows = tuple(
        tuple(x * u[j] + y for j, (x, y) in enumerate(zip(ra, rb)))
        for ra in a.rows
        for rb in b.rows
    )
    return MixedArray(types, rows)


def replicate_cyclic(a: MixedArray, d: int) -> MixedArray:
    """Stack d copies of ``a``, cyclically shifting its smallest column.

    ``a`` must be an optimum index-1 covering array of strength k-1 (one
    more column than the strength), with its t largest columns covering
    every t-tuple exactly once; that exact coverage is verified here. Copy
    i adds i (mod v_min) to every entry of the smallest column. The result
    is a super-simple index-d covering array, hence an optimum
    (d-1, k-1)-detecting array for d >= 2. Requires d <= v_min; no larger
    replication can exist.
    """
    if a.k < 2:
        raise DomainError("need at least 2 columns")
    shift = min(range(a.k), key=lambda j: a.types[j])
    v_min = a.types[shift]
    if d < 1:
        raise DomainError("d must be at least 1")
    if d > v_min:
        raise InfeasibleParametersError(
            f"replication depth {d} exceeds the smallest level count {v_min}; "
            f"no detecting array of this form exists"
        )
    others = [j for j in range(a.k) if j != shift]
    seen = set()
    for row in a.rows:
        key = tuple(row[j] for j in others)
        if key in seen:
            raise DomainError(
                "input must cover every tuple of its larger columns exactly once"
            )
        seen.add(key)
    if len(seen) != math.prod(a.types[j] for j in others):
        raise DomainError(
            "input must cover every tuple of its larger columns exactly once"
        )
    rows = []
    for i in range(d):
        for row in a.rows:
            shifted = list(row)
            shifted[shift] = (row[shift] + i) % v_min
            rows.append(tuple(shifted))
    return MixedArray(a.types, tuple(rows))


def derive_super_simple(a: MixedArray, lam: int) -> MixedArray:
    """Cut an index-1 orthogonal array down to a super-simple index-lam one.

    ``a`` must be an index-1 orthogonal array of some strength s over a
    uniform alphabet of size m (verified here: uniform type, m^s rows, no
    repeated projection on any s columns). Keeping the rows whose last
    column is below ``lam`` and dropping that column yields a super-simple
    orthogonal array of strength s-1 and index lam with lam * m^(s-1)
    rows. ``lam`` must lie in 2..m.
    """
    m = a.types[0]
    if any(v != m for v in a.types):
        raise DomainError("input must have a uniform alphabet")
    if not 2 <= lam <= m:
        raise DomainError(f"index must satisfy 2 <= lam <= {m}, got {lam}")
    s = round(math.log(a.n, m))
    if m**s != a.n or not 2 <= s <= a.k:
        raise DomainError(
            f"input is not an index-1 orthogonal array: {a.n} rows over "
            f"alphabet {m} match no usable strength"
        )
    for cols in itertools.combinations(range(a.k), s):
        projections = {tuple(row[c] for c in cols) for row in a.rows}
        if len(projections) != a.n:
            raise DomainError(
                f"input is not an index-1 orthogonal array: columns "
                f"{tuple(c + 1 for c in cols)} repeat a projection"
            )
    rows = tuple(row[:-1] for row in a.rows if row[-1] < lam)
    return MixedArray((m,) * (a.k - 1), rows)
