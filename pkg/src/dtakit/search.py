"""Simulated-annealing search for (1, 2)-detecting arrays.

The annealer works on the conflict count: over every 2-way interaction T
and every one-column extension E of it, the number of pairs whose covered
row counts coincide. Since an extension's rows are always a subset of the
parent's, equal counts mean equal row sets, and a zero conflict count is
exactly the (1, 2)-detecting property (it also forces every interaction
to be covered twice). The move is the classic in-column swap, which keeps
each column's level multiset fixed; a constant acceptance probability
(default 0.01) is applied to non-improving moves, with no cooling
schedule. Search for d > 1 or t > 2 is deliberately not provided; the
composition builders in :mod:`dtakit.construct` are the route there.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .core import DomainError, MixedArray, TypeVector
from .verify import (
    InfeasibleParametersError,
    check_search_constraints,
    is_detecting,
    lower_bound,
)


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one search run.

    ``n`` defaults to the size lower bound for (1, 2) on ``types``.
    ``restarts`` independent chains run with seeds seed, seed+1, ...; the
    first success wins. ``force`` skips the known-caps feasibility gate.
    ``paranoid`` re-derives the objective from scratch after every accepted
    move (slow; meant for tests).
    """

    types: TypeVector
    n: int | None = None
    seed: int = 0
    max_iters: int = 200_000
    restarts: int = 8
    accept_prob: float = 0.01
    force: bool = False
    paranoid: bool = False


@dataclass(frozen=True)
class ChainTrace:
    """Objective trace summary of one annealing chain."""

    seed: int
    initial_conflicts: int
    best_conflicts: int
    iterations: int
    found: bool


@dataclass(frozen=True)
class SearchReport:
    """Result of :func:`sa_search`.

    ``outcome`` is ``"found"`` (with the verified array) or ``"exhausted"``
    (never a nonexistence claim). Wall-clock time is informational and
    excluded from equality, so identical seeds give equal reports.
    """

    outcome: str
    array: MixedArray | None
    chains: tuple[ChainTrace, ...]
    wall_clock: float = field(compare=False, default=0.0)


class ObjectiveTracker:
    """Incrementally maintained conflict count for one working array.

    Keeps cover counts for every column-pair cell and every column-triple
    cell. Each triple cell, paired with each of its three sub-pair cells,
    is one term of the objective; the term conflicts when the two counts
    are equal. Swapping two entries inside column c only perturbs cells
    that pin c at one of the two touched rows, so an update inspects a
    handful of terms instead of re-scoring the array.
    """

    def __init__(self, types: TypeVector, rows) -> None:
        types = tuple(types)
        k = len(types)
        if k < 3:
            raise DomainError(
                "the conflict objective needs k >= 3 (2-way interactions must extend)"
            )
        self.types = types
        self.k = k
        self.rows = [list(r) for r in rows]
        self.n = len(self.rows)

        # cell layout: contiguous blocks per column pair / triple
        pair_base: dict[tuple[int, int], int] = {}
        off = 0
        for i, j in itertools.combinations(range(k), 2):
            pair_base[(i, j)] = off
            off += types[i] * types[j]
        self.cnt2 = [0] * off
        triple_base: dict[tuple[int, int, int], int] = {}
        off3 = 0
        for cols in itertools.combinations(range(k), 3):
            triple_base[cols] = off3
            off3 += types[cols[0]] * types[cols[1]] * types[cols[2]]
        self.cnt3 = [0] * off3

        # per-column cell addressing for the swap update
        self._pair_info: list[list[tuple[int, int, int, int]]] = [[] for _ in range(k)]
        for i, j in pair_base:
            base = pair_base[(i, j)]
            self._pair_info[i].append((j, base, types[j], 1))
            self._pair_info[j].append((i, base, 1, types[j]))
        self._triple_info: list[list[tuple[int, int, int, int, int, int]]] = [
            [] for _ in range(k)
        ]
        for (i, j, l), base in triple_base.items():
            si, sj, sl = types[j] * types[l], types[l], 1
            self._triple_info[i].append((j, l, base, si, sj, sl))
            self._triple_info[j].append((i, l, base, sj, si, sl))
            self._triple_info[l].append((i, j, base, sl, si, sj))

        # term wiring: triple cell -> its three parent pair cells
        parents: list[tuple[int, int, int]] = [(0, 0, 0)] * off3
        children: list[list[int]] = [[] for _ in range(off)]
        for (i, j, l), base in triple_base.items():
            vi, vj, vl = types[i], types[j], types[l]
            bij = pair_base[(i, j)]
            bil = pair_base[(i, l)]
            bjl = pair_base[(j, l)]
            tc = base
            for a in range(vi):
                for b in range(vj):
                    for c in range(vl):
                        p1 = bij + a * vj + b
                        p2 = bil + a * vl + c
                        p3 = bjl + b * vl + c
                        parents[tc] = (p1, p2, p3)
                        children[p1].append(tc)
                        children[p2].append(tc)
                        children[p3].append(tc)
                        tc += 1
        self._parents = parents
        self._children = [tuple(ch) for ch in children]

        for row in self.rows:
            for i, j in pair_base:
                self.cnt2[pair_base[(i, j)] + row[i] * types[j] + row[j]] += 1
            for (i, j, l), base in triple_base.items():
                self.cnt3[
                    base + (row[i] * types[j] + row[j]) * types[l] + row[l]
                ] += 1

        cnt2 = self.cnt2
        self.conflicts = sum(
            (c3 == cnt2[p1]) + (c3 == cnt2[p2]) + (c3 == cnt2[p3])
            for c3, (p1, p2, p3) in zip(self.cnt3, parents)
        )

    def swap_delta(self, col: int, r1: int, r2: int):
        """Conflict count after swapping rows r1, r2 in ``col`` (0-based).

        Returns ``(new_conflicts, pair_deltas, triple_deltas)`` without
        mutating anything; feed the deltas to :meth:`commit_swap` to apply.
        Cells where the two rows agree on every other involved column
        cancel out and are skipped up front.
        """
        rows = self.rows
        row1 = rows[r1]
        row2 = rows[r2]
        a = row1[col]
        b = row2[col]
        pd: dict[int, int] = {}
        td: dict[int, int] = {}
        for other, base, s_self, s_other in self._pair_info[col]:
            x1 = row1[other]
            x2 = row2[other]
            if x1 == x2:
                continue
            a_off = a * s_self
            b_off = b * s_self
            cell = base + x1 * s_other
            pd[cell + a_off] = pd.get(cell + a_off, 0) - 1
            pd[cell + b_off] = pd.get(cell + b_off, 0) + 1
            cell = base + x2 * s_other
            pd[cell + b_off] = pd.get(cell + b_off, 0) - 1
            pd[cell + a_off] = pd.get(cell + a_off, 0) + 1
        for o1, o2, base, s_self, s1, s2 in self._triple_info[col]:
            x11 = row1[o1]
            x12 = row1[o2]
            x21 = row2[o1]
            x22 = row2[o2]
            if x11 == x21 and x12 == x22:
                continue
            a_off = a * s_self
            b_off = b * s_self
            cell = base + x11 * s1 + x12 * s2
            td[cell + a_off] = td.get(cell + a_off, 0) - 1
            td[cell + b_off] = td.get(cell + b_off, 0) + 1
            cell = base + x21 * s1 + x22 * s2
            td[cell + b_off] = td.get(cell + b_off, 0) - 1
            td[cell + a_off] = td.get(cell + a_off, 0) + 1
        # terms whose triple cell changed (pair side adjusted as needed),
        # then terms whose pair cell changed under an unchanged triple cell
        cnt2 = self.cnt2
        cnt3 = self.cnt3
        shift = 0
        for tc, dt in td.items():
            c3_old = cnt3[tc]
            c3_new = c3_old + dt
            for pc in self._parents[tc]:
                c2_old = cnt2[pc]
                c2_new = c2_old + pd.get(pc, 0)
                shift += (c3_new == c2_new) - (c3_old == c2_old)
        for pc, dp in pd.items():
            c2_old = cnt2[pc]
            c2_new = c2_old + dp
            for tc in self._children[pc]:
                if tc in td:
                    continue
                c3 = cnt3[tc]
                shift += (c3 == c2_new) - (c3 == c2_old)
        return self.conflicts + shift, pd, td

    def commit_swap(self, col, r1, r2, pd, td, new_conflicts) -> None:
        rows = self.rows
        rows[r1][col], rows[r2][col] = rows[r2][col], rows[r1][col]
        for c, delta in pd.items():
            self.cnt2[c] += delta
        for c, delta in td.items():
            self.cnt3[c] += delta
        self.conflicts = new_conflicts

    def snapshot(self) -> MixedArray:
        return MixedArray(self.types, tuple(tuple(r) for r in self.rows))


def sa_objective(array: MixedArray) -> int:
    """Conflict count of ``array``: zero iff it is a (1, 2)-detecting array.

    Counts (2-way interaction, extension) pairs whose covered-row counts
    are equal. Requires k >= 3 so that extensions exist.
    """
    return ObjectiveTracker(array.types, array.rows).conflicts


def _balanced_rows(types: TypeVector, n: int, rng: random.Random) -> list[list[int]]:
    """Random start whose columns carry near-uniform level multisets.

    Swap moves never change a column's multiset, and bound-meeting arrays
    need balanced columns, so the chain starts inside the right orbit.
    """
    cols = []
    for v in types:
        col = [level for level in range(v) for _ in range(n // v)]
        col.extend(range(n % v))
        rng.shuffle(col)
        cols.append(col)
    return [[col[r] for col in cols] for r in range(n)]


def _run_chain(
    types: TypeVector,
    n: int,
    seed: int,
    max_iters: int,
    p: float,
    paranoid: bool,
) -> tuple[ChainTrace, list[list[int]]]:
    rng = random.Random(seed)
    tracker = ObjectiveTracker(types, _balanced_rows(types, n, rng))
    if paranoid:
        start_multisets = [sorted(r[j] for r in tracker.rows) for j in range(len(types))]
    initial = tracker.conflicts
    best = initial
    k = len(types)
    iters = 0
    while tracker.conflicts > 0 and iters < max_iters:
        iters += 1
        while True:
            col = rng.randrange(k)
            r1 = rng.randrange(n)
            r2 = rng.randrange(n)
            if r1 != r2 and tracker.rows[r1][col] != tracker.rows[r2][col]:
                break
        new_conflicts, pd, td = tracker.swap_delta(col, r1, r2)
        if new_conflicts < tracker.conflicts or rng.random() < p:
            tracker.commit_swap(col, r1, r2, pd, td, new_conflicts)
            if paranoid:
                fresh = ObjectiveTracker(types, tracker.rows).conflicts
                assert fresh == tracker.conflicts, (
                    f"incremental conflicts {tracker.conflicts} != recomputed {fresh}"
                )
                now = [sorted(r[j] for r in tracker.rows) for j in range(k)]
                assert now == start_multisets, "swap changed a column multiset"
            if new_conflicts < best:
                best = new_conflicts
    found = tracker.conflicts == 0
    return (
        ChainTrace(seed, initial, min(best, tracker.conflicts), iters, found),
        tracker.rows,
    )


def sa_search(config: SearchConfig) -> SearchReport:
    """Anneal until a (1, 2)-detecting array of the target size appears.

    Runs up to ``config.restarts`` independent chains; the success of the
    lowest-seeded successful chain is returned, verified through
    :func:`dtakit.verify.is_detecting` before being reported. Identical
    configurations give identical reports. Raises if the target size is
    below the lower bound or (unless ``force``) if a known cap rules the
    type out; returns outcome ``"exhausted"`` when the budget runs out.
    """
    start = time.perf_counter()
    types = tuple(config.types)
    if len(types) < 3:
        raise DomainError("search needs k >= 3 columns")
    bound = lower_bound(1, 2, types)
    n = config.n if config.n is not None else bound
    if n < bound:
        raise InfeasibleParametersError(
            f"target size {n} is below the size lower bound "
            f"{bound} = (d+1) * (product of the t largest level counts)"
        )
    if not 0.0 <= config.accept_prob <= 1.0:
        raise DomainError("accept_prob must lie in [0, 1]")
    if config.max_iters < 1:
        raise DomainError("max_iters must be at least 1")
    if config.restarts < 1:
        raise DomainError("restarts must be at least 1")
    gate = check_search_constraints(types, 1, 2)
    if not gate.verdict and not config.force:
        raise InfeasibleParametersError(
            "a known cap rules out this type: "
            + "; ".join(gate.witness)
            + " (pass force=True / --force to search anyway)"
        )
    chains: list[ChainTrace] = []
    found: MixedArray | None = None
    for i in range(config.restarts):
        trace, rows = _run_chain(
            types, n, config.seed + i, config.max_iters, config.accept_prob,
            config.paranoid,
        )
        chains.append(trace)
        if trace.found:
            found = MixedArray(types, tuple(tuple(r) for r in rows))
            break
    elapsed = time.perf_counter() - start
    if found is None:
        return SearchReport("exhausted", None, tuple(chains), elapsed)
    report = is_detecting(found, 1, 2)
    if not report.verdict:  # zero conflicts guarantees this; re-checked anyway
        raise RuntimeError("zero-conflict array failed verification")
    return SearchReport("found", found, tuple(chains), elapsed)
