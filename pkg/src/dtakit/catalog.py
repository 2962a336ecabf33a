"""Built-in verified arrays and the list of known bound-meeting search targets.

Entries:

* ``table1`` -- the 18-run plan for a four-factor mail-system copy test
  (one two-level and three three-level factors), a published optimum
  (1, 2)-detecting array. Rows keep their published order so the worked
  localization example reproduces row numbers exactly.
* ``example34`` -- a published optimum (2, 2)-detecting array with 48 runs
  of type (3, 3, 3, 4, 4); notable for being detecting without being
  super-simple.
* ``table2-targets`` -- machine-readable parameters of the type families
  known to admit bound-meeting (1, 2)-detecting arrays with at most 30
  runs, as found by annealing search.

Array entries are re-verified (detecting property, declared coverage
index) on first access and the result is cached; a failing entry raises
:class:`CatalogIntegrityError` rather than serving a bad array.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import MixedArray
from .textfmt import ArrayDocument
from .verify import coverage_index, is_detecting, lower_bound


class CatalogIntegrityError(RuntimeError):
    """A shipped entry failed its declared predicate."""


@dataclass(frozen=True)
class SearchTarget:
    """One family of bound-meeting (1, 2) targets: ``fixed`` sizes plus
    ``var_size`` repeated a times, for min_a <= a <= max_a, all of size n."""

    n: int
    pattern: str
    fixed: tuple[int, ...]
    var_size: int
    min_a: int
    max_a: int

    def types_for(self, a: int) -> tuple[int, ...]:
        if not self.min_a <= a <= self.max_a:
            raise ValueError(f"a={a} outside {self.min_a}..{self.max_a} for {self.pattern}")
        return tuple(sorted(self.fixed + (self.var_size,) * a))

    @property
    def types_at_max(self) -> tuple[int, ...]:
        return self.types_for(self.max_a)


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog item: an array document or a list of search targets."""

    id: str
    kind: str  # "array" | "targets"
    provenance: str
    document: ArrayDocument | None = None
    targets: tuple[SearchTarget, ...] = ()


_TABLE1_ROWS = (
    (0, 0, 0, 0),
    (0, 1, 0, 1),
    (1, 0, 1, 1),
    (1, 1, 2, 1),
    (1, 2, 0, 1),
    (1, 2, 2, 2),
    (0, 0, 1, 2),
    (1, 1, 0, 0),
    (0, 1, 1, 0),
    (1, 2, 1, 0),
    (0, 0, 2, 1),
    (0, 2, 2, 0),
    (1, 0, 0, 2),
    (1, 0, 2, 0),
    (0, 2, 1, 1),
    (0, 2, 0, 2),
    (1, 1, 1, 2),
    (0, 1, 2, 2),
)

_TABLE1_FACTORS = {
    1: "Function scope",
    2: "Server type",
    3: "Client type",
    4: "Target content",
}

_TABLE1_LEVELS = {
    1: {0: "Current", 1: "Marked"},
    2: {0: "Share mode", 1: "User mode", 2: "MSNET"},
    3: {0: "MSNET", 1: "Enhanced", 2: "Basic"},
    4: {0: "Empty", 1: "Partial", 2: "Full"},
}

# example34 is stored factor-major as published: two 5 x 24 blocks, one
# sequence per factor; the runs are the 24 columns of the first block
# followed by the 24 of the second.
_EX34_BLOCKS = (
    (
        (1, 2, 0, 0, 2, 0, 2, 2, 1, 0, 0, 1, 1, 2, 1, 2, 0, 2, 0, 0, 1, 0, 1, 2),
        (2, 1, 2, 0, 0, 2, 2, 1, 0, 1, 1, 2, 0, 1, 1, 2, 2, 2, 0, 1, 0, 2, 1, 2),
        (1, 0, 0, 2, 1, 2, 2, 1, 2, 1, 1, 1, 1, 2, 0, 2, 0, 0, 1, 0, 0, 0, 0, 1),
        (2, 3, 1, 2, 1, 3, 3, 0, 1, 1, 2, 3, 0, 2, 0, 1, 3, 0, 2, 1, 3, 2, 0, 0),
        (1, 2, 1, 1, 1, 0, 1, 2, 0, 2, 3, 2, 3, 0, 1, 2, 3, 3, 0, 0, 1, 2, 0, 0),
    ),
    (
        (0, 0, 2, 1, 2, 2, 1, 2, 1, 1, 2, 0, 1, 2, 2, 0, 1, 1, 1, 0, 0, 0, 2, 1),
        (1, 0, 0, 2, 2, 1, 1, 0, 0, 1, 1, 0, 2, 0, 2, 1, 0, 1, 2, 0, 0, 2, 0, 1),
        (1, 2, 2, 0, 2, 0, 2, 1, 0, 1, 0, 2, 2, 1, 1, 2, 0, 2, 1, 2, 0, 1, 0, 2),
        (3, 0, 0, 2, 2, 1, 2, 2, 1, 3, 2, 3, 0, 3, 1, 0, 2, 3, 1, 1, 0, 0, 3, 1),
        (1, 0, 1, 0, 3, 3, 2, 2, 2, 0, 1, 2, 2, 3, 0, 3, 3, 3, 3, 3, 2, 1, 0, 1),
    ),
)


def _ex34_rows() -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(block[f][c] for f in range(5))
        for block in _EX34_BLOCKS
        for c in range(24)
    )


_TARGETS = (
    SearchTarget(8, "2^a", (), 2, 3, 4),
    SearchTarget(12, "2^a 3^1", (3,), 2, 2, 3),
    SearchTarget(16, "2^a 4^1", (4,), 2, 2, 3),
    SearchTarget(18, "2^1 3^a", (2,), 3, 2, 3),
    SearchTarget(18, "2^a 3^2", (3, 3), 2, 1, 4),
    SearchTarget(18, "3^a", (), 3, 3, 6),
    SearchTarget(20, "2^a 5^1", (5,), 2, 2, 3),
    SearchTarget(24, "2^a 6^1", (6,), 2, 2, 3),
    SearchTarget(24, "2^a 3^2 4^1", (3, 3, 4), 2, 0, 1),
    SearchTarget(24, "2^a 3^1 4^1", (3, 4), 2, 1, 4),
    SearchTarget(24, "3^a 4^1", (4,), 3, 2, 5),
    SearchTarget(28, "2^a 7^1", (7,), 2, 2, 3),
    SearchTarget(30, "2^a 3^3 5^1", (3, 3, 3, 5), 2, 0, 1),
    SearchTarget(30, "2^a 3^1 5^1", (3, 5), 2, 1, 4),
    SearchTarget(30, "3^a 5^1", (5,), 3, 2, 5),
)


def _entries() -> dict[str, CatalogEntry]:
    table1 = ArrayDocument(
        array=MixedArray((2, 3, 3, 3), _TABLE1_ROWS),
        t=2,
        d=1,
        lam=2,
        factor_names=dict(_TABLE1_FACTORS),
        level_names={c: dict(m) for c, m in _TABLE1_LEVELS.items()},
    )
    example34 = ArrayDocument(
        array=MixedArray((3, 3, 3, 4, 4), _ex34_rows()),
        t=2,
        d=2,
        lam=3,
    )
    return {
        "table1": CatalogEntry(
            id="table1",
            kind="array",
            provenance="literature: 18-run pairwise plan for a mail-system "
            "copy-function test, optimum single-fault-locating",
            document=table1,
        ),
        "example34": CatalogEntry(
            id="example34",
            kind="array",
            provenance="literature: 48-run optimum two-fault-locating plan of "
            "type 3^3 4^2; locates faults without being super-simple",
            document=example34,
        ),
        "table2-targets": CatalogEntry(
            id="table2-targets",
            kind="targets",
            provenance="literature: annealing-search results for bound-meeting "
            "(1,2) arrays with at most 30 runs",
            targets=_TARGETS,
        ),
    }


_CATALOG = _entries()
_VERIFIED: dict[str, str] = {}


def ids() -> tuple[str, ...]:
    return tuple(_CATALOG)


def verification_status(entry_id: str) -> str | None:
    """Cached verification state: 'ok', or None when not yet checked."""
    return _VERIFIED.get(entry_id)


def _verify(entry: CatalogEntry) -> None:
    if entry.kind == "array":
        doc = entry.document
        assert doc is not None
        report = is_detecting(doc.array, doc.d, doc.t)
        if not report.verdict:
            raise CatalogIntegrityError(
                f"catalog entry {entry.id!r} fails its detecting check: {report.witness}"
            )
        if doc.lam is not None and coverage_index(doc.array, doc.t) != doc.lam:
            raise CatalogIntegrityError(
                f"catalog entry {entry.id!r} declares coverage index {doc.lam} "
                f"but measures {coverage_index(doc.array, doc.t)}"
            )
    else:
        for target in entry.targets:
            for a in range(target.min_a, target.max_a + 1):
                types = target.types_for(a)
                if len(types) < 3:
                    raise CatalogIntegrityError(
                        f"target {target.pattern} at a={a} has fewer than 3 columns"
                    )
                if lower_bound(1, 2, types) != target.n:
                    raise CatalogIntegrityError(
                        f"target {target.pattern} at a={a} has bound "
                        f"{lower_bound(1, 2, types)}, declared {target.n}"
                    )


def get(entry_id: str) -> CatalogEntry:
    """Fetch a catalog entry, verifying it on first access."""
    try:
        entry = _CATALOG[entry_id]
    except KeyError:
        raise KeyError(
            f"unknown catalog id {entry_id!r}; known: {', '.join(_CATALOG)}"
        ) from None
    if entry_id not in _VERIFIED:
        _verify(entry)
        _VERIFIED[entry_id] = "ok"
    return entry


def load_array(entry_id: str) -> MixedArray:
    """Convenience accessor for the array of a verified array entry."""
    entry = get(entry_id)
    if entry.document is None:
        raise KeyError(f"catalog entry {entry_id!r} is not an array")
    return entry.document.array
