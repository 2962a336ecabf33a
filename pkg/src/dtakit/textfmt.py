"""Plain-text array documents and CSV test-plan export.

One array per document::

    DTA 1
    N=18 k=4 t=2 d=1 lambda=2
    types=2 3 3 3
    0 0 0 0
    ... (N rows of k space-separated levels) ...
    # factor col=1 Function scope
    # name col=1 0=Current

The ``lambda=`` token and the trailing ``# factor`` / ``# name`` lines are
optional; names run to the end of the line and may contain spaces. The
declared t, d, and lambda are advisory metadata: nothing trusts them
without re-verification. Levels are 0-based, columns 1-based, lines
LF-terminated; parse and serialize are exact inverses on canonical text,
and ``parse(serialize(doc)) == doc`` always.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .core import DomainError, MixedArray


class FormatError(ValueError):
    """Malformed document text; the message carries the offending line."""


@dataclass(frozen=True)
class ArrayDocument:
    """A mixed array plus declared metadata and optional display names.

    ``level_names`` maps 1-based column -> level -> name and
    ``factor_names`` maps 1-based column -> name.
    """

    array: MixedArray
    t: int
    d: int
    lam: int | None = None
    factor_names: dict[int, str] = field(default_factory=dict)
    level_names: dict[int, dict[int, str]] = field(default_factory=dict)
    version: int = 1

    def __post_init__(self) -> None:
        k = self.array.k
        if not 1 <= self.t <= k:
            raise DomainError(f"declared t={self.t} outside 1..{k}")
        if self.d < 0:
            raise DomainError("declared d must be >= 0")
        if self.lam is not None and self.lam < 1:
            raise DomainError("declared lambda must be >= 1 when present")
        for col, name in self.factor_names.items():
            _check_name(self.array, col, None, name)
        for col, levels in self.level_names.items():
            for level, name in levels.items():
                _check_name(self.array, col, level, name)


def _check_name(array: MixedArray, col: int, level: int | None, name: str) -> None:
    if not 1 <= col <= array.k:
        raise DomainError(f"named column {col} out of range 1..{array.k}")
    if level is not None and not 0 <= level < array.types[col - 1]:
        raise DomainError(
            f"named level {level} outside 0..{array.types[col - 1] - 1} in column {col}"
        )
    if not name or "\n" in name:
        raise DomainError(f"invalid name {name!r} (empty or multi-line)")


def parse(text: str) -> ArrayDocument:
    """Parse a document, range-checking every entry; errors cite the line."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    def fail(ln: int, message: str):
        raise FormatError(f"line {ln}: {message}")

    if not lines:
        raise FormatError("line 1: empty document")
    if lines[0] != "DTA 1":
        fail(1, f"expected header 'DTA 1', got {lines[0]!r}")
    if len(lines) < 3:
        raise FormatError("line 2: document truncated before the size header")

    tokens = lines[1].split()
    keys = [tok.split("=", 1)[0] for tok in tokens]
    expected = ["N", "k", "t", "d"]
    if keys[: len(expected)] != expected or len(tokens) > 5 or (
        len(tokens) == 5 and keys[4] != "lambda"
    ):
        fail(2, f"expected 'N=.. k=.. t=.. d=..' with optional 'lambda=..', got {lines[1]!r}")
    try:
        values = {tok.split("=", 1)[0]: int(tok.split("=", 1)[1]) for tok in tokens}
    except (ValueError, IndexError):
        fail(2, f"non-integer value in {lines[1]!r}")
    n, k = values["N"], values["k"]

    if not lines[2].startswith("types="):
        fail(3, f"expected 'types=v1 v2 ...', got {lines[2]!r}")
    try:
        types = tuple(int(tok) for tok in lines[2][len("types="):].split())
    except ValueError:
        fail(3, f"non-integer column size in {lines[2]!r}")
    if len(types) != k:
        fail(3, f"{len(types)} column sizes for k={k}")
    if any(v < 1 for v in types):
        fail(3, "column sizes must be at least 1")

    if len(lines) < 3 + n:
        raise FormatError(f"line {len(lines) + 1}: expected {n} rows, found {len(lines) - 3}")
    rows = []
    for offset in range(n):
        ln = 4 + offset
        try:
            row = tuple(int(tok) for tok in lines[3 + offset].split())
        except ValueError:
            fail(ln, f"non-integer entry in {lines[3 + offset]!r}")
        if len(row) != k:
            fail(ln, f"row has {len(row)} entries, expected {k}")
        for j, (x, v) in enumerate(zip(row, types), start=1):
            if not 0 <= x < v:
                fail(ln, f"column {j}: level {x} outside 0..{v - 1}")
        rows.append(row)

    factor_names: dict[int, str] = {}
    level_names: dict[int, dict[int, str]] = {}
    for offset, line in enumerate(lines[3 + n :]):
        ln = 4 + n + offset
        if line.startswith("# factor col="):
            rest = line[len("# factor col="):]
            col_tok, _, name = rest.partition(" ")
            col = _parse_int(col_tok, ln, "column")
            _checked_name(types, col, None, name, ln)
            factor_names[col] = name
        elif line.startswith("# name col="):
            rest = line[len("# name col="):]
            col_tok, _, assignment = rest.partition(" ")
            col = _parse_int(col_tok, ln, "column")
            level_tok, eq, name = assignment.partition("=")
            if not eq:
                fail(ln, f"expected '<level>=<name>', got {assignment!r}")
            level = _parse_int(level_tok, ln, "level")
            _checked_name(types, col, level, name, ln)
            level_names.setdefault(col, {})[level] = name
        else:
            fail(ln, f"unexpected trailing line {line!r}")

    doc = ArrayDocument(
        array=MixedArray(types, tuple(rows)),
        t=values["t"],
        d=values["d"],
        lam=values.get("lambda"),
        factor_names=factor_names,
        level_names=level_names,
    )
    return doc


def _parse_int(token: str, ln: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {ln}: non-integer {what} {token!r}") from None


def _checked_name(types, col: int, level: int | None, name: str, ln: int) -> None:
    if not 1 <= col <= len(types):
        raise FormatError(f"line {ln}: column {col} out of range 1..{len(types)}")
    if level is not None and not 0 <= level < types[col - 1]:
        raise FormatError(
            f"line {ln}: level {level} outside 0..{types[col - 1] - 1} in column {col}"
        )
    if not name:
        raise FormatError(f"line {ln}: empty name")


def serialize(doc: ArrayDocument) -> str:
    """Canonical text: fixed header, rows, then sorted name lines, LF-ended."""
    array = doc.array
    header = f"N={array.n} k={array.k} t={doc.t} d={doc.d}"
    if doc.lam is not None:
        header += f" lambda={doc.lam}"
    out = ["DTA 1", header, "types=" + " ".join(str(v) for v in array.types)]
    out.extend(" ".join(str(x) for x in row) for row in array.rows)
    for col in sorted(doc.factor_names):
        out.append(f"# factor col={col} {doc.factor_names[col]}")
    for col in sorted(doc.level_names):
        for level in sorted(doc.level_names[col]):
            out.append(f"# name col={col} {level}={doc.level_names[col][level]}")
    return "\n".join(out) + "\n"


def export_suite(doc: ArrayDocument, *, numeric: bool = False) -> str:
    """Render the array as a comma-separated test plan with named levels.

    The header row holds factor names (``f<j>`` where unnamed); each data
    row holds one test's level names. Without ``numeric``, every
    (column, level) pair of the alphabet must be named, and the error for
    a partial map lists the missing pairs; with ``numeric``, cells carry
    the raw level indices instead. Output is LF-terminated UTF-8.
    """
    array = doc.array
    if not numeric:
        missing = [
            (col, level)
            for col in range(1, array.k + 1)
            for level in range(array.types[col - 1])
            if doc.level_names.get(col, {}).get(level) is None
        ]
        if missing:
            listed = ", ".join(f"(col {c}, level {x})" for c, x in missing)
            raise DomainError(
                f"level-name map is missing {listed}; pass numeric=True to "
                f"fall back to raw indices"
            )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        doc.factor_names.get(col, f"f{col}") for col in range(1, array.k + 1)
    )
    for row in array.rows:
        if numeric:
            writer.writerow(str(level) for level in row)
        else:
            writer.writerow(
                doc.level_names[col][level] for col, level in enumerate(row, start=1)
            )
    return buf.getvalue()
