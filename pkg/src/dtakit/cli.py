"""Command-line shell: bound, verify, search, compose, locate, catalog, export.

Arrays travel between commands as text documents (see
:mod:`dtakit.textfmt`). Exit codes: 0 success, 1 error or failed
verification, 2 search budget exhausted. ``DTA_MAX_ENUM`` caps brute-force
enumeration sizes.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import catalog as cat
from .core import DomainError, Interaction, MixedArray
from .construct import (
    derive_super_simple,
    insert_expand,
    kronecker,
    mca_optimum,
    oa_bush,
    oa_sum,
    replicate_cyclic,
)
from .locate import Identified, Inconsistent, TooManyFaults, locate_faults
from .search import SearchConfig, sa_search
from .textfmt import ArrayDocument, FormatError, export_suite, parse, serialize
from .verify import (
    EnumerationCapError,
    InfeasibleParametersError,
    VerifyReport,
    check_search_constraints,
    coverage_index,
    is_detecting,
    is_detecting_brute,
    is_super_simple,
    lower_bound,
)


def _parse_types(text: str) -> tuple[int, ...]:
    try:
        types = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise DomainError(f"--type expects comma-separated integers, got {text!r}") from None
    if not types:
        raise DomainError("--type must list at least one column size")
    return types


def _load_doc(path: str) -> ArrayDocument:
    return parse(Path(path).read_text(encoding="utf-8"))


def _interaction_json(interaction: Interaction) -> list[list[int]]:
    return [[c, level] for c, level in interaction.pins]


def _jsonable(obj):
    if isinstance(obj, Interaction):
        return {"pins": _interaction_json(obj)}
    if isinstance(obj, VerifyReport):
        return {
            "name": obj.name,
            "verdict": obj.verdict,
            "witness": _jsonable(obj.witness),
            "stats": _jsonable(obj.stats),
        }
    if isinstance(obj, dict):
        return {str(key): _jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [_jsonable(value) for value in obj]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    return obj


def _emit(payload, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(_jsonable(payload), indent=2))
    else:
        print(text)


def _fault_label(doc: ArrayDocument, interaction: Interaction) -> str:
    parts = []
    for col, level in interaction.pins:
        factor = doc.factor_names.get(col, f"col{col}")
        name = doc.level_names.get(col, {}).get(level, str(level))
        parts.append(f"{factor}={name}")
    return ", ".join(parts)


def _cmd_bound(args) -> int:
    types = _parse_types(args.type)
    value = lower_bound(args.d, args.t, types)
    _emit({"lower_bound": value, "types": list(types), "d": args.d, "t": args.t},
          args.json, str(value))
    return 0


def _cmd_verify(args) -> int:
    doc = _load_doc(args.array)
    d = args.d if args.d is not None else doc.d
    t = args.t if args.t is not None else doc.t
    array = doc.array
    report = is_detecting(array, d, t)
    ss = is_super_simple(array, t)
    payload = {
        "detecting": report,
        "super_simple": ss.verdict,
        "coverage_index": report.stats["coverage_index"],
    }
    lines = [
        f"detecting(d={d}, t={t}): {report.verdict}",
        f"coverage index at t={t}: {report.stats['coverage_index']}",
        f"size {array.n} vs lower bound {report.stats['lower_bound']}"
        f" (optimum: {report.stats['optimum']})",
        f"super-simple at t={t}: {ss.verdict}",
    ]
    ok = report.verdict
    if not report.verdict:
        lines.append(f"witness: {report.witness}")
    if args.brute:
        brute = is_detecting_brute(array, d, t)
        payload["brute"] = brute
        lines.append(f"brute-force check: {brute.verdict}")
        ok = ok and brute.verdict == report.verdict
    _emit(payload, args.json, "\n".join(lines))
    return 0 if ok else 1


def _search_doc(array: MixedArray) -> ArrayDocument:
    return ArrayDocument(array=array, t=2, d=1, lam=coverage_index(array, 2))


def _cmd_search(args) -> int:
    if (args.d, args.t) != (1, 2):
        raise DomainError(
            "search supports (d, t) = (1, 2) only; build higher-d arrays by "
            "composing with the compose subcommands"
        )
    types = _parse_types(args.type)
    config = SearchConfig(
        types=types,
        n=args.n,
        seed=args.seed or 0,
        max_iters=args.max_iters,
        restarts=args.restarts,
        accept_prob=args.p,
        force=args.force,
    )
    report = sa_search(config)
    summary = {
        "outcome": report.outcome,
        "wall_clock_s": round(report.wall_clock, 3),
        "chains": report.chains,
        "constraints": check_search_constraints(types, 1, 2).stats["status"],
    }
    if report.outcome != "found":
        _emit(summary, args.json, f"exhausted after {len(report.chains)} chain(s)")
        return 2
    doc = _search_doc(report.array)
    if args.json:
        summary["document"] = serialize(doc)
        print(json.dumps(_jsonable(summary), indent=2))
    else:
        sys.stdout.write(serialize(doc))
        chain = report.chains[-1]
        print(
            f"found in {chain.iterations} iterations "
            f"(chain seed {chain.seed}, {report.wall_clock:.2f}s)",
            file=sys.stderr,
        )
    return 0


def _cmd_compose(args) -> int:
    if args.builder == "kron":
        a, b = _load_doc(args.a), _load_doc(args.b)
        if a.t != b.t:
            raise DomainError(f"strength mismatch: {a.t} vs {b.t}")
        out = kronecker(a.array, b.array)
        d = (a.d + 1) * (b.d + 1) - 1
        lam = a.lam * b.lam if a.lam and b.lam else None
        doc = ArrayDocument(array=out, t=a.t, d=d, lam=lam)
    elif args.builder == "sumcol":
        out = mca_optimum(args.t, _parse_types(args.type))
        doc = ArrayDocument(array=out, t=args.t, d=0, lam=1)
    elif args.builder == "insert":
        a, b = _load_doc(args.a), _load_doc(args.b)
        out = insert_expand(a.array, b.array, args.col, args.e)
        doc = ArrayDocument(array=out, t=a.t, d=0, lam=None)
    elif args.builder == "replicate":
        a = _load_doc(args.a)
        out = replicate_cyclic(a.array, args.d)
        doc = ArrayDocument(array=out, t=a.array.k - 1, d=args.d - 1, lam=args.d)
    elif args.builder == "oa":
        out = oa_sum(args.t, args.q) if args.sum else oa_bush(args.t, args.q)
        doc = ArrayDocument(array=out, t=args.t, d=0, lam=1)
    elif args.builder == "derive-ss":
        a = _load_doc(args.a)
        out = derive_super_simple(a.array, args.lam)
        doc = ArrayDocument(array=out, t=a.array.k - 2, d=args.lam - 1, lam=args.lam)
    else:  # unreachable: argparse restricts choices
        raise DomainError(f"unknown builder {args.builder!r}")
    sys.stdout.write(serialize(doc))
    return 0


def _cmd_locate(args) -> int:
    doc = _load_doc(args.array)
    raw = Path(args.outcomes).read_text(encoding="utf-8").split()
    if any(token not in ("P", "F") for token in raw):
        bad = next(token for token in raw if token not in ("P", "F"))
        raise DomainError(f"outcomes file must hold P/F lines, got {bad!r}")
    outcomes = tuple(token == "P" for token in raw)
    result = locate_faults(
        doc.array, args.d, args.t, outcomes, verify=not args.no_verify
    )
    if isinstance(result, Identified):
        faults = sorted(result.faults, key=lambda i: i.pins)
        text = (
            "no faults: every test passed"
            if not faults
            else "identified fault(s):\n"
            + "\n".join(f"  {_fault_label(doc, f)}" for f in faults)
        )
        payload = {"result": "identified", "faults": faults}
    elif isinstance(result, TooManyFaults):
        text = (
            f"more than {args.d} interaction fault(s) detected "
            f"({len(result.candidates)} candidates fit the failures)"
        )
        payload = {"result": "too_many_faults", "candidates": result.candidates}
    else:
        assert isinstance(result, Inconsistent)
        text = (
            "outcome explained by no interaction set of size "
            f"<= {args.d}; unexplained failing rows: {list(result.unexplained)}"
        )
        payload = {"result": "inconsistent", "unexplained": result.unexplained}
    _emit(payload, args.json, text)
    return 0


def _cmd_catalog(args) -> int:
    if args.action == "list":
        entries = [cat.get(entry_id) for entry_id in cat.ids()]
        text = "\n".join(f"{e.id:16} {e.kind:8} {e.provenance}" for e in entries)
        _emit({"entries": entries}, args.json, text)
        return 0
    entry = cat.get(args.id)
    if entry.kind == "array":
        assert entry.document is not None
        if args.json:
            print(json.dumps(_jsonable(entry), indent=2))
        else:
            sys.stdout.write(serialize(entry.document))
    else:
        payload = {"targets": entry.targets}
        text = "\n".join(
            f"N={t.n:3} {t.pattern:14} a={t.min_a}..{t.max_a}" for t in entry.targets
        )
        _emit(payload, args.json, text)
    return 0


def _cmd_export(args) -> int:
    doc = _load_doc(args.array)
    out = export_suite(doc, numeric=args.numeric)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--seed", type=int, default=None, help="RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dta",
        description="generate, verify, compose, and apply mixed-level detecting arrays",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("bound", help="size lower bound for (d, t) on a type")
    p.add_argument("--type", required=True, help="comma-separated column sizes")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--t", type=int, default=2)
    _add_common(p)
    p.set_defaults(func=_cmd_bound)

    p = subs.add_parser("verify", help="check the detecting property of an array file")
    p.add_argument("array")
    p.add_argument("--d", type=int, default=None, help="defaults to the file header")
    p.add_argument("--t", type=int, default=None, help="defaults to the file header")
    p.add_argument("--brute", action="store_true", help="also run the brute-force oracle")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("search", help="anneal for a (1, 2)-detecting array")
    p.add_argument("--type", required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--n", type=int, default=None, help="target rows (default: the bound)")
    p.add_argument("--max-iters", type=int, default=200_000)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--p", type=float, default=0.01, help="acceptance probability")
    p.add_argument("--force", action="store_true", help="ignore known infeasibility caps")
    _add_common(p)
    p.set_defaults(func=_cmd_search)

    p = subs.add_parser("compose", help="deterministic array constructions")
    builders = p.add_subparsers(dest="builder", required=True)

    b = builders.add_parser("kron", help="row-block product of two array files")
    b.add_argument("a")
    b.add_argument("b")
    _add_common(b)

    b = builders.add_parser("sumcol", help="optimum strength-t covering array on t+1 columns")
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--type", required=True)
    _add_common(b)

    b = builders.add_parser("insert", help="widen one column using a lower-strength array")
    b.add_argument("a")
    b.add_argument("b")
    b.add_argument("--col", type=int, required=True)
    b.add_argument("--e", type=int, default=1)
    _add_common(b)

    b = builders.add_parser("replicate", help="stack cyclically shifted copies")
    b.add_argument("a")
    b.add_argument("--d", type=int, required=True)
    _add_common(b)

    b = builders.add_parser("oa", help="orthogonal array (polynomial or sum-column)")
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--sum", action="store_true", help="sum-column construction (t+1 columns)")
    _add_common(b)

    b = builders.add_parser("derive-ss", help="super-simple index-lambda array from an index-1 OA")
    b.add_argument("a")
    b.add_argument("--lambda", dest="lam", type=int, required=True)
    _add_common(b)

    p.set_defaults(func=_cmd_compose)

    p = subs.add_parser("locate", help="recover faults from a P/F outcomes file")
    p.add_argument("array")
    p.add_argument("outcomes")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--no-verify", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_locate)

    p = subs.add_parser("catalog", help="built-in verified arrays")
    actions = p.add_subparsers(dest="action", required=True)
    a = actions.add_parser("list")
    _add_common(a)
    a = actions.add_parser("show")
    a.add_argument("id")
    _add_common(a)
    p.set_defaults(func=_cmd_catalog)

    p = subs.add_parser("export", help="render an array file as a named CSV test plan")
    p.add_argument("array")
    p.add_argument("--numeric", action="store_true", help="fall back to raw level indices")
    p.add_argument("-o", "--output", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        DomainError,
        InfeasibleParametersError,
        EnumerationCapError,
        FormatError,
        KeyError,
        FileNotFoundError,
        cat.CatalogIntegrityError,
    ) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
