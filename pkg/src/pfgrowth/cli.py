"""pfgrowth command-line interface.

Usage:
    pfgrowth analyze --catalog fibonacci --nmax 30 --out-csv fib.csv
    pfgrowth analyze --algebra alg.json --element X1 --out-report report.json
    pfgrowth catalog list
    pfgrowth catalog describe extraspecial
    pfgrowth validate alg.json
    pfgrowth export --catalog dihedral --m 5 --out d5.json

Exit codes:
    0: success
    1: input error or any other library error (reported by class name)
    2: the Perron-Frobenius property fails (unsupported general case)
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import catalog
from .analysis import (
    DEFAULT_NMAX,
    MAX_NMAX,
    analyze,
    entry_meta,
    subject_from_document,
    subject_from_entry,
    summary_lines,
)
from .errors import GrowthError, MatrixOnlyEntry, PFPropertyViolation, UnknownEntry
from .formats import (
    algebra_to_dict,
    chartable_to_dict,
    dumps_document,
    dumps_report,
    load_document,
    matrix_to_dict,
    ratio_csv,
    write_text,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PF_VIOLATION = 2


def _catalog_params(args) -> dict:
    return {"m": args.m, "p": args.p, "k": args.k}


def _add_catalog_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--catalog", metavar="NAME", help="built-in family: " + ", ".join(catalog.FAMILIES))
    p.add_argument("--m", type=int, help="dihedral order parameter or extraspecial m")
    p.add_argument("--p", type=int, help="prime for extraspecial / sl2-modular")
    p.add_argument("--k", type=int, help="Verlinde level")
    p.add_argument("--mm", type=int, help="alias of --m (extraspecial exponent)")


def _resolve_params(args) -> dict:
    params = _catalog_params(args)
    if args.mm is not None:
        if args.m is not None and args.m != args.mm:
            raise GrowthError("--m and --mm disagree")
        params["m"] = args.mm
    return params


def _load_subject(args):
    sources = [s for s in (args.catalog, args.algebra, args.chartable, args.matrix) if s]
    if len(sources) != 1:
        raise GrowthError("give exactly one of --catalog, --algebra, --chartable, --matrix")
    if args.catalog:
        entry = catalog.get_entry(args.catalog, **_resolve_params(args))
        return subject_from_entry(entry, args.element)
    if args.algebra:
        doc = load_document(args.algebra, "algebra")
    elif args.chartable:
        doc = load_document(args.chartable, "chartable")
    else:
        doc = load_document(args.matrix, "matrix")
    return subject_from_document(doc, args.element)


def cmd_analyze(args) -> int:
    if not 0 <= args.nmax <= MAX_NMAX:
        raise GrowthError(f"--nmax must lie in [0, {MAX_NMAX}]")
    subject = _load_subject(args)
    report, rows = analyze(subject, args.nmax, strict_faithful=args.strict_faithful)
    if args.out_report:
        write_text(args.out_report, dumps_report(report))
    if args.out_csv:
        write_text(args.out_csv, ratio_csv(rows))
    for line in summary_lines(report):
        print(line)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        for fam in catalog.FAMILIES.values():
            params = ", ".join(f"{k}: {v}" for k, v in fam.params.items()) or "none"
            print(f"{fam.name:14s} params [{params}]  exactness: {fam.exactness}")
        return EXIT_OK
    if not args.name:
        raise GrowthError("catalog describe needs a family name")
    try:
        fam = catalog.FAMILIES[args.name]
    except KeyError:
        raise UnknownEntry(
            f"unknown catalog entry {args.name!r}; known: {', '.join(catalog.FAMILIES)}"
        ) from None
    print(fam.name)
    print(f"  {fam.summary}")
    params = ", ".join(f"{k}: {v}" for k, v in fam.params.items()) or "none"
    print(f"  parameters: {params}")
    print(f"  expected formula: {fam.formula}")
    print(f"  exactness: {fam.exactness}")
    if fam.caveats:
        print(f"  caveats: {fam.caveats}")
    return EXIT_OK


def cmd_validate(args) -> int:
    doc = load_document(args.path)
    if doc.kind != "algebra":
        print(f"{args.path}: valid {doc.kind} document")
        return EXIT_OK
    alg = doc.algebra
    print(f"{args.path}: valid based algebra of rank {alg.rank}")
    print(f"  commutative: {alg.commutative}")
    print(f"  associativity checked: {alg.associativity_checked}")
    if args.require_commutative and not alg.commutative:
        print("  error: algebra is not commutative", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_export(args) -> int:
    entry = catalog.get_entry(args.catalog, **_resolve_params(args))
    meta = entry_meta(entry)
    fmt = args.format
    if fmt == "auto":
        if entry.character_table is not None:
            fmt = "chartable"
        elif entry.algebra is not None:
            fmt = "algebra"
        else:
            fmt = "matrix"
    if fmt == "chartable":
        if entry.character_table is None:
            raise GrowthError(f"{entry.title} has no character table")
        doc = chartable_to_dict(entry.character_table, entry.character_element, meta)
    elif fmt == "algebra":
        if entry.algebra is None:
            raise MatrixOnlyEntry(f"{entry.title} has no structure tensor")
        doc = algebra_to_dict(entry.algebra, entry.element, meta)
    else:
        doc = matrix_to_dict(entry.matrix, meta)
    text = dumps_document(doc)
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfgrowth", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="growth analysis of one element")
    _add_catalog_args(p)
    p.add_argument("--algebra", metavar="PATH", help="algebra JSON")
    p.add_argument("--chartable", metavar="PATH", help="character-table JSON")
    p.add_argument("--matrix", metavar="PATH", help="raw action-matrix JSON")
    p.add_argument("--element", metavar="LABEL|CSV",
                   help="basis label or comma separated coefficients")
    p.add_argument("--nmax", type=int, default=DEFAULT_NMAX,
                   help=f"largest n (default {DEFAULT_NMAX}, at most {MAX_NMAX})")
    p.add_argument("--out-report", metavar="PATH", help="write the JSON report here")
    p.add_argument("--out-csv", metavar="PATH", help="write the n,b,a,ratio table here")
    p.add_argument("--strict-faithful", action="store_true",
                   help="fail on a non-faithful representation instead of falling back")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("catalog", help="list or describe built-in families")
    p.add_argument("action", choices=["list", "describe"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("validate", help="check an input file")
    p.add_argument("path")
    p.add_argument("--require-commutative", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("export", help="write a catalog entry as JSON")
    _add_catalog_args(p)
    p.add_argument("--format", choices=["auto", "algebra", "chartable", "matrix"], default="auto")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "export" and not args.catalog:
        parser.error("export needs --catalog")
    try:
        return args.func(args)
    except PFPropertyViolation as exc:
        print(f"PFPropertyViolation: {exc}", file=sys.stderr)
        print("Version 3 of the asymptotic formula (Jordan blocks at the leading "
              "eigenvalue) is not supported.", file=sys.stderr)
        return EXIT_PF_VIOLATION
    except GrowthError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, KeyError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
