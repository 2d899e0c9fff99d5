"""Command-line front end: expand, extract, identity, verify, suite, catalog.

Exit codes: 0 success, 1 verification failure, 2 usage/parse error or unknown id,
3 only degenerate or vacuous instances, 4 arithmetic error while expanding.
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from src.catalog import (
    CatalogError,
    SideConditionError,
    SweepConfig,
    TheoremEntry,
    admissible_t,
    catalog_to_frame,
    check_manifest,
    get_entry,
    load_catalog_file,
)
from src.config import DEFAULT_ELL_VALUES, LEGACY_ORDER, load_default_order
from src.expression import ParseError, evaluate
from src.identities import IDENTITY_GROUPS, compress, extract, is_vanishing, run_identity_suite
from src.series import QSeries, dense
from src.verify import (
    FAIL,
    KNOWN_ERRATUM,
    PASS,
    format_table,
    run_suite,
    summarize,
    verify_instance,
    write_records,
    write_reports,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_ARITHMETIC = 4

# the basics group reports each of these separately
BASIC_IDENTITIES = ("symmetry", "f-one", "f-minus-one")
IDENTITY_CHOICES = IDENTITY_GROUPS + BASIC_IDENTITIES + ("all",)


def build_parser() -> argparse.ArgumentParser:
    default_order = load_default_order()
    parser = argparse.ArgumentParser(
        prog="qseries",
        description="Exact q-series expansion and vanishing-coefficient verification",
    )
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--catalog", default=None, help="Catalog CSV (default: data/theorems.csv)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["table", "records"], default="table")
        p.add_argument("--out", default=None, help="Write output to a file (.jsonl, .csv or .parquet)")

    p = sub.add_parser("expand", help="Print the coefficients of a product expression")
    p.add_argument("expression")
    p.add_argument("--order", type=int, default=default_order)
    add_output(p)

    p = sub.add_parser("extract", help="Coefficients of an expression in one residue class")
    p.add_argument("expression")
    p.add_argument("--k", type=int, required=True, help="Modulus")
    p.add_argument("--l", type=int, required=True, help="Residue")
    p.add_argument("--compress", action="store_true", help="Re-index the class as a series in q")
    p.add_argument("--order", type=int, default=default_order)
    add_output(p)

    p = sub.add_parser("identity", help="Check the theta identities")
    p.add_argument("name", choices=IDENTITY_CHOICES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", type=int, default=None, help="Override every group's order")
    add_output(p)

    for name, help_text in (("verify", "Verify one catalog entry"), ("suite", "Verify the whole catalog")):
        p = sub.add_parser(name, help=help_text)
        if name == "verify":
            p.add_argument("--entry", required=True)
            p.add_argument("--t", type=int, action="append", default=None, help="Repeatable")
        else:
            p.add_argument("--entry", action="append", default=None, help="Restrict to ids (repeatable)")
            p.add_argument("--workers", type=int, default=None)
        p.add_argument("--order", type=int, default=default_order)
        p.add_argument("--legacy-order", type=int, default=LEGACY_ORDER)
        p.add_argument("--ell", type=int, action="append", default=None, help="Repeatable")
        p.add_argument("--t-max", type=int, default=None)
        p.add_argument("--allow-degenerate-t", action="store_true",
                       help="Include t outside 0 < a t < s ell, 0 < b t < k ell")
        add_output(p)

    p = sub.add_parser("catalog", help="List catalog entries")
    p.add_argument("--check", action="store_true", help="Fail if a labelled result is missing")
    add_output(p)
    return parser


def _print_series(x: QSeries, fmt: str, start: Optional[int] = None) -> None:
    lo = x.min_exp if start is None else start
    rows = [(e, c) for e, c in zip(range(lo, x.order + 1), dense(x, lo))]
    if fmt == "records":
        for e, c in rows:
            print(json.dumps({"exponent": e, "coefficient": c}))
    else:
        for e, c in rows:
            print(f"{e:>6}  {c}")


def cmd_expand(args) -> int:
    x = evaluate(args.expression, args.order)
    _print_series(x, args.format, start=min(x.min_exp, 0))
    return EXIT_OK


def cmd_extract(args) -> int:
    x = evaluate(args.expression, args.order)
    part = compress(x, args.k, args.l) if args.compress else extract(x, args.k, args.l)
    _print_series(part, args.format, start=min(part.min_exp, 0))
    result = is_vanishing(x, args.k, args.l)
    logger.info(f"Class {args.l % args.k} mod {args.k}: {result.status} ({result.checked} indices)")
    return EXIT_OK


def cmd_identity(args) -> int:
    if args.name == "all":
        groups = IDENTITY_GROUPS
    elif args.name in BASIC_IDENTITIES:
        groups = ("basics",)
    else:
        groups = (args.name,)
    overrides = {}
    if args.order is not None:
        overrides = {
            "jtpi_order": args.order, "entry30_order": args.order,
            "cube_order": args.order, "dissection_order": args.order,
        }
    frame = run_identity_suite(groups, seed=args.seed, **overrides)
    if args.name in BASIC_IDENTITIES:
        frame = frame[frame["identity"] == args.name].reset_index(drop=True)
    if args.out:
        frame.to_csv(args.out, index=False)
    elif args.format == "records":
        print(frame.to_json(orient="records", lines=True))
    else:
        print(frame.to_string(index=False))
    failed = int((~frame["holds"].astype(bool)).sum())
    print(f"{len(frame) - failed}/{len(frame)} identity instances hold")
    return EXIT_FAILURE if failed else EXIT_OK


def _sweep_config(args) -> SweepConfig:
    return SweepConfig(
        ell_values=tuple(args.ell) if args.ell else DEFAULT_ELL_VALUES,
        t_values=tuple(args.t) if getattr(args, "t", None) else None,
        t_max=args.t_max,
        order=args.order,
        legacy_order=args.legacy_order,
        allow_extended=args.allow_degenerate_t,
    )


def _exit_code(summary: dict) -> int:
    if summary[FAIL]:
        return EXIT_FAILURE
    if summary[PASS] == 0 and summary[KNOWN_ERRATUM] == 0:
        return EXIT_DEGENERATE
    return EXIT_OK


def _emit_reports(reports, summary, args) -> None:
    if args.out:
        write_reports(reports, summary, args.out)
    elif args.format == "records":
        write_records(reports, summary, sys.stdout)
    else:
        print(format_table(reports))
        print(
            f"\n{summary['total']} reports: {summary[PASS]} pass, {summary[FAIL]} fail, "
            f"{summary['vacuous']} vacuous, {summary['skipped-degenerate']} skipped, "
            f"{summary[KNOWN_ERRATUM]} known errata"
        )


def cmd_verify(args) -> int:
    entries = load_catalog_file(args.catalog)
    entry = get_entry(entries, args.entry)
    config = _sweep_config(args)
    if not isinstance(entry, TheoremEntry):
        reports = verify_instance(entry, order=args.legacy_order)
    else:
        reports = []
        for ell in config.ell_values:
            # explicit --t values bypass the sweep filters
            t_values = config.t_values or admissible_t(entry, ell, config)
            for t in t_values:
                reports.extend(verify_instance(entry, ell, t, config.order))
        reports.sort(key=lambda r: r.sort_key)
    summary = summarize(reports)
    _emit_reports(reports, summary, args)
    return _exit_code(summary)


def cmd_suite(args) -> int:
    entries = load_catalog_file(args.catalog)
    reports, summary = run_suite(entries, _sweep_config(args), selection=args.entry, workers=args.workers)
    _emit_reports(reports, summary, args)
    return _exit_code(summary)


def cmd_catalog(args) -> int:
    entries = load_catalog_file(args.catalog)
    if args.check:
        check_manifest(entries)
        logger.info(f"Catalog complete: {len(entries)} entries")
    df = catalog_to_frame(entries)
    if args.out:
        df.to_csv(args.out, index=False)
    elif args.format == "records":
        print(df.to_json(orient="records", lines=True))
    else:
        print(df[["id", "kind", "p", "statement"]].to_string(index=False))
    return EXIT_OK


COMMANDS = {
    "expand": cmd_expand,
    "extract": cmd_extract,
    "identity": cmd_identity,
    "verify": cmd_verify,
    "suite": cmd_suite,
    "catalog": cmd_catalog,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.getLogger().setLevel(logging.DEBUG if args.verbose else logging.INFO)
    if getattr(args, "order", None) is not None and args.order < 1:
        logger.error(f"--order must be >= 1, got {args.order}")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except ParseError as e:
        logger.error(f"Parse error: {e}")
        return EXIT_USAGE
    except KeyError as e:
        logger.error(str(e.args[0]) if e.args else "Unknown name")
        return EXIT_USAGE
    except (CatalogError, SideConditionError, ValueError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except ArithmeticError as e:
        logger.error(f"Arithmetic error: {e}")
        return EXIT_ARITHMETIC
