#!/usr/bin/env python3
"""Run the full verification suite and save the reports for the dashboard.

Usage:
    python scripts/update_reports.py
    python scripts/update_reports.py --order 800 --workers 8
    python scripts/update_reports.py --entry vcres2.0 --entry hirschhorn-a
"""

import argparse
import logging
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.catalog import SweepConfig, load_catalog_file
from src.config import DEFAULT_ELL_VALUES, LEGACY_ORDER, REPORTS_PATH, load_default_order
from src.verify import run_suite, write_reports

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)s] %(message)s",
)


def main():
    parser = argparse.ArgumentParser(description="Verify the theorem catalog and store the reports")
    parser.add_argument("--order", type=int, default=load_default_order(), help="Truncation order for theorem rows")
    parser.add_argument("--legacy-order", type=int, default=LEGACY_ORDER, help="Truncation order for legacy rows")
    parser.add_argument("--ell", type=int, action="append", default=None, help="ell values (repeatable)")
    parser.add_argument("--entry", action="append", default=None, help="Restrict to catalog ids")
    parser.add_argument("--workers", type=int, default=os.cpu_count(), help="Worker processes")
    parser.add_argument("--out", default=str(REPORTS_PATH), help="Output file (.parquet, .csv or .jsonl)")
    args = parser.parse_args()

    config = SweepConfig(
        ell_values=tuple(args.ell) if args.ell else DEFAULT_ELL_VALUES,
        order=args.order,
        legacy_order=args.legacy_order,
    )
    entries = load_catalog_file()
    print(f"\nVerifying {len(entries)} catalog entries (order {config.order}, legacy {config.legacy_order})...")
    reports, summary = run_suite(entries, config, selection=args.entry, workers=args.workers)
    path = write_reports(reports, summary, args.out)

    print(f"Done! {summary['total']} reports written to {path}")
    for status in ("pass", "fail", "vacuous", "skipped-degenerate"):
        print(f"  {status}: {summary[status]}")
    sys.exit(0 if summary["ok"] else 1)


if __name__ == "__main__":
    main()
