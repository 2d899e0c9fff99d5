"""Run catalog sweeps, check vanishing with negative controls, and serialize reports."""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple, Union

import pandas as pd

from src.catalog import (
    CatalogEntry,
    LegacyEntry,
    SweepConfig,
    TheoremEntry,
    admissible_t,
    get_entry,
    instantiate,
    is_standard_t,
)
from src.families import family_series, is_degenerate, legacy_series
from src.identities import FAILS, VACUOUS, VANISHES, is_vanishing
from src.config import load_default_order
from src.series import QSeries, terms

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
STATUS_VACUOUS = "vacuous"
SKIPPED = "skipped-degenerate"
KNOWN_ERRATUM = "known-erratum"
STATUSES = (PASS, FAIL, STATUS_VACUOUS, SKIPPED, KNOWN_ERRATUM)

CONTROL_OK = "nonzero-elsewhere-confirmed"
CONTROL_WARN = "all-zero-warning"

_STATUS_FROM_CHECK = {VANISHES: PASS, FAILS: FAIL, VACUOUS: STATUS_VACUOUS}


@dataclass(frozen=True)
class VerificationReport:
    entry_id: str
    ell: int
    t: int
    family: str
    order: int
    modulus: int
    residue: int
    checked_indices: int
    status: str
    counterexample_exponent: Optional[int] = None
    counterexample_coefficient: Optional[int] = None
    control_status: str = CONTROL_WARN
    extended: bool = False
    start: Optional[int] = None

    @property
    def counterexample(self) -> Optional[Tuple[int, int]]:
        if self.counterexample_exponent is None:
            return None
        return self.counterexample_exponent, self.counterexample_coefficient

    @property
    def sort_key(self) -> Tuple:
        start = -1 if self.start is None else self.start
        return self.entry_id, self.ell, self.t, self.family, self.residue, start


REPORT_FIELDS = [f.name for f in fields(VerificationReport)]


def negative_control(x: QSeries, k: int, l: int) -> str:
    """Confirm a nonzero coefficient outside the class l (mod k)."""
    l %= k
    for e, _ in terms(x):
        if e % k != l:
            return CONTROL_OK
    return CONTROL_WARN


def check_series(
    x: QSeries,
    *,
    entry_id: str,
    ell: int,
    t: int,
    family: str,
    order: int,
    modulus: int,
    residue: int,
    start: Optional[int] = None,
    extended: bool = False,
) -> VerificationReport:
    """Vanishing check plus control for one expanded series."""
    result = is_vanishing(x, modulus, residue, start=start)
    control = negative_control(x, modulus, residue)
    status = _STATUS_FROM_CHECK[result.status]
    if status == PASS and (control != CONTROL_OK or result.checked < 1):
        status = STATUS_VACUOUS
    return VerificationReport(
        entry_id=entry_id,
        ell=ell,
        t=t,
        family=family,
        order=order,
        modulus=modulus,
        residue=residue % modulus,
        checked_indices=result.checked,
        status=status,
        counterexample_exponent=result.exponent,
        counterexample_coefficient=result.coefficient,
        control_status=control,
        extended=extended,
        start=start,
    )


def _verify_theorem(entry: TheoremEntry, ell: int, t: int, order: int) -> List[VerificationReport]:
    extended = not is_standard_t(entry, ell, t)
    reports = []
    for spec, (p, l) in instantiate(entry, ell, t):
        base = dict(entry_id=entry.id, ell=ell, t=t, family=spec.family, order=order, modulus=p, residue=l)
        if is_degenerate(spec):
            logger.warning(f"{entry.id} ell={ell} t={t}: {spec.label()} has a (1 - 1) factor")
            reports.append(VerificationReport(checked_indices=0, status=SKIPPED, extended=extended, **base))
            continue
        try:
            x = family_series(spec, order)
        except ArithmeticError as e:
            logger.warning(f"{entry.id} ell={ell} t={t}: cannot build {spec.label()}: {e}")
            reports.append(VerificationReport(checked_indices=0, status=SKIPPED, extended=extended, **base))
            continue
        report = check_series(x, extended=extended, **base)
        if report.status == FAIL and entry.erratum:
            logger.info(f"{entry.id} {spec.label()}: printed statement fails as recorded")
            report = replace(report, status=KNOWN_ERRATUM)
        elif report.status == FAIL:
            logger.error(
                f"{entry.id} {spec.label()}: coefficient {report.counterexample_coefficient} "
                f"at q^{report.counterexample_exponent} in class {l} mod {p}"
            )
        reports.append(report)
    return reports


def _verify_legacy(entry: LegacyEntry, order: int) -> List[VerificationReport]:
    x = legacy_series(entry.product, order, entry.param_dict or None)
    reports = []
    for start in entry.residues:
        report = check_series(
            x, entry_id=entry.id, ell=0, t=0, family=entry.product, order=order,
            modulus=entry.p, residue=start % entry.p, start=start,
        )
        if report.status == FAIL:
            logger.error(
                f"{entry.id}: coefficient {report.counterexample_coefficient} "
                f"at q^{report.counterexample_exponent} in {entry.p}n+{start}"
            )
        reports.append(report)
    return reports


def verify_instance(
    entry: CatalogEntry, ell: int = 0, t: int = 0, order: Optional[int] = None
) -> List[VerificationReport]:
    """Reports for one instance: one per family, or one per residue for legacy rows.

    Legacy rows ignore ell and t. Raises SideConditionError when gcd(p, t) != 1.
    """
    if isinstance(entry, LegacyEntry):
        return _verify_legacy(entry, order or SweepConfig().legacy_order)
    return _verify_theorem(entry, ell, t, order or load_default_order())


def _run_task(task: Tuple[CatalogEntry, int, int, int]) -> List[VerificationReport]:
    entry, ell, t, order = task
    return verify_instance(entry, ell, t, order)


def plan_tasks(entries: Sequence[CatalogEntry], config: SweepConfig) -> List[Tuple[CatalogEntry, int, int, int]]:
    tasks = []
    for entry in entries:
        if isinstance(entry, LegacyEntry):
            tasks.append((entry, 0, 0, config.legacy_order))
            continue
        for ell in config.ell_values:
            for t in admissible_t(entry, ell, config):
                tasks.append((entry, ell, t, config.order))
    return tasks


def summarize(reports: Sequence[VerificationReport]) -> Dict[str, int]:
    """Counts by status; `ok` is 1 when nothing failed."""
    summary = {status: 0 for status in STATUSES}
    for r in reports:
        summary[r.status] += 1
    summary["total"] = len(reports)
    summary["entries"] = len({r.entry_id for r in reports})
    summary["ok"] = int(summary[FAIL] == 0)
    return summary


def run_suite(
    entries: Sequence[CatalogEntry],
    config: Optional[SweepConfig] = None,
    selection: Optional[Iterable[str]] = None,
    workers: Optional[int] = None,
) -> Tuple[List[VerificationReport], Dict[str, int]]:
    """Verify every selected entry over the sweep; reports sorted by (id, ell, t, family)."""
    config = config or SweepConfig()
    if selection is not None:
        entries = [get_entry(entries, entry_id) for entry_id in selection]
    tasks = plan_tasks(entries, config)
    logger.info(f"Running {len(tasks)} instances over {len(entries)} entries (order {config.order})")

    reports: List[VerificationReport] = []
    if workers and workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for batch in pool.map(_run_task, tasks, chunksize=4):
                reports.extend(batch)
    else:
        for i, task in enumerate(tasks, 1):
            reports.extend(_run_task(task))
            if i % 50 == 0:
                logger.info(f"  {i}/{len(tasks)} instances done")

    reports.sort(key=lambda r: r.sort_key)
    summary = summarize(reports)
    logger.info(
        f"Suite done: {summary[PASS]} pass, {summary[FAIL]} fail, "
        f"{summary[STATUS_VACUOUS]} vacuous, {summary[SKIPPED]} skipped, {summary[KNOWN_ERRATUM]} known errata"
    )
    return reports, summary


# --- Serialization ---

def reports_to_frame(reports: Sequence[VerificationReport]) -> pd.DataFrame:
    """DataFrame with one row per report; counterexample coefficients as strings."""
    df = pd.DataFrame([asdict(r) for r in reports], columns=REPORT_FIELDS)
    df["counterexample_exponent"] = df["counterexample_exponent"].astype("Int64")
    df["start"] = df["start"].astype("Int64")
    df["counterexample_coefficient"] = [
        "" if c is None else str(c) for c in (r.counterexample_coefficient for r in reports)
    ]
    return df


def frame_to_reports(df: pd.DataFrame) -> List[VerificationReport]:
    reports = []
    for row in df.to_dict(orient="records"):
        exp = row.get("counterexample_exponent")
        coef = row.get("counterexample_coefficient")
        start = row.get("start")
        reports.append(VerificationReport(
            entry_id=str(row["entry_id"]),
            ell=int(row["ell"]),
            t=int(row["t"]),
            family=str(row["family"]),
            order=int(row["order"]),
            modulus=int(row["modulus"]),
            residue=int(row["residue"]),
            checked_indices=int(row["checked_indices"]),
            status=str(row["status"]),
            counterexample_exponent=None if pd.isna(exp) else int(exp),
            counterexample_coefficient=None if coef in ("", None) or pd.isna(coef) else int(coef),
            control_status=str(row["control_status"]),
            extended=bool(row["extended"]),
            start=None if pd.isna(start) or start == "" else int(start),
        ))
    return reports


def write_records(reports: Sequence[VerificationReport], summary: Dict[str, int], out: TextIO) -> None:
    """One JSON object per line, then a final {"summary": {...}} line."""
    for r in reports:
        out.write(json.dumps(asdict(r)) + "\n")
    out.write(json.dumps({"summary": summary}) + "\n")


def read_records(text: str) -> Tuple[List[VerificationReport], Dict[str, int]]:
    reports, summary = [], {}
    for line in text.splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        if "summary" in record:
            summary = record["summary"]
        else:
            reports.append(VerificationReport(**record))
    return reports, summary


def format_table(reports: Sequence[VerificationReport]) -> str:
    """Human-readable table of the reports."""
    if not reports:
        return "(no reports)"
    df = reports_to_frame(reports)
    cols = ["entry_id", "ell", "t", "family", "modulus", "residue", "start", "order",
            "checked_indices", "status", "counterexample_exponent", "counterexample_coefficient"]
    return df[cols].to_string(index=False)


def write_reports(
    reports: Sequence[VerificationReport], summary: Dict[str, int], path: Union[str, Path]
) -> Path:
    """Write reports, choosing the format from the suffix (.jsonl, .csv, .parquet)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix == ".parquet":
        reports_to_frame(reports).to_parquet(path, engine="pyarrow", index=False)
    elif path.suffix == ".csv":
        reports_to_frame(reports).to_csv(path, index=False)
    else:
        with open(path, "w") as f:
            write_records(reports, summary, f)
    logger.info(f"Saved {len(reports)} reports to {path}")
    return path
