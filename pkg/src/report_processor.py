"""Data processing and aggregation for the Streamlit dashboard."""

from pathlib import Path
from typing import List, Optional, Union

import pandas as pd
import streamlit as st

from src.config import REPORTS_PATH
from src.verify import REPORT_FIELDS, STATUSES


@st.cache_data(ttl=600, show_spinner="Loading reports...")
def load_reports(path: Optional[str] = None) -> pd.DataFrame:
    """Load stored suite reports (.parquet or .csv) with caching."""
    return read_report_file(path or REPORTS_PATH)


def read_report_file(path: Union[str, Path]) -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        return pd.DataFrame(columns=REPORT_FIELDS)
    if path.suffix == ".csv":
        df = pd.read_csv(path, dtype={"counterexample_coefficient": str}, keep_default_na=False)
        df["counterexample_exponent"] = pd.to_numeric(df["counterexample_exponent"], errors="coerce").astype("Int64")
        if "start" in df.columns:
            df["start"] = pd.to_numeric(df["start"], errors="coerce").astype("Int64")
    else:
        df = pd.read_parquet(path, engine="pyarrow")
    df["kind"] = ["legacy" if ell == 0 else "theorem" for ell in df["ell"]]
    return df


def filter_reports(
    df: pd.DataFrame,
    entries: Optional[List[str]] = None,
    statuses: Optional[List[str]] = None,
    kinds: Optional[List[str]] = None,
    ell_values: Optional[List[int]] = None,
    include_extended: bool = True,
) -> pd.DataFrame:
    """Apply sidebar filters to a report DataFrame."""
    if df.empty:
        return df

    filtered = df.copy()

    if entries:
        filtered = filtered[filtered["entry_id"].isin(entries)]

    if statuses:
        filtered = filtered[filtered["status"].isin(statuses)]

    if kinds and "kind" in filtered.columns:
        filtered = filtered[filtered["kind"].isin(kinds)]

    if ell_values:
        filtered = filtered[filtered["ell"].isin(ell_values)]

    if not include_extended:
        filtered = filtered[~filtered["extended"].astype(bool)]

    return filtered


def get_kpi_metrics(df: pd.DataFrame) -> dict:
    """Headline counts for a set of reports."""
    if df.empty:
        return {
            "total_reports": 0,
            "entries": 0,
            **{status: 0 for status in STATUSES},
            "pass_rate": 0.0,
            "max_order": 0,
        }

    counts = df["status"].value_counts()
    metrics = {
        "total_reports": len(df),
        "entries": df["entry_id"].nunique(),
        "max_order": int(df["order"].max()),
    }
    for status in STATUSES:
        metrics[status] = int(counts.get(status, 0))
    decided = metrics["pass"] + metrics["fail"]
    metrics["pass_rate"] = metrics["pass"] / decided * 100 if decided else 0.0
    return metrics


def get_status_by_entry(df: pd.DataFrame) -> pd.DataFrame:
    """Report counts per (entry, status), entries in catalog file order."""
    if df.empty:
        return pd.DataFrame()

    agg = (
        df.groupby(["entry_id", "status"], sort=False)
        .agg(count=("family", "count"), checked=("checked_indices", "sum"))
        .reset_index()
    )
    return agg


def get_status_by_modulus(df: pd.DataFrame) -> pd.DataFrame:
    """Report counts per (modulus, status)."""
    if df.empty:
        return pd.DataFrame()

    agg = (
        df.groupby(["modulus", "status"])
        .agg(count=("entry_id", "count"), entries=("entry_id", "nunique"))
        .reset_index()
        .sort_values("modulus")
    )
    return agg


def get_failures(df: pd.DataFrame) -> pd.DataFrame:
    """Failed reports with their first counterexample."""
    if df.empty:
        return pd.DataFrame()

    cols = ["entry_id", "ell", "t", "family", "modulus", "residue",
            "counterexample_exponent", "counterexample_coefficient"]
    return df[df["status"] == "fail"][cols].reset_index(drop=True)
