"""Theorem Catalog page: browse the catalog and run one instance interactively."""

import streamlit as st
import pandas as pd
from src.catalog import CatalogError, SideConditionError, TheoremEntry, catalog_to_frame, is_standard_t, load_catalog_file
from src.config import LEGACY_ORDER, load_default_order
from src.ui_helpers import entry_selector, order_slider
from src.verify import reports_to_frame, summarize, verify_instance


@st.cache_data(ttl=600, show_spinner="Loading catalog...")
def _load_catalog():
    return load_catalog_file()


st.header("Theorem Catalog")

try:
    entries = _load_catalog()
except CatalogError as e:
    st.error(f"Cannot load catalog: {e}")
    st.stop()

# --- Catalog Table ---
catalog_df = catalog_to_frame(entries)
search = st.text_input("Search by id, modulus or note", "")
shown = catalog_df
if search:
    mask = (
        catalog_df["id"].str.contains(search, case=False, regex=False)
        | catalog_df["p"].astype(str).eq(search)
        | catalog_df["note"].str.contains(search, case=False, regex=False)
    )
    shown = catalog_df[mask]
st.caption(f"Showing {len(shown):,} of {len(catalog_df):,} entries")
st.dataframe(shown[["id", "kind", "p", "statement", "note"]], use_container_width=True, hide_index=True, height=350)

st.divider()

# --- Instance Runner ---
entry = entry_selector(entries)
st.subheader(f"Run {entry.id}")
st.code(entry.statement(), language=None)
if entry.note:
    st.info(entry.note)

if isinstance(entry, TheoremEntry):
    order = order_slider("catalog_order", min(load_default_order(), 400))
    col1, col2 = st.columns(2)
    with col1:
        ell = st.number_input("ell", min_value=1, value=1, step=1)
    with col2:
        t = st.number_input("t", min_value=1, value=1, step=1)
    if not is_standard_t(entry, ell, t):
        st.caption("t is outside 0 < a t < s ell, 0 < b t < k ell; the report is marked extended")
else:
    order = order_slider("legacy_order", LEGACY_ORDER, max_value=3000)
    ell, t = 0, 0

if st.button("Verify", type="primary"):
    try:
        with st.spinner("Expanding..."):
            reports = verify_instance(entry, ell, t, order)
    except SideConditionError as e:
        st.error(str(e))
        st.stop()

    summary = summarize(reports)
    col1, col2, col3, col4 = st.columns(4)
    with col1:
        st.metric("Pass", summary["pass"])
    with col2:
        st.metric("Fail", summary["fail"])
    with col3:
        st.metric("Vacuous", summary["vacuous"])
    with col4:
        st.metric("Skipped / Errata", f"{summary['skipped-degenerate']} / {summary['known-erratum']}")

    report_df = reports_to_frame(reports)
    st.dataframe(report_df, use_container_width=True, hide_index=True)
    st.download_button(
        "Download CSV",
        report_df.to_csv(index=False),
        file_name=f"{entry.id}_reports.csv",
        mime="text/csv",
    )
