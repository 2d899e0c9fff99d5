"""Suite Results page: KPIs and charts over a stored verification run."""

import streamlit as st
import plotly.express as px
from src.report_processor import (
    filter_reports,
    get_failures,
    get_kpi_metrics,
    get_status_by_entry,
    get_status_by_modulus,
    load_reports,
)

STATUS_COLORS = {
    "pass": "#4ECDC4",
    "fail": "#FF6B6B",
    "vacuous": "#FFA500",
    "skipped-degenerate": "#95a5a6",
    "known-erratum": "#9B59B6",
}

st.header("Suite Results")

df = load_reports()
if df.empty:
    st.warning("No suite reports yet. Run `python scripts/update_reports.py` first.")
    st.stop()

# --- Sidebar ---
st.sidebar.header("Filters")
kinds = st.sidebar.multiselect("Kind", ["theorem", "legacy"], default=["theorem", "legacy"])
statuses = st.sidebar.multiselect("Status", list(STATUS_COLORS), default=list(STATUS_COLORS))
ell_options = sorted(v for v in df["ell"].unique() if v > 0)
ell_values = st.sidebar.multiselect("ell", ell_options, default=ell_options)
include_extended = st.sidebar.checkbox("Include extended t", value=True)
entries = st.sidebar.multiselect("Entries", list(dict.fromkeys(df["entry_id"])), default=[])

filtered = filter_reports(
    df,
    entries=entries or None,
    statuses=statuses,
    kinds=kinds,
    ell_values=(ell_values + [0]) if "legacy" in kinds else ell_values,
    include_extended=include_extended,
)

# --- KPI Metrics ---
kpis = get_kpi_metrics(filtered)
col1, col2, col3, col4, col5 = st.columns(5)
with col1:
    st.metric("Reports", f"{kpis['total_reports']:,}")
with col2:
    st.metric("Entries", f"{kpis['entries']:,}")
with col3:
    st.metric("Pass", f"{kpis['pass']:,}", f"{kpis['pass_rate']:.1f}% of decided", delta_color="off")
with col4:
    st.metric("Fail", f"{kpis['fail']:,}")
with col5:
    st.metric("Vacuous / Skipped", f"{kpis['vacuous']:,} / {kpis['skipped-degenerate']:,}")

failures = get_failures(filtered)
if not failures.empty:
    st.error(f"{len(failures)} failing reports")
    st.dataframe(failures, use_container_width=True, hide_index=True)

st.divider()

# --- Status by Entry ---
st.subheader("Status by Entry")
by_entry = get_status_by_entry(filtered)
if not by_entry.empty:
    fig1 = px.bar(
        by_entry,
        x="entry_id",
        y="count",
        color="status",
        barmode="stack",
        color_discrete_map=STATUS_COLORS,
        labels={"entry_id": "Entry", "count": "Reports", "status": "Status"},
    )
    fig1.update_layout(
        template="plotly_dark",
        height=450,
        margin=dict(l=40, r=40, t=40, b=120),
        xaxis_tickangle=-60,
        legend=dict(orientation="h", yanchor="bottom", y=1.02, xanchor="center", x=0.5),
    )
    st.plotly_chart(fig1, use_container_width=True)

# --- Status by Modulus ---
st.subheader("Status by Modulus")
by_modulus = get_status_by_modulus(filtered)
if not by_modulus.empty:
    by_modulus["modulus"] = by_modulus["modulus"].astype(str)
    fig2 = px.bar(
        by_modulus,
        x="modulus",
        y="count",
        color="status",
        barmode="stack",
        color_discrete_map=STATUS_COLORS,
        hover_data=["entries"],
        labels={"modulus": "Modulus p", "count": "Reports", "status": "Status"},
    )
    fig2.update_layout(
        template="plotly_dark",
        height=400,
        margin=dict(l=40, r=40, t=40, b=40),
        xaxis_type="category",
    )
    st.plotly_chart(fig2, use_container_width=True)

st.divider()

# --- Raw Reports ---
st.subheader("Reports")
st.caption(f"Showing {len(filtered):,} of {len(df):,} reports")
st.dataframe(filtered, use_container_width=True, hide_index=True, height=500)

st.download_button(
    "Download CSV",
    filtered.to_csv(index=False),
    file_name="suite_reports.csv",
    mime="text/csv",
)
