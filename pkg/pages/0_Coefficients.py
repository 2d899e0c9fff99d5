"""Coefficients page: expand a product expression, highlight one residue class, export CSV."""

import streamlit as st
import numpy as np
import pandas as pd
import plotly.graph_objects as go
from src.config import load_default_order
from src.expression import ParseError, evaluate
from src.identities import is_vanishing
from src.series import dense
from src.ui_helpers import order_slider

EXAMPLES = {
    "Rogers-Ramanujan G(q)": "(q,q^4;q^5)^-1",
    "Hirschhorn a(n)": "hirschhorn-a",
    "X family, a=1 b=2 s=5 k=15": "X(1,2,5,15,1,2,1)",
    "Cube of f(q,q^2)": "f(q,q^2)^3",
    "Andrews-Bressoud r=2 k=7": "andrews-bressoud[r=2,k=7]",
}

st.header("Coefficients")
st.caption("Exact integer coefficients of a product of Pochhammer blocks, theta functions and q-powers")

# --- Sidebar ---
st.sidebar.header("Settings")
example = st.sidebar.selectbox("Example", list(EXAMPLES))
order = order_slider("coeff_order", min(load_default_order(), 500))
modulus = st.sidebar.number_input("Modulus k", min_value=1, value=5, step=1)
residue = st.sidebar.number_input("Residue l", min_value=0, value=2, step=1)

expression = st.text_input("Expression", EXAMPLES[example])

try:
    x = evaluate(expression, order)
except ParseError as e:
    st.error(f"Parse error: {e}")
    st.stop()
except (ArithmeticError, ValueError, KeyError) as e:
    st.error(f"Cannot expand: {e}")
    st.stop()

start = min(x.min_exp, 0)
exponents = np.arange(start, x.order + 1)
coeffs = dense(x, start)
in_class = (exponents - residue) % modulus == 0
result = is_vanishing(x, modulus, residue)

# --- KPI Metrics ---
col1, col2, col3, col4 = st.columns(4)
with col1:
    st.metric("Order", f"{x.order:,}")
with col2:
    st.metric("Nonzero Terms", f"{sum(1 for c in coeffs if c):,}")
with col3:
    st.metric(f"Class {residue % modulus} mod {modulus}", result.status)
with col4:
    st.metric("Checked Indices", f"{result.checked:,}")

if result.exponent is not None:
    st.warning(f"First nonzero coefficient in the class: {result.coefficient} at q^{result.exponent}")

st.divider()

# --- Coefficient Chart ---
st.subheader("Coefficients")
log_scale = st.checkbox("Signed log scale", value=max((abs(c) for c in coeffs), default=0) > 1000)
values = [float(np.sign(c) * np.log10(1 + abs(c))) if log_scale else float(c) for c in coeffs]

fig = go.Figure()
fig.add_trace(go.Bar(
    x=exponents[~in_class],
    y=np.array(values)[~in_class],
    name="other classes",
    marker_color="#95a5a6",
))
fig.add_trace(go.Bar(
    x=exponents[in_class],
    y=np.array(values)[in_class],
    name=f"n = {residue % modulus} mod {modulus}",
    marker_color="#FF6B6B",
))
fig.update_layout(
    template="plotly_dark",
    height=450,
    barmode="overlay",
    xaxis_title="Exponent",
    yaxis_title="sign * log10(1 + |c|)" if log_scale else "Coefficient",
    margin=dict(l=40, r=40, t=40, b=40),
    legend=dict(orientation="h", yanchor="bottom", y=1.02, xanchor="center", x=0.5),
)
st.plotly_chart(fig, use_container_width=True)

st.divider()

# --- Table + Export ---
st.subheader("Coefficient Table")
only_class = st.checkbox("Only the selected class", value=False)
table = pd.DataFrame({"exponent": exponents, "coefficient": [str(c) for c in coeffs], "in_class": in_class})
if only_class:
    table = table[table["in_class"]]
st.dataframe(table, use_container_width=True, hide_index=True, height=400)

st.download_button(
    "Download CSV",
    table.to_csv(index=False),
    file_name="coefficients.csv",
    mime="text/csv",
)
