"""Dashboard entry point for the q-series engine."""

import streamlit as st

st.set_page_config(
    page_title="q-Series Vanishing Coefficients",
    page_icon="",
    layout="wide",
    initial_sidebar_state="expanded",
)

# Explore works on single expressions, Verification on stored suite runs
pages = {
    "Explore": [
        st.Page("pages/0_Coefficients.py", title="Coefficients", default=True),
        st.Page("pages/1_Theorem_Catalog.py", title="Theorem Catalog"),
    ],
    "Verification": [
        st.Page("pages/2_Suite_Results.py", title="Suite Results"),
    ],
}

pg = st.navigation(pages)
pg.run()
