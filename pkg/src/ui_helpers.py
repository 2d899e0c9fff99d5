"""Shared UI helpers for Streamlit pages."""

from typing import List

import streamlit as st

from src.catalog import CatalogEntry, get_entry


def entry_selector(entries: List[CatalogEntry], label: str = "Catalog entry") -> CatalogEntry:
    """Render an entry selectbox in the sidebar, persist the choice in session_state."""
    ids = [e.id for e in entries]
    if st.session_state.get("entry_id") not in ids:
        st.session_state["entry_id"] = ids[0]

    st.sidebar.header("Entry")
    kinds = list(dict.fromkeys(e.kind for e in entries))
    current_kind = get_entry(entries, st.session_state["entry_id"]).kind
    kind = st.sidebar.radio("Kind", kinds, horizontal=True, index=kinds.index(current_kind))
    options = [e.id for e in entries if e.kind == kind]
    current = st.session_state["entry_id"]
    index = options.index(current) if current in options else 0

    selected = st.sidebar.selectbox(label, options, index=index)
    st.session_state["entry_id"] = selected
    return get_entry(entries, selected)


def order_slider(key: str, default: int, max_value: int = 2000) -> int:
    """Sidebar slider for the truncation order, shared across pages."""
    if key not in st.session_state:
        st.session_state[key] = default
    return st.sidebar.slider("Truncation order N", 10, max_value, step=10, key=key)
