"""
Leavitt Path Algebra Explorer - MVC layout
Main Streamlit entry point
"""
import itertools
from typing import Dict, Optional

import streamlit as st

# Configuration
from config.settings import ALLOWED_FILE_TYPES, GRAPHS_PATH, MAX_FILE_SIZE_KB

# Models
from models.algebra import LeavittPathAlgebra
from models.bfmod import IsoCertificate
from models.coefficients import CoefficientRing
from models.errors import LPAError
from models.expression import parse_expression
from models.graph import Graph

# Controllers
from controllers.file_parser import FileParser
from controllers.iso_search import IsoSearchManager

# Views
from views.explorer_components import ExplorerViewComponents

# Utils
from utils.file_storage import FileStorage


def load_example_graphs() -> Dict[str, Graph]:
    """Parse every shipped example graph"""
    graphs = {}
    for path in sorted(GRAPHS_PATH.glob("*.graph")):
        try:
            g = FileParser.load_graph(path)
            graphs[g.name] = g
        except LPAError as e:
            st.warning(f"Skipping {path.name}: {e}")
    return graphs


def initialize_session_state():
    defaults = {
        'graphs': load_example_graphs(),
        'history': FileStorage.load_history(),
        'batch_results': None,
    }

    for key, value in defaults.items():
        if key not in st.session_state:
            st.session_state[key] = value


def render_graph_picker() -> Optional[Graph]:
    """Select a shipped graph or upload a new one"""
    graphs = st.session_state.graphs

    uploaded_file = st.file_uploader(
        "Upload a graph file",
        type=ALLOWED_FILE_TYPES,
        help=f"Line-oriented graph format. Maximum size: {MAX_FILE_SIZE_KB} KB"
    )
    if uploaded_file is not None:
        is_valid, message = FileParser.validate_upload(uploaded_file)
        if not is_valid:
            st.error(f"❌ {message}")
        else:
            try:
                g = FileParser.parse_graph(uploaded_file.getvalue().decode('utf-8'), uploaded_file.name)
                graphs[g.name] = g
                st.success(f"✅ Loaded graph '{g.name}'")
            except LPAError as e:
                st.error(f"❌ {e}")

    if not graphs:
        st.info("No graphs available yet.")
        return None
    name = st.selectbox("Graph", sorted(graphs))
    return graphs[name]


def render_expression_tab(g: Graph):
    st.subheader("Evaluate an expression")
    col1, col2 = st.columns([3, 1])

    with col1:
        expression = st.text_input("Expression", placeholder="e.g. v - e e* - f f*", key="expression_input")
    with col2:
        selector = st.text_input("Field", value="q", help="q or fp:<p>")

    if st.button("Evaluate", type="primary"):
        if not expression.strip():
            st.warning("Enter an expression to evaluate.")
            return
        try:
            algebra = LeavittPathAlgebra(g, CoefficientRing.from_selector(selector))
            x = parse_expression(expression, algebra)
        except LPAError as e:
            st.error(f"❌ [{e.code}] {e}")
            return
        st.code(str(x))
        degree = x.degree()
        st.caption(f"degree: {degree}" if degree is not None else f"degrees: {x.degrees()}")
        FileStorage.record('eval', g.name, {'expression': expression, 'value': str(x)}, st.session_state.history)


def render_iso_tab(g: Graph):
    st.subheader("Pointed isomorphism search")
    graphs = st.session_state.graphs
    other_name = st.selectbox("Compare with", sorted(graphs), key="iso_other")
    col1, col2 = st.columns(2)
    with col1:
        lag_max = st.number_input("Lag bound", min_value=0, max_value=12, value=3)
    with col2:
        entry_max = st.number_input("Entry bound", min_value=0, max_value=16, value=4)

    if st.button("🔍 Search", type="primary"):
        manager = IsoSearchManager(int(lag_max), int(entry_max))
        progress_bar = st.progress(0)
        status_text = st.empty()

        def update_progress(current: int, total: int, label: str):
            progress_bar.progress(current / total if total else 1.0)
            status_text.text(f"Testing candidate {current}/{total} ({label})")

        try:
            with st.spinner("Searching..."):
                outcome = manager.search(g, graphs[other_name], progress_callback=update_progress)
        except LPAError as e:
            st.error(f"❌ [{e.code}] {e}")
            return
        finally:
            progress_bar.empty()
            status_text.empty()

        other = graphs[other_name]
        if isinstance(outcome, IsoCertificate):
            ExplorerViewComponents.render_certificate(g, other, outcome)
            ExplorerViewComponents.render_report(manager.verify(g, other, outcome))
            result = outcome.to_record()
        else:
            st.warning(f"No certificate within bounds ({outcome.candidates_tested} candidates, {outcome.reason})")
            result = outcome.to_record()
        FileStorage.record('iso', f"{g.name} ~ {other_name}", result, st.session_state.history)


def render_batch_tab():
    st.subheader("Batch comparison of all graph pairs")
    graphs = st.session_state.graphs
    st.dataframe(IsoSearchManager.invariant_table(list(graphs.values())), use_container_width=True)

    if st.button("🔍 Compare every pair", type="primary"):
        pairs = list(itertools.combinations([graphs[name] for name in sorted(graphs)], 2))
        manager = IsoSearchManager(lag_max=3, entry_max=4)
        progress_bar = st.progress(0)
        status_text = st.empty()

        def update_progress(current: int, total: int, key: str):
            progress_bar.progress(current / total)
            status_text.text(f"Comparing {current}/{total}: {key}")

        with st.spinner("Comparing graphs..."):
            results = manager.compare_graphs(pairs, progress_callback=update_progress)

        progress_bar.empty()
        status_text.empty()
        st.session_state.batch_results = results
        st.success(f"✅ Compared {manager.get_summary()['total_compared']} pairs")

    ExplorerViewComponents.render_batch_results(st.session_state.batch_results)


def render_sidebar():
    with st.sidebar:
        st.header("About")
        st.markdown("""
        **How to use:**
        1. Pick an example graph or upload one
        2. Inspect its classification and Bowen-Franks data
        3. Evaluate expressions in L(E)
        4. Search for pointed isomorphisms
        """)
        render_history()


def render_history():
    st.markdown("---")
    st.header("History")
    history = st.session_state.history

    if not history:
        st.info("No computations saved yet.")
        return

    st.write(f"**{len(history)} saved computations**")
    for i, item in enumerate(reversed(history)):
        with st.expander(f"{item['kind']}: {item['graph']}", expanded=False):
            st.write(f"**When:** {item['timestamp']}")
            st.json(item['result'])
            if st.button("🗑️ Delete", key=f"delete_{i}"):
                history.pop(len(history) - 1 - i)
                FileStorage.save_history(history)
                st.rerun()


def main():
    st.set_page_config(
        page_title="Leavitt Path Algebra Explorer",
        page_icon="🔷",
        layout="wide"
    )
    initialize_session_state()
    st.title("Leavitt Path Algebra Explorer")
    st.markdown("---")

    g = render_graph_picker()
    if g is not None:
        tab1, tab2, tab3, tab4, tab5 = st.tabs(["Graph", "Bowen-Franks", "Expressions", "Isomorphism", "Batch"])
        with tab1:
            ExplorerViewComponents.render_graph_info(g)
        with tab2:
            ExplorerViewComponents.render_bowen_franks(g)
        with tab3:
            render_expression_tab(g)
        with tab4:
            render_iso_tab(g)
        with tab5:
            render_batch_tab()
    render_sidebar()


if __name__ == "__main__":
    main()
