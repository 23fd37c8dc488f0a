"""
Explorer View Components
Streamlit panels for graph information, Bowen-Franks data, expressions and isomorphism searches
"""
from datetime import datetime
from typing import Dict, Optional

import streamlit as st

from controllers.iso_search import IsoSearchManager
from models.bfmod import IsoCertificate, bf_graded, bf_ungraded
from models.errors import LPAError
from models.graph import Graph, classify, is_primitive, is_strongly_graded
from models.reports import VerificationReport
from utils.data_helpers import DataFormatter
from views.report_components import ReportRenderer


class ExplorerViewComponents:
    """UI components of the explorer"""

    @staticmethod
    def render_graph_info(g: Graph):
        """Classification metrics and the adjacency table"""
        cls = classify(g)
        col1, col2, col3, col4 = st.columns(4)

        with col1:
            st.metric("Vertices", len(g.vertices))
        with col2:
            st.metric("Edges", len(g.edges))
        with col3:
            st.metric("Sinks", len(cls.sinks))
        with col4:
            st.metric("Sources", len(cls.sources))

        flags = [
            ("Regular", cls.is_regular),
            ("Essential", cls.is_essential),
            ("Strongly graded", is_strongly_graded(g)),
        ]
        if cls.is_regular:
            exponent = is_primitive(g)
            flags.append((f"Primitive (N = {exponent})" if exponent else "Primitive", exponent is not None))
        st.write("  ".join(f"{'✅' if ok else '❌'} {label}" for label, ok in flags))

        st.dataframe(ReportRenderer.adjacency_frame(g), use_container_width=True)

    @staticmethod
    def render_bowen_franks(g: Graph):
        presentation = bf_graded(g)
        st.subheader("Graded Bowen-Franks presentation")
        st.code("\n".join("[" + ", ".join(row) + "]" for row in presentation.to_record()['relations']))
        try:
            st.info(f"Ungraded Bowen-Franks group: {bf_ungraded(g).describe()}")
        except LPAError as e:
            st.warning(f"Ungraded group unavailable: {e}")

    @staticmethod
    def render_report(report: VerificationReport):
        """One row per named check"""
        if report.ok:
            st.success(f"{report.subject}: all required checks pass")
        elif report.status == "undecided":
            st.warning(f"{report.subject}: undecided within the stage cap")
        else:
            st.error(f"{report.subject}: {report.first_failure.name} fails")
        st.table([check.to_record() for check in report.checks])

    @staticmethod
    def render_certificate(e: Graph, f: Graph, cert: IsoCertificate):
        st.success(f"Pointed isomorphism {e.name} → {f.name} at lag {cert.total_lag}")
        if cert.forward_lag:
            st.caption(f"M carries lag {cert.forward_lag}, M' carries lag {cert.lag}")
        col1, col2 = st.columns(2)
        with col1:
            st.write("**M**")
            st.code(DataFormatter.format_int_matrix(cert.m))
        with col2:
            st.write("**M'**")
            st.code(DataFormatter.format_int_matrix(cert.m_prime))

    @staticmethod
    def render_batch_results(batch_results: Optional[Dict]):
        """Summary metrics, CSV export and per-pair outcomes"""
        if not batch_results:
            return

        manager = IsoSearchManager()
        manager.results = batch_results
        summary_stats = manager.get_summary()

        st.subheader("📊 Comparison summary")
        col1, col2, col3, col4 = st.columns(4)

        with col1:
            st.metric("Pairs", summary_stats['total_compared'])
        with col2:
            st.metric("✅ Isomorphic", summary_stats['isomorphic'])
        with col3:
            st.metric("❔ Not found", summary_stats['not_found'])
        with col4:
            st.metric("❌ Errors", summary_stats['errors'])

        if summary_stats['total_compared'] > 0:
            st.download_button(
                label="📥 Download results (CSV)",
                data=manager.export_results_to_csv(),
                file_name=f"iso_comparison_{datetime.now().strftime('%Y%m%d_%H%M%S')}.csv",
                mime="text/csv",
                use_container_width=True
            )

        st.markdown("---")

        for key, cert in batch_results['isomorphic'].items():
            with st.expander(f"✅ {key} (lag {cert.total_lag})", expanded=False):
                st.code(f"M = {DataFormatter.format_int_matrix(cert.m)}\nM' = {DataFormatter.format_int_matrix(cert.m_prime)}")

        for key, outcome in batch_results['not_found'].items():
            with st.expander(f"❔ {key}", expanded=False):
                st.write(f"No certificate within lag {outcome.lag_max} and entries ≤ {outcome.entry_max} "
                         f"({outcome.candidates_tested} candidates, {outcome.reason})")

        if batch_results['errors']:
            with st.expander(f"❌ Errors ({len(batch_results['errors'])})", expanded=False):
                for error in batch_results['errors']:
                    st.write(f"• {error['pair']}: {error['error']}")
