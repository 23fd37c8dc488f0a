"""
Isomorphism Search Controller
Runs bounded pointed-isomorphism searches between graphs and aggregates the results
"""
import logging
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd

from config.settings import ENTRY_MAX, LAG_MAX, SEARCH_CANDIDATE_LIMIT, STAGE_CAP
from models.bfmod import IsoCertificate, bf_ungraded, search_pointed_iso, verify_iso_certificate
from models.errors import LPAError
from models.graph import Graph
from models.reports import VerificationReport
from utils.data_helpers import DataFormatter

logger = logging.getLogger(__name__)


class IsoSearchManager:
    """Searches graph pairs for pointed isomorphisms of their graded Bowen-Franks modules"""

    def __init__(self, lag_max: int = LAG_MAX, entry_max: int = ENTRY_MAX, stage_cap: int = STAGE_CAP,
                 candidate_limit: int = SEARCH_CANDIDATE_LIMIT):
        self.lag_max = lag_max
        self.entry_max = entry_max
        self.stage_cap = stage_cap
        self.candidate_limit = candidate_limit
        self.results = {
            'isomorphic': {},
            'not_found': {},
            'errors': []
        }

    def search(self, e: Graph, f: Graph, progress_callback: Optional[Callable] = None):
        """One bounded search; returns an IsoCertificate or NotFoundWithinBounds"""
        return search_pointed_iso(e, f, self.lag_max, self.entry_max, self.stage_cap, self.candidate_limit,
                                  progress_callback)

    def verify(self, e: Graph, f: Graph, cert: IsoCertificate) -> VerificationReport:
        return verify_iso_certificate(e, f, cert, self.stage_cap)

    def compare_graphs(self, pairs: List[Tuple[Graph, Graph]], progress_callback: Optional[Callable] = None) -> Dict:
        """Search every pair and categorize the outcomes"""
        total = len(pairs)

        for idx, (e, f) in enumerate(pairs):
            key = f"{e.name} ~ {f.name}"
            if progress_callback:
                progress_callback(idx + 1, total, key)

            try:
                outcome = self.search(e, f)
                if isinstance(outcome, IsoCertificate):
                    self.results['isomorphic'][key] = outcome
                else:
                    self.results['not_found'][key] = outcome
            except LPAError as exc:
                logger.warning("comparison %s failed: %s", key, exc)
                self.results['errors'].append({
                    'pair': key,
                    'error': f"[{exc.code}] {exc}"
                })

        return self.results

    def get_summary(self) -> Dict[str, int]:
        """Counts of the batch comparison"""
        return {
            'total_compared': len(self.results['isomorphic']) + len(self.results['not_found']) + len(self.results['errors']),
            'isomorphic': len(self.results['isomorphic']),
            'not_found': len(self.results['not_found']),
            'errors': len(self.results['errors'])
        }

    def export_results_to_csv(self) -> str:
        rows = []

        for key, cert in self.results['isomorphic'].items():
            rows.append({
                'Pair': key,
                'Status': 'Isomorphic',
                'Lag': cert.total_lag,
                'Details': f"M = {DataFormatter.format_int_matrix(cert.m)}; "
                           f"M' = {DataFormatter.format_int_matrix(cert.m_prime)}"
            })

        for key, outcome in self.results['not_found'].items():
            rows.append({
                'Pair': key,
                'Status': 'Not found within bounds',
                'Lag': outcome.lag_max,
                'Details': f"{outcome.candidates_tested} candidates tested"
                           + (f" ({outcome.reason})" if outcome.reason else "")
            })

        for error in self.results['errors']:
            rows.append({
                'Pair': error['pair'],
                'Status': 'Error',
                'Lag': None,
                'Details': error['error']
            })

        df = pd.DataFrame(rows, columns=['Pair', 'Status', 'Lag', 'Details'])
        return df.to_csv(index=False)

    @staticmethod
    def invariant_table(graphs: List[Graph]) -> pd.DataFrame:
        """Ungraded Bowen-Franks groups side by side, a quick necessary condition before searching"""
        rows = []
        for g in graphs:
            try:
                bf = bf_ungraded(g).describe()
            except LPAError as exc:
                bf = f"[{exc.code}]"
            rows.append({'Graph': g.name, 'Vertices': len(g.vertices), 'Edges': len(g.edges), 'BF': bf})
        return pd.DataFrame(rows, columns=['Graph', 'Vertices', 'Edges', 'BF'])
