"""
Homomorphism Pipeline Controller
Orchestrates hom verification, induced K0 maps, deformations and homotopy chains
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config.settings import STAGE_CAP
from controllers.file_parser import FileParser
from models.algebra import LeavittPathAlgebra
from models.bfmod import DimModElement, verify_hom_certificate
from models.coefficients import CoefficientRing
from models.errors import NonRegularGraph, StageCapExceeded, UnverifiedHom
from models.expression import parse_expression
from models.graph import Graph
from models.homotopy import HomotopyCertificate, chain_homotopy, rotation_m2_certificate
from models.homs import EdgeUnitFamily, GradedHom, K0Certificate, U_representative, corner_units, induced_k0, phi_z, verify_hom
from models.reports import VerificationReport
from models.zerocomp import TrivialK1

logger = logging.getLogger(__name__)


@dataclass
class HomCheckResult:
    hom: GradedHom
    report: VerificationReport
    k0: Optional[K0Certificate] = None
    notes: List[str] = field(default_factory=list)


@dataclass
class DeformResult:
    hom: GradedHom
    report: VerificationReport
    deformed: Optional[GradedHom] = None
    family: Optional[EdgeUnitFamily] = None
    u_representative: Dict[str, Union[DimModElement, TrivialK1]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)


@dataclass
class HomotopyResult:
    certificates: List[HomotopyCertificate]
    report: VerificationReport


class HomPipeline:
    """Runs the hom-level flows of the CLI and the explorer for one coefficient field"""

    def __init__(self, ring: Optional[CoefficientRing] = None, stage_cap: int = STAGE_CAP):
        self.ring = ring or CoefficientRing()
        self.stage_cap = stage_cap

    def algebras(self, e: Graph, f: Graph) -> Tuple[LeavittPathAlgebra, LeavittPathAlgebra]:
        return LeavittPathAlgebra(e, self.ring), LeavittPathAlgebra(f, self.ring)

    def load_hom(self, e: Graph, f: Graph, text: str, source: str = "<input>") -> GradedHom:
        source_algebra, target = self.algebras(e, f)
        return FileParser.parse_hom(text, source_algebra, target, source)

    def _induced_k0(self, h: GradedHom, report: VerificationReport, notes: List[str]) -> Optional[K0Certificate]:
        """Induced K0 map, re-verified as a pointed hom of dimension modules"""
        try:
            k0 = induced_k0(h, self.stage_cap)
            report.extend(verify_hom_certificate(h.source.graph, h.target.graph, k0.m, k0.lag, pointed=True,
                                                 stage_cap=self.stage_cap), prefix="k0 ")
            return k0
        except NonRegularGraph as exc:
            notes.append(f"induced K0 skipped: {exc}")
        except StageCapExceeded as exc:
            report.add("k0", None, str(exc))
        return None

    def check_hom(self, e: Graph, f: Graph, text: str, source: str = "<input>") -> HomCheckResult:
        h = self.load_hom(e, f, text, source)
        report = verify_hom(h, require_unital=True)
        result = HomCheckResult(h, report)
        if report.ok:
            result.k0 = self._induced_k0(h, report, result.notes)
        logger.info("hom %s: %s", h.name, report.status)
        return result

    def deform(self, e: Graph, f: Graph, hom_text: str, units_text: str,
               hom_source: str = "<input>", units_source: str = "<input>") -> DeformResult:
        """phi_z of a verified hom, its re-verification, the U representative and K0 invariance"""
        h = self.load_hom(e, f, hom_text, hom_source)
        report = verify_hom(h, require_unital=False)
        result = DeformResult(h, report)
        if not report.ok:
            return result
        units, inverses = FileParser.parse_units(units_text, h, units_source)
        result.family = corner_units(h, units, inverses)
        deformed = phi_z(h, result.family)
        report.extend(verify_hom(deformed, require_unital=h.unital), prefix="deformed ")
        result.deformed = deformed
        if self.ring.characteristic == 2:
            result.notes.append("K1 of L(F)_0 is trivial over F2, so every U class is 1")
        try:
            result.u_representative = U_representative(h, result.family, self.stage_cap)
        except NonRegularGraph as exc:
            result.notes.append(f"U representative skipped: {exc}")
        if h.unital:
            before = self._induced_k0(h, VerificationReport("before"), result.notes)
            after = self._induced_k0(deformed, VerificationReport("after"), result.notes)
            if before is not None and after is not None:
                same = before.lag == after.lag and (before.m == after.m).all()
                report.add("k0-unchanged", bool(same), "deformation changed the induced K0 map")
        return result

    def check_homotopies(self, e: Graph, f: Graph, texts: Sequence[Tuple[str, str]]) -> HomotopyResult:
        """Each (text, source) is one link; consecutive links must share endpoints"""
        source_algebra, target = self.algebras(e, f)
        certificates = [FileParser.parse_homotopy(text, source_algebra, target, source, f"H{index}")
                        for index, (text, source) in enumerate(texts)]
        report = chain_homotopy(certificates)
        return HomotopyResult(certificates, report)

    def rotate(self, e: Graph, f: Graph, hom_text: str, unit_expr: str,
               source: str = "<input>") -> HomotopyCertificate:
        """The M2 rotation homotopy between the corner embeddings of ad_u h and h"""
        h = self.load_hom(e, f, hom_text, source)
        report = verify_hom(h, require_unital=False)
        if not report.ok:
            raise UnverifiedHom(f"hom '{h.name}' fails {report.first_failure.name}")
        u = parse_expression(unit_expr, h.target)
        return rotation_m2_certificate(h, u)
