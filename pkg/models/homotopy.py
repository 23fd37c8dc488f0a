"""
Polynomial Homotopies
Homotopy certificates into L(F)[t] or M2(L(F)[t]), chains of them, and the rotation certificate
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from models.algebra import AlgebraElement, LeavittPathAlgebra
from models.errors import CornerConditionFailed, NotAUnit, UnverifiedHom
from models.homs import (
    EdgeUnitFamily, GradedHom, Target, TargetElement, ad_conjugate, corner_projection, corner_units, phi_z,
    verify_hom,
)
from models.matrices import ElementMatrix, MatrixAlgebra
from models.reports import VerificationReport
from models.zerocomp import require_balanced, unit_inverse

logger = logging.getLogger(__name__)


@dataclass
class HomotopyCertificate:
    """Images over a polynomial target whose evaluations at t = 0 and t = 1 are `start` and `end`"""
    source: LeavittPathAlgebra
    target: Target
    images: Dict[str, TargetElement]
    start: GradedHom
    end: GradedHom
    name: str = "H"
    report: Optional[VerificationReport] = field(default=None, repr=False)

    def as_hom(self) -> GradedHom:
        return GradedHom(self.source, self.target, self.images, self.name)

    def evaluate(self, value: int) -> Dict[str, TargetElement]:
        return {g: x.evaluate_at(value) for g, x in self.images.items()}


def endpoint_hom(source: LeavittPathAlgebra, target: Target, images: Dict[str, TargetElement],
                 value: int, name: str) -> GradedHom:
    return GradedHom(source, target.base_algebra, {g: x.evaluate_at(value) for g, x in images.items()}, name)


def _matches(images: Dict[str, TargetElement], hom: GradedHom) -> Optional[str]:
    for g, x in images.items():
        if x != hom.images[g]:
            return g
    return None


def verify_homotopy(c: HomotopyCertificate) -> VerificationReport:
    """Relations over the polynomial target plus both endpoint evaluations"""
    report = VerificationReport(f"homotopy {c.name}")
    report.extend(verify_hom(c.as_hom(), require_unital=False))
    for value, hom in ((0, c.start), (1, c.end)):
        bad = _matches(c.evaluate(value), hom)
        report.add(f"endpoint-{value}", bad is None,
                   f"evaluation at t = {value} differs from {hom.name} on '{bad}'" if bad else "")
    c.report = report
    return report


def chain_homotopy(certificates: Sequence[HomotopyCertificate]) -> VerificationReport:
    """Each link verifies and ev1 of link j equals ev0 of link j+1"""
    report = VerificationReport("homotopy chain")
    for index, c in enumerate(certificates):
        report.extend(verify_homotopy(c), prefix=f"link {index}: ")
    for index in range(len(certificates) - 1):
        first, second = certificates[index], certificates[index + 1]
        end, start = first.evaluate(1), second.evaluate(0)
        bad = next((g for g in end if end[g] != start[g]), None)
        report.add(f"chain {index}-{index + 1}", bad is None,
                   f"ev1 of link {index} differs from ev0 of link {index + 1} on '{bad}'" if bad else "")
    return report


# Shears in M2

def shear_upper(m2: MatrixAlgebra, x: AlgebraElement) -> ElementMatrix:
    return m2.elementary(0, 1, x)


def shear_lower(m2: MatrixAlgebra, x: AlgebraElement) -> ElementMatrix:
    return m2.elementary(1, 0, x)


def rotation_path(algebra: LeavittPathAlgebra,
                  s: Optional[AlgebraElement] = None) -> Tuple[ElementMatrix, ElementMatrix]:
    """R(s) = E12(-s) E21(s) E12(-s) and its inverse; R(0) = 1, R(1) = [[0, -1], [1, 0]]"""
    poly = algebra if algebra.ring.polynomial else algebra.polynomial_extension
    s = poly.indeterminate() if s is None else s
    m2 = MatrixAlgebra(poly, 2)
    rotation = shear_upper(m2, -s) * shear_lower(m2, s) * shear_upper(m2, -s)
    inverse = shear_upper(m2, s) * shear_lower(m2, -s) * shear_upper(m2, s)
    return rotation, inverse


def unit_path(algebra: LeavittPathAlgebra, u: AlgebraElement, u_inv: AlgebraElement,
              s: AlgebraElement) -> Tuple[ElementMatrix, ElementMatrix]:
    """P(s) = W_u(s) R(s) with P(0) = 1 and P(1) = diag(u, u^-1), plus its inverse"""
    m2 = MatrixAlgebra(algebra, 2)
    su, su_inv = s * u, s * u_inv
    w = shear_upper(m2, su) * shear_lower(m2, -su_inv) * shear_upper(m2, su)
    w_inv = shear_upper(m2, -su) * shear_lower(m2, su_inv) * shear_upper(m2, -su)
    r, r_inv = rotation_path(algebra, s)
    return w * r, r_inv * w_inv


def rotation_m2_certificate(h: GradedHom, u: AlgebraElement,
                            u_inv: Optional[AlgebraElement] = None) -> HomotopyCertificate:
    """Homotopy from the corner embedding of ad_u h to the corner embedding of h, in M2(L(F)[t])"""
    if not isinstance(h.target, LeavittPathAlgebra):
        raise UnverifiedHom("the rotation certificate needs a Leavitt path algebra target")
    require_balanced(u)
    if u_inv is None:
        u_inv = unit_inverse(u)
    elif u * u_inv != u.algebra.one() or u_inv * u != u.algebra.one():
        raise NotAUnit(f"the supplied inverse of {u} does not verify")
    base = h.target
    poly = base.polynomial_extension
    s = poly.one() - poly.indeterminate()
    p, p_inv = unit_path(poly, poly.embed(u), poly.embed(u_inv), s)
    m2 = MatrixAlgebra(poly, 2)
    images = {g: p * m2.corner(poly.embed(x)) * p_inv for g, x in h.images.items()}

    m2_base = MatrixAlgebra(base, 2)
    conjugated = ad_conjugate(h, u, u_inv)
    start = conjugated.map_images(m2_base.corner, m2_base, f"i1.ad({h.name})")
    end = h.map_images(m2_base.corner, m2_base, f"i1.{h.name}")
    cert = HomotopyCertificate(h.source, m2, images, start, end, f"rot({h.name})")
    report = verify_homotopy(cert)
    if not report.ok:
        raise UnverifiedHom(f"rotation certificate fails {report.first_failure.name}")
    logger.debug("rotation certificate for %s verified with %d checks", h.name, len(report.checks))
    return cert


def deformation_homotopy(h: GradedHom, units: Dict[str, AlgebraElement],
                         inverses: Dict[str, AlgebraElement]) -> HomotopyCertificate:
    """h deformed by a corner unit family over L(F)[t]; endpoints are h_Z(0) and h_Z(1)"""
    if not isinstance(h.target, LeavittPathAlgebra):
        raise UnverifiedHom("deformation homotopies need a Leavitt path algebra target")
    poly = h.target.polynomial_extension
    lifted = h.map_images(poly.embed, poly, f"{h.name}[t]")
    images = dict(lifted.images)
    for e in h.source.graph.edges:
        name = e.name
        p = corner_projection(lifted, name)
        z = units.get(name, p)
        z_inv = inverses.get(name, p)
        if z != p * z * p or z * z_inv != p or z_inv * z != p:
            raise CornerConditionFailed(name, "Z_e is not a unit of the corner h(ee*) L[t] h(ee*)")
        images[name] = z * lifted.images[name]
        images[name + '*'] = lifted.images[name + '*'] * z_inv

    def family_at(value: int) -> EdgeUnitFamily:
        return corner_units(h, {n: z.evaluate_at(value) for n, z in units.items()},
                            {n: z.evaluate_at(value) for n, z in inverses.items()})

    start = phi_z(h, family_at(0))
    end = phi_z(h, family_at(1))
    cert = HomotopyCertificate(h.source, poly, images, start, end, f"def({h.name})")
    verify_homotopy(cert)
    return cert


def constant_homotopy(h: GradedHom) -> HomotopyCertificate:
    if isinstance(h.target, MatrixAlgebra):
        poly = MatrixAlgebra(h.target.algebra.polynomial_extension, h.target.size)
        lift = lambda x: x.map(poly.algebra.embed, poly)  # noqa: E731
    else:
        poly = h.target.polynomial_extension
        lift = poly.embed
    return HomotopyCertificate(h.source, poly, {g: lift(x) for g, x in h.images.items()}, h, h, f"const({h.name})")


def certificates_from_images(source: LeavittPathAlgebra, target: Target, images: Dict[str, TargetElement],
                             start: Optional[Dict[str, TargetElement]] = None,
                             end: Optional[Dict[str, TargetElement]] = None, name: str = "H") -> HomotopyCertificate:
    """Build a certificate; endpoints default to the evaluations at 0 and 1"""
    base = target.base_algebra
    start_hom = GradedHom(source, base, start, f"{name}@0") if start else endpoint_hom(source, target, images, 0, f"{name}@0")
    end_hom = GradedHom(source, base, end, f"{name}@1") if end else endpoint_hom(source, target, images, 1, f"{name}@1")
    return HomotopyCertificate(source, target, images, start_hom, end_hom, name)
