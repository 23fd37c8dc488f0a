"""
Graded Homomorphisms
Generator-image maps out of L(E): verification, induced K0 maps, deformations and tensor units
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from config.settings import STAGE_CAP
from models.algebra import AlgebraElement, LeavittPathAlgebra
from models.bfmod import DimensionModule, DimModElement, canonicalize, sigma_act
from models.errors import (
    CornerConditionFailed, GraphValidationError, NotAUnit, NotDegreeZero, NotEssential, NotStarCompatible,
    UnverifiedHom,
)
from models.graph import classify, dual_graph, source_elimination, toggle_dual_name
from models.matrices import ElementMatrix, MatrixAlgebra
from models.reports import VerificationReport
from models.tensor import TensorAlgebra, TensorElement
from models.zerocomp import TrivialK1, k0_class, k1_class, require_balanced, unit_inverse

logger = logging.getLogger(__name__)

Target = Union[LeavittPathAlgebra, MatrixAlgebra]
TargetElement = Union[AlgebraElement, ElementMatrix]


class GradedHom:
    """Images of every vertex, edge and ghost edge 'e*' of the source graph"""

    def __init__(self, source: LeavittPathAlgebra, target: Target, images: Dict[str, TargetElement],
                 name: str = "h"):
        missing = [g for g in source.generator_names() if g not in images]
        if missing:
            raise GraphValidationError(f"hom '{name}' has no image for: {', '.join(missing)}")
        extra = [g for g in images if g not in set(source.generator_names())]
        if extra:
            raise GraphValidationError(f"hom '{name}' maps unknown generators: {', '.join(extra)}")
        self.source = source
        self.target = target
        self.images = dict(images)
        self.name = name
        self.verified = False
        self.unital = False

    def __repr__(self) -> str:
        return f"GradedHom({self.name}: {self.source!r} -> {self.target!r})"

    def image(self, generator: str) -> TargetElement:
        return self.images[generator]

    def apply(self, x: AlgebraElement) -> TargetElement:
        """Extend the generator images multiplicatively and linearly"""
        self.source.require_compatible(x.algebra)
        target = self.target
        total = target.zero()
        for m, c in x.normalize().terms.items():
            if m.is_vertex:
                value = self.images[m.vertex]
            else:
                value = None
                for e in m.alpha.edges:
                    value = self.images[e] if value is None else value * self.images[e]
                for e in reversed(m.beta.edges):
                    ghost = self.images[e + "*"]
                    value = ghost if value is None else value * ghost
            total = total + value.scale(target.ring.coerce(c, x.ring))
        return total

    def map_images(self, fn: Callable[[TargetElement], TargetElement], target: Target, name: str) -> 'GradedHom':
        return GradedHom(self.source, target, {g: fn(x) for g, x in self.images.items()}, name)

    def same_images(self, other: 'GradedHom') -> bool:
        return self.target == other.target and all(self.images[g] == other.images[g] for g in self.images)

    def to_lines(self) -> List[str]:
        return [f"{g} -> {self.images[g]}" for g in self.source.generator_names()]


def identity_hom(algebra: LeavittPathAlgebra) -> GradedHom:
    return GradedHom(algebra, algebra, {g: algebra.generator(g) for g in algebra.generator_names()}, "id")


def _first(instances) -> Optional[str]:
    for ok, label in instances:
        if not ok:
            return label
    return None


def verify_hom(h: GradedHom, require_unital: bool = True) -> VerificationReport:
    """Check every relation instance (V), (E1), (E2), (CK1), (CK2), degrees and unitality"""
    graph = h.source.graph
    img = h.images
    zero = h.target.zero()
    report = VerificationReport(f"hom {h.name}")

    def family(name: str, instances, required: bool = True):
        failure = _first(instances)
        report.add(name, failure is None, f"{failure} fails" if failure else "", required)

    vertices = graph.vertices
    edges = graph.edges
    family("V", ((img[v] * img[w] == (img[v] if v == w else zero), f"{v} {w}")
                 for v in vertices for w in vertices))
    family("E1", (((img[e.source] * img[e.name] == img[e.name]) and (img[e.name] * img[e.range] == img[e.name]),
                   f"{e.source} {e.name} = {e.name} = {e.name} {e.range}") for e in edges))
    family("E2", (((img[e.range] * img[e.name + '*'] == img[e.name + '*'])
                   and (img[e.name + '*'] * img[e.source] == img[e.name + '*']),
                   f"{e.range} {e.name}* = {e.name}* = {e.name}* {e.source}") for e in edges))
    family("CK1", ((img[e.name + '*'] * img[f.name] == (img[e.range] if e.name == f.name else zero),
                    f"{e.name}* {f.name} = {e.range if e.name == f.name else 0}") for e in edges for f in edges))

    def ck2(v):
        total = zero
        for e in graph.out_edges(v):
            total = total + img[e.name] * img[e.name + '*']
        return total == img[v]

    family("CK2", ((ck2(v), f"{v} = sum of e e* over s(e) = {v}") for v in classify(graph).regular))

    def graded(generator: str, expected: int) -> bool:
        x = img[generator]
        return x.is_zero() or x.degree() == expected

    degree_instances = [(graded(v, 0), f"deg {v} = 0") for v in vertices]
    for e in edges:
        degree_instances.append((graded(e.name, e.weight), f"deg {e.name} = {e.weight}"))
        degree_instances.append((graded(e.name + '*', -e.weight), f"deg {e.name}* = {-e.weight}"))
    family("degree", iter(degree_instances))

    total = zero
    for v in vertices:
        total = total + img[v]
    unital = total == h.target.one()
    report.add("unital", unital, "sum of vertex images is not 1", required=require_unital)
    family("star-compatible", ((img[e.name + '*'] == img[e.name].star(), f"{e.name}*") for e in edges),
           required=False)

    h.verified = report.ok
    h.unital = unital
    return report


def is_star_compatible(h: GradedHom) -> bool:
    return all(h.images[e.name + '*'] == h.images[e.name].star() for e in h.source.graph.edges)


def _require_verified(h: GradedHom, unital: bool = True) -> None:
    if not h.verified:
        verify_hom(h, require_unital=unital)
    if not h.verified or (unital and not h.unital):
        raise UnverifiedHom(f"hom '{h.name}' does not verify")


# Induced map on graded K0

@dataclass
class K0Certificate:
    """delta_v @ 0 maps to column v @ lag"""
    m: np.ndarray
    lag: int

    def to_record(self):
        return {'lag': self.lag, 'M': [[int(x) for x in row] for row in self.m.tolist()]}


def induced_k0(h: GradedHom, stage_cap: int = STAGE_CAP) -> K0Certificate:
    _require_verified(h)
    if not isinstance(h.target, LeavittPathAlgebra):
        raise UnverifiedHom("induced K0 maps need a Leavitt path algebra target")
    module = DimensionModule(h.target.graph, stage_cap)
    columns = [canonicalize(k0_class(h.images[v], stage_cap)) for v in h.source.graph.vertices]
    lag = max(c.stage for c in columns)
    columns = [module.promote(c, lag) for c in columns]
    m = np.array([list(c.vector) for c in columns], dtype=object).T.reshape(module.rank, len(columns))
    return K0Certificate(m, lag)


# Tensor units

@dataclass
class UnitPair:
    unit: TensorElement
    inverse: TensorElement

    @property
    def degree(self) -> Optional[int]:
        return self.unit.degree()


def _checked_unit(unit: TensorElement, inverse: TensorElement, label: str) -> UnitPair:
    one = unit.parent.one()
    if unit * inverse != one or inverse * unit != one:
        raise NotAUnit(f"{label} is not inverted by its candidate inverse")
    return UnitPair(unit, inverse)


def dual_algebra(algebra: LeavittPathAlgebra) -> LeavittPathAlgebra:
    return LeavittPathAlgebra(dual_graph(algebra.graph), algebra.ring)


def u_one(algebra: LeavittPathAlgebra) -> UnitPair:
    """u1 = u + 1 - p with u = sum e (x) e_t*, p = sum v (x) v; inverse 1 - p + u*"""
    graph = algebra.graph
    if not classify(graph).is_essential:
        raise NotEssential(f"graph '{graph.name}' is not essential")
    dual = dual_algebra(algebra)
    tensor = TensorAlgebra(algebra, dual)
    u = tensor.from_pairs((algebra.edge(e.name), dual.ghost(toggle_dual_name(e.name))) for e in graph.edges)
    p = tensor.from_pairs((algebra.vertex(v), dual.vertex(v)) for v in graph.vertices)
    one = tensor.one()
    return _checked_unit(u + one - p, u.star() + one - p, "u1")


def u_f(h: GradedHom) -> UnitPair:
    """1 (x) 1 - sum f(v) (x) v + sum f(e) (x) e_t*, inverted with f(e*) (x) e_t"""
    _require_verified(h)
    graph = h.source.graph
    if not classify(graph).is_essential:
        raise NotEssential(f"graph '{graph.name}' is not essential")
    if not isinstance(h.target, LeavittPathAlgebra):
        raise UnverifiedHom("u_f needs a Leavitt path algebra target")
    if not is_star_compatible(h):
        raise NotStarCompatible(f"hom '{h.name}' does not commute with the involution")
    dual = LeavittPathAlgebra(dual_graph(graph), h.target.ring)
    tensor = TensorAlgebra(h.target, dual)
    p = tensor.from_pairs((h.images[v], dual.vertex(v)) for v in graph.vertices)
    forward = tensor.from_pairs((h.images[e.name], dual.ghost(toggle_dual_name(e.name))) for e in graph.edges)
    backward = tensor.from_pairs((h.images[e.name + '*'], dual.edge(toggle_dual_name(e.name))) for e in graph.edges)
    one = tensor.one()
    return _checked_unit(one - p + forward, one - p + backward, f"u_{h.name}")


# Corner units and deformations

@dataclass
class EdgeUnitFamily:
    """z_e in the corner h(ee*) L(F)_0 h(ee*) with z_e z_e^-1 = z_e^-1 z_e = h(ee*)"""
    hom: GradedHom
    units: Dict[str, AlgebraElement]
    inverses: Dict[str, AlgebraElement]

    def corner(self, edge: str) -> AlgebraElement:
        return self.hom.images[edge] * self.hom.images[edge + '*']


def corner_projection(h: GradedHom, edge: str) -> AlgebraElement:
    return h.images[edge] * h.images[edge + '*']


def corner_inverse(p: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
    """Inverse of z inside the corner p L p, via the unit 1 - p + z"""
    return p * unit_inverse(z.algebra.one() - p + z) * p


def corner_units(h: GradedHom, units: Dict[str, AlgebraElement],
                 inverses: Optional[Dict[str, AlgebraElement]] = None) -> EdgeUnitFamily:
    """Complete and check a corner unit family; edges left out get z_e = h(ee*)"""
    inverses = dict(inverses or {})
    all_units, all_inverses = {}, {}
    for e in h.source.graph.edges:
        p = corner_projection(h, e.name)
        z = units.get(e.name, p)
        if z != p * z * p:
            raise CornerConditionFailed(e.name, "z_e is not inside the corner h(ee*) L h(ee*)")
        try:
            require_balanced(z)
        except NotDegreeZero:
            raise CornerConditionFailed(e.name, "z_e is not of degree zero")
        if e.name in inverses:
            z_inv = inverses[e.name]
        else:
            try:
                z_inv = corner_inverse(p, z)
            except NotAUnit:
                raise CornerConditionFailed(e.name, "z_e is not invertible in its corner")
        if z * z_inv != p or z_inv * z != p:
            raise CornerConditionFailed(e.name, "z_e z_e^-1 and z_e^-1 z_e must both equal h(ee*)")
        all_units[e.name] = z
        all_inverses[e.name] = z_inv
    return EdgeUnitFamily(h, all_units, all_inverses)


def phi_z(h: GradedHom, family: EdgeUnitFamily) -> GradedHom:
    """Vertices fixed, e -> z_e h(e), e* -> h(e*) z_e^-1"""
    _require_verified(h, unital=False)
    images = dict(h.images)
    for e in h.source.graph.edges:
        images[e.name] = family.units[e.name] * h.images[e.name]
        images[e.name + '*'] = h.images[e.name + '*'] * family.inverses[e.name]
    deformed = GradedHom(h.source, h.target, images, f"{h.name}_z")
    report = verify_hom(deformed, require_unital=h.unital)
    if not report.ok:
        raise UnverifiedHom(f"deformation of '{h.name}' fails {report.first_failure.name}")
    return deformed


def U_representative(h: GradedHom, family: EdgeUnitFamily,
                     stage_cap: int = STAGE_CAP) -> Dict[str, Union[DimModElement, TrivialK1]]:
    """Per source vertex w, the product of [1 - h(ee*) + z_e] over edges e with s(e) = w"""
    target = h.target
    module = DimensionModule(target.graph, stage_cap)
    one = target.one()
    result: Dict[str, Union[DimModElement, TrivialK1]] = {}
    for w in h.source.graph.vertices:
        cls = None
        for e in h.source.graph.out_edges(w):
            p = family.corner(e.name)
            u = one - p + family.units[e.name]
            u_inv = one - p + family.inverses[e.name]
            k = k1_class(u, u_inv, stage_cap)
            if isinstance(k, TrivialK1):
                return {v: k for v in h.source.graph.vertices}
            cls = k if cls is None else cls * k
        result[w] = cls if cls is not None else module.multiplicative_one(target.ring)
    return result


def ad_conjugate(h: GradedHom, u: AlgebraElement, u_inv: Optional[AlgebraElement] = None) -> GradedHom:
    """a -> u h(a) u^-1 for a degree-zero unit u"""
    require_balanced(u)
    if u_inv is None:
        u_inv = unit_inverse(u)
    elif u * u_inv != u.algebra.one() or u_inv * u != u.algebra.one():
        raise NotAUnit(f"the supplied inverse of {u} does not verify")
    conjugated = h.map_images(lambda x: u * x * u_inv, h.target, f"ad({h.name})")
    report = verify_hom(conjugated, require_unital=h.unital)
    if not report.ok:
        raise UnverifiedHom(f"conjugate of '{h.name}' fails {report.first_failure.name}")
    return conjugated


def ad_corner(h: GradedHom, u: AlgebraElement, v: AlgebraElement) -> GradedHom:
    """The map a -> u h(a) v, valid when |u| + |v| = 0 and h(a) v u h(a') = h(a) h(a')"""
    du, dv = u.degree(), v.degree()
    if du is None or dv is None or du + dv != 0:
        raise NotDegreeZero("ad(u, v) needs homogeneous u and v with |u| + |v| = 0")
    vu = v * u
    for a in h.images:
        for b in h.images:
            if h.images[a] * vu * h.images[b] != h.images[a] * h.images[b]:
                raise CornerConditionFailed(a, f"h({a}) v u h({b}) != h({a}) h({b})")
    conjugated = h.map_images(lambda x: u * x * v, h.target, f"ad_uv({h.name})")
    report = verify_hom(conjugated, require_unital=False)
    if not report.ok:
        raise UnverifiedHom(f"ad(u, v) of '{h.name}' fails {report.first_failure.name}")
    return conjugated


def difference_units(f: GradedHom, g: GradedHom) -> EdgeUnitFamily:
    """For maps agreeing on vertices and on every ee*, z_e = g(e) f(e*) gives g = f_z"""
    _require_verified(f)
    _require_verified(g)
    for v in f.source.graph.vertices:
        if f.images[v] != g.images[v]:
            raise CornerConditionFailed(v, "the maps differ on a vertex")
    units, inverses = {}, {}
    for e in f.source.graph.edges:
        name = e.name
        if corner_projection(f, name) != corner_projection(g, name):
            raise CornerConditionFailed(name, "the maps differ on ee*")
        units[name] = g.images[name] * f.images[name + '*']
        inverses[name] = f.images[name] * g.images[name + '*']
    family = corner_units(f, units, inverses)
    if not phi_z(f, family).same_images(g):
        raise CornerConditionFailed(f.name, "the deformed map does not reproduce the second map")
    return family


def corner_shift_pair(h: GradedHom, e: str, f: str, u: AlgebraElement,
                      u_inv: Optional[AlgebraElement] = None,
                      stage_cap: int = STAGE_CAP) -> Tuple[DimModElement, DimModElement]:
    """sigma [1 - h(ee*) + u] and [1 - h(fe(fe)*) + h(f) u h(f*)] for r(f) = s(e)"""
    graph = h.source.graph
    if graph.edge(f).range != graph.edge(e).source:
        raise GraphValidationError(f"r({f}) must equal s({e})")
    one = h.target.one()
    p = corner_projection(h, e)
    if u_inv is None:
        u_inv = corner_inverse(p, u)
    hf, hf_star = h.images[f], h.images[f + '*']
    q = hf * p * hf_star
    w, w_inv = hf * u * hf_star, hf * u_inv * hf_star
    left = sigma_act(k1_class(one - p + u, one - p + u_inv, stage_cap))
    right = k1_class(one - q + w, one - q + w_inv, stage_cap)
    return left, right


def source_elimination_inclusion(algebra: LeavittPathAlgebra, v: str) -> GradedHom:
    """Inclusion L(E minus v) -> L(E) sending each generator to itself (not unital)"""
    smaller = LeavittPathAlgebra(source_elimination(algebra.graph, v), algebra.ring)
    images = {g: algebra.generator(g) for g in smaller.generator_names()}
    return GradedHom(smaller, algebra, images, f"incl\\{v}")
