"""
Degree-Zero Component
Filtration stages of L(E)_0, block-matrix form, Bratteli maps, K0/K1 classes, corner skew and fullness
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from config.settings import STAGE_CAP
from models.algebra import AlgebraElement, LeavittPathAlgebra, Monomial
from models.bfmod import DimensionModule, DimModElement
from models.errors import (
    NoIncomingEdge, NonRegularGraph, NotAUnit, NotDegreeZero, NotIdempotent, NotPrimitive, PaddingNeedsRegular,
    StageTooSmall, UnsupportedCoefficientField,
)
from models.graph import Path, classify, is_primitive, paths_from, paths_into, paths_of_length

logger = logging.getLogger(__name__)


def require_balanced(x: AlgebraElement) -> None:
    """Every monomial must have |alpha| = |beta| (degree zero for path length)"""
    for m in x.normalize().terms:
        if m.alpha.length != m.beta.length:
            raise NotDegreeZero(f"{x} has a monomial of length degree {m.alpha.length - m.beta.length}")


def filtration_stage(x: AlgebraElement) -> int:
    require_balanced(x)
    return max((m.alpha.length for m in x.normalize().terms), default=0)


def _pad(algebra: LeavittPathAlgebra, m: Monomial, n: int) -> Iterator[Monomial]:
    if m.alpha.length == n:
        yield m
        return
    out = algebra.graph.out_edges(m.vertex)
    if not out:
        raise PaddingNeedsRegular(f"cannot expand past sink '{m.vertex}' to reach stage {n}")
    for e in out:
        a = Path(m.alpha.source, e.range, m.alpha.edges + (e.name,))
        b = Path(m.beta.source, e.range, m.beta.edges + (e.name,))
        yield from _pad(algebra, Monomial(a, b), n)


def padded_terms(x: AlgebraElement, n: int) -> Dict[Monomial, object]:
    """x rewritten with every monomial of length exactly n (CK2 at ranges)"""
    stage = filtration_stage(x)
    if stage > n:
        raise StageTooSmall(f"element lives at stage {stage}, above the requested stage {n}")
    ring = x.ring
    terms: Dict[Monomial, object] = {}
    for m, c in x.normalize().terms.items():
        for padded in _pad(x.algebra, m, n):
            terms[padded] = terms.get(padded, ring.zero) + c
    return terms


@dataclass
class BlockMatrixForm:
    """One square coefficient matrix per vertex, indexed by the paths of length `stage` into it"""
    algebra: LeavittPathAlgebra
    stage: int
    blocks: Dict[str, List[List]]

    def index(self, v: str) -> List[Path]:
        return paths_into(self.algebra.graph, v, self.stage)

    def matrix(self, v: str) -> DomainMatrix:
        rows = self.blocks[v]
        return DomainMatrix(rows, (len(rows), len(rows)), self.algebra.ring.domain)

    def __mul__(self, other: 'BlockMatrixForm') -> 'BlockMatrixForm':
        if other.stage != self.stage:
            raise StageTooSmall("block forms live at different stages")
        ring = self.algebra.ring
        blocks = {}
        for v, a in self.blocks.items():
            b = other.blocks[v]
            size = len(a)
            blocks[v] = [[sum((a[i][k] * b[k][j] for k in range(size)), ring.zero) for j in range(size)]
                         for i in range(size)]
        return BlockMatrixForm(self.algebra, self.stage, blocks)

    def __eq__(self, other) -> bool:
        return (isinstance(other, BlockMatrixForm) and self.stage == other.stage
                and self.algebra == other.algebra and self.blocks == other.blocks)

    def sizes(self) -> Dict[str, int]:
        return {v: len(rows) for v, rows in self.blocks.items()}


def _empty_blocks(algebra: LeavittPathAlgebra, n: int) -> Tuple[Dict[str, List[List]], Dict[str, Dict[Path, int]]]:
    zero = algebra.ring.zero
    blocks, positions = {}, {}
    for v in algebra.graph.vertices:
        index = paths_into(algebra.graph, v, n)
        positions[v] = {p: i for i, p in enumerate(index)}
        blocks[v] = [[zero] * len(index) for _ in index]
    return blocks, positions


def to_block_form(x: AlgebraElement, n: int) -> BlockMatrixForm:
    blocks, positions = _empty_blocks(x.algebra, n)
    for m, c in padded_terms(x, n).items():
        v = m.vertex
        i, j = positions[v][m.alpha], positions[v][m.beta]
        blocks[v][i][j] = blocks[v][i][j] + c
    return BlockMatrixForm(x.algebra, n, blocks)


def from_block_form(b: BlockMatrixForm) -> AlgebraElement:
    algebra = b.algebra
    ring = algebra.ring
    terms: Dict[Monomial, object] = {}
    for v, rows in b.blocks.items():
        index = b.index(v)
        for i, row in enumerate(rows):
            for j, c in enumerate(row):
                if not ring.is_zero(c):
                    terms[Monomial(index[i], index[j])] = c
    return algebra.element(terms)


def bratteli_embed(b: BlockMatrixForm) -> BlockMatrixForm:
    """e_(alpha,beta) in block v goes to the sum of e_(alpha e, beta e) over s(e) = v"""
    graph = b.algebra.graph
    if not classify(graph).is_regular:
        raise NonRegularGraph(f"graph '{graph.name}' has sinks")
    blocks, positions = _empty_blocks(b.algebra, b.stage + 1)
    for v, rows in b.blocks.items():
        index = b.index(v)
        for i, row in enumerate(rows):
            for j, c in enumerate(row):
                for e in graph.out_edges(v):
                    w = e.range
                    a = Path(index[i].source, w, index[i].edges + (e.name,))
                    c2 = Path(index[j].source, w, index[j].edges + (e.name,))
                    p, q = positions[w][a], positions[w][c2]
                    blocks[w][p][q] = blocks[w][p][q] + c
    return BlockMatrixForm(b.algebra, b.stage + 1, blocks)


def _require_field(x: AlgebraElement) -> None:
    if x.ring.polynomial:
        raise UnsupportedCoefficientField(f"K-theory classes need field coefficients, not {x.ring.label}")


def k0_class(p: AlgebraElement, stage_cap: int = STAGE_CAP) -> DimModElement:
    """Rank vector of the blocks of an idempotent at its stage"""
    _require_field(p)
    require_balanced(p)
    if p * p != p:
        raise NotIdempotent(f"{p} is not idempotent")
    n = filtration_stage(p)
    b = to_block_form(p, n)
    module = DimensionModule(p.graph, stage_cap)
    ranks = [b.matrix(v).rank() if b.blocks[v] else 0 for v in p.graph.vertices]
    return module.element(ranks, n)


@dataclass(frozen=True)
class TrivialK1:
    """K1 of an ultramatricial algebra over F2 vanishes"""
    reason: str = "K1 of an ultramatricial algebra over F2 is trivial"

    def describe(self) -> str:
        return "1 (trivial group)"

    def to_record(self) -> Dict:
        return {'trivial': True, 'reason': self.reason}


def unit_inverse(u: AlgebraElement) -> AlgebraElement:
    """Two-sided inverse of a degree-zero unit, computed blockwise"""
    _require_field(u)
    n = filtration_stage(u)
    b = to_block_form(u, n)
    field = u.ring.field
    blocks = {}
    for v in u.graph.vertices:
        rows = b.blocks[v]
        if not rows:
            blocks[v] = []
            continue
        dm = b.matrix(v)
        if u.ring.is_zero(dm.det()):
            raise NotAUnit(f"block at vertex '{v}' of {u} is singular")
        inv = dm.inv().to_Matrix()
        blocks[v] = [[field.from_sympy(inv[i, j]) for j in range(len(rows))] for i in range(len(rows))]
    inverse = from_block_form(BlockMatrixForm(u.algebra, n, blocks))
    one = u.algebra.one()
    if u * inverse != one or inverse * u != one:
        raise NotAUnit(f"{u} has no two-sided inverse in L(E)_0")
    return inverse


def k1_class(u: AlgebraElement, inverse: Optional[AlgebraElement] = None, stage_cap: int = STAGE_CAP):
    """Block determinants of a degree-zero unit as a multiplicative class; trivial over F2"""
    _require_field(u)
    require_balanced(u)
    if u.ring.characteristic == 2:
        return TrivialK1()
    if inverse is None:
        inverse = unit_inverse(u)
    else:
        one = u.algebra.one()
        if u * inverse != one or inverse * u != one:
            raise NotAUnit(f"the supplied inverse of {u} does not verify")
    n = filtration_stage(u)
    b = to_block_form(u, n)
    dets = [b.matrix(v).det() if b.blocks[v] else u.ring.one for v in u.graph.vertices]
    module = DimensionModule(u.graph, stage_cap)
    return module.multiplicative(dets, n, u.ring)


@dataclass
class CornerSkewStructure:
    algebra: LeavittPathAlgebra
    choice: Dict[str, str]
    t_plus: AlgebraElement
    t_minus: AlgebraElement

    @property
    def p(self) -> AlgebraElement:
        return self.t_plus * self.t_minus


def corner_skew(algebra: LeavittPathAlgebra, choice: Optional[Dict[str, str]] = None) -> CornerSkewStructure:
    """t+ = sum of one edge e_v with r(e_v) = v per vertex, t- = (t+)*"""
    graph = algebra.graph
    selected = {}
    for v in graph.vertices:
        incoming = graph.in_edges(v)
        if not incoming:
            raise NoIncomingEdge(v)
        name = (choice or {}).get(v, incoming[0].name)
        if not graph.has_edge(name) or graph.edge(name).range != v:
            raise NoIncomingEdge(v)
        selected[v] = name
    t_plus = algebra.zero()
    for v in graph.vertices:
        t_plus = t_plus + algebra.edge(selected[v])
    t_minus = t_plus.star()
    if t_minus * t_plus != algebra.one():
        raise ArithmeticError("t- t+ != 1 for the selected edges")
    return CornerSkewStructure(algebra, selected, t_plus, t_minus)


def alpha(cs: CornerSkewStructure, x: AlgebraElement) -> AlgebraElement:
    """The corner endomorphism x -> t+ x t- of L(E)_0"""
    require_balanced(x)
    return cs.t_plus * x * cs.t_minus


def corner_skew_transport(h, cs: CornerSkewStructure) -> Tuple[AlgebraElement, AlgebraElement, bool]:
    """Images of t+ and t- under a graded map, and whether t- t+ = 1 still holds"""
    t_plus = h.apply(cs.t_plus)
    t_minus = h.apply(cs.t_minus)
    return t_plus, t_minus, t_minus * t_plus == h.target.one()


@dataclass
class FullnessCertificate:
    edge: str
    pairs: List[Tuple[AlgebraElement, AlgebraElement]]

    def projection(self) -> AlgebraElement:
        algebra = self.pairs[0][0].algebra
        return algebra.edge(self.edge) * algebra.ghost(self.edge)


def verify_fullness(cert: FullnessCertificate) -> bool:
    algebra = cert.pairs[0][0].algebra
    p = cert.projection()
    total = algebra.zero()
    for y, x in cert.pairs:
        total = total + y * p * x
    return total == algebra.one()


def fullness_certificate(algebra: LeavittPathAlgebra, edge: str) -> FullnessCertificate:
    """Witness sum y_i (ee*) x_i = 1 from length-N paths out of r(e), N the primitive exponent"""
    graph = algebra.graph
    e = graph.edge(edge)
    exponent = is_primitive(graph)
    if exponent is None:
        raise NotPrimitive(f"graph '{graph.name}' is not primitive")
    connectors = {}
    for p in paths_from(graph, e.range, exponent):
        if p.length == exponent and p.range not in connectors:
            connectors[p.range] = p
    pairs = []
    for gamma in paths_of_length(graph, exponent + 1):
        pi = connectors[gamma.range]
        through = Path(e.source, pi.range, (edge,) + pi.edges)
        pairs.append((algebra.monomial(Monomial(gamma, through)), algebra.monomial(Monomial(through, gamma))))
    cert = FullnessCertificate(edge, pairs)
    if not verify_fullness(cert):
        raise ArithmeticError(f"fullness certificate for '{edge}' does not verify")
    logger.debug("fullness certificate for %s uses %d pairs (N = %d)", edge, len(pairs), exponent)
    return cert
