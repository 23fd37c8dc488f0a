"""
Leavitt Path Algebra Model
Exact arithmetic on linear combinations of monomials alpha beta* in CK2-normal form
"""
import logging
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

from config.settings import NORMALIZE_FUEL
from models.coefficients import CoefficientRing
from models.errors import (
    GraphMismatch, InvalidSpecialEdge, NormalizationFuelExhausted, RingMismatch, SinkVertex,
    UnknownGenerator,
)
from models.graph import Graph, Path, classify, path_degree

logger = logging.getLogger(__name__)


class Monomial(NamedTuple):
    """alpha beta* with r(alpha) = r(beta)"""
    alpha: Path
    beta: Path

    @property
    def vertex(self) -> str:
        return self.alpha.range

    @property
    def is_vertex(self) -> bool:
        return self.alpha.is_vertex and self.beta.is_vertex

    def star(self) -> 'Monomial':
        return Monomial(self.beta, self.alpha)


def vertex_monomial(v: str) -> Monomial:
    p = Path(v, v, ())
    return Monomial(p, p)


def concat(first: Path, second: Path) -> Path:
    """first followed by second; r(first) must equal s(second)"""
    return Path(first.source, second.range, first.edges + second.edges)


def monomial_product(x: Monomial, y: Monomial) -> Optional[Monomial]:
    """(alpha beta*)(gamma delta*) before normalization, or None when it vanishes"""
    alpha, beta = x
    gamma, delta = y
    if beta.source != gamma.source:
        return None
    n, m = len(beta.edges), len(gamma.edges)
    if n <= m and gamma.edges[:n] == beta.edges:
        rest = Path(beta.range, gamma.range, gamma.edges[n:])
        return Monomial(concat(alpha, rest), delta)
    if m < n and beta.edges[:m] == gamma.edges:
        rest = Path(gamma.range, beta.range, beta.edges[m:])
        return Monomial(alpha, concat(delta, rest))
    return None


class LeavittPathAlgebra:
    """L(E) over a coefficient ring, with a fixed special edge per regular vertex"""

    def __init__(self, graph: Graph, ring: Optional[CoefficientRing] = None,
                 special: Optional[Dict[str, str]] = None):
        self.graph = graph
        self.ring = ring or CoefficientRing()
        regular = classify(graph).regular
        choice = {v: graph.out_edges(v)[0].name for v in regular}
        for v, e in (special or {}).items():
            if v not in choice or not graph.has_edge(e) or graph.edge(e).source != v:
                raise InvalidSpecialEdge(f"'{e}' is not an edge emitted by regular vertex '{v}'")
            choice[v] = e
        self.special = choice

    def __eq__(self, other) -> bool:
        return (isinstance(other, LeavittPathAlgebra) and self.graph == other.graph
                and self.ring == other.ring and self.special == other.special)

    def __hash__(self):
        return hash((self.graph, self.ring))

    def __repr__(self) -> str:
        return f"L({self.graph.name}) over {self.ring.label}"

    def with_ring(self, ring: CoefficientRing) -> 'LeavittPathAlgebra':
        return LeavittPathAlgebra(self.graph, ring, self.special)

    @property
    def polynomial_extension(self) -> 'LeavittPathAlgebra':
        return self.with_ring(self.ring.with_polynomials())

    @property
    def base_algebra(self) -> 'LeavittPathAlgebra':
        return self.with_ring(self.ring.base)

    # Constructors

    def element(self, terms: Dict[Monomial, object], normalized: bool = False) -> 'AlgebraElement':
        x = AlgebraElement(self, {m: c for m, c in terms.items() if not self.ring.is_zero(c)}, normalized)
        return self.normalize(x)

    def zero(self) -> 'AlgebraElement':
        return AlgebraElement(self, {}, True)

    def one(self) -> 'AlgebraElement':
        return AlgebraElement(self, {vertex_monomial(v): self.ring.one for v in self.graph.vertices}, True)

    def scalar(self, c) -> 'AlgebraElement':
        return self.one().scale(c)

    def integer(self, k: int) -> 'AlgebraElement':
        return self.scalar(self.ring.from_int(k))

    def monomial(self, m: Monomial, c=None) -> 'AlgebraElement':
        coeff = self.ring.one if c is None else c
        return self.normalize(AlgebraElement(self, {m: coeff}, False))

    def vertex(self, v: str) -> 'AlgebraElement':
        if not self.graph.has_vertex(v):
            raise UnknownGenerator(v)
        return AlgebraElement(self, {vertex_monomial(v): self.ring.one}, True)

    def edge(self, name: str) -> 'AlgebraElement':
        if not self.graph.has_edge(name):
            raise UnknownGenerator(name)
        e = self.graph.edge(name)
        return AlgebraElement(self, {Monomial(Path(e.source, e.range, (name,)), Path(e.range, e.range, ())): self.ring.one}, True)

    def ghost(self, name: str) -> 'AlgebraElement':
        return self.edge(name).star()

    def path(self, p: Path) -> 'AlgebraElement':
        return AlgebraElement(self, {Monomial(p, Path(p.range, p.range, ())): self.ring.one}, True)

    def generator(self, name: str) -> 'AlgebraElement':
        """Resolve a vertex name, edge name or ghost 'e*'"""
        if name.endswith("*"):
            return self.ghost(name[:-1])
        if self.graph.has_vertex(name):
            return self.vertex(name)
        return self.edge(name)

    def generator_names(self) -> List[str]:
        names = list(self.graph.vertices)
        names += [e.name for e in self.graph.edges]
        names += [e.name + "*" for e in self.graph.edges]
        return names

    def cohn_idempotent(self, v: str) -> 'AlgebraElement':
        """q_v = v - sum ee* over s(e) = v, kept in the free basis (not normalized)"""
        if not self.graph.has_vertex(v):
            raise UnknownGenerator(v)
        out = self.graph.out_edges(v)
        if not out:
            raise SinkVertex(f"vertex '{v}' is a sink")
        terms = {vertex_monomial(v): self.ring.one}
        for e in out:
            p = Path(v, e.range, (e.name,))
            terms[Monomial(p, p)] = -self.ring.one
        return AlgebraElement(self, terms, False)

    # Normal form

    def violates_basis(self, m: Monomial) -> bool:
        alpha, beta = m
        if not alpha.edges or not beta.edges or alpha.edges[-1] != beta.edges[-1]:
            return False
        last = self.graph.edge(alpha.edges[-1])
        return self.special.get(last.source) == last.name

    def normalize(self, x: 'AlgebraElement') -> 'AlgebraElement':
        """Rewrite (a'e)(b'e)* with e special into a'b'* - sum over the other edges"""
        if x.normalized:
            return x
        ring = self.ring
        result: Dict[Monomial, object] = {}
        work: List[Tuple[Monomial, object]] = list(x.terms.items())
        fuel = NORMALIZE_FUEL
        rewrites = 0
        while work:
            m, c = work.pop()
            if not self.violates_basis(m):
                total = result.get(m, ring.zero) + c
                if ring.is_zero(total):
                    result.pop(m, None)
                else:
                    result[m] = total
                continue
            fuel -= 1
            if fuel < 0:
                raise NormalizationFuelExhausted("normalization did not terminate within the rewrite budget")
            rewrites += 1
            alpha, beta = m
            v = self.graph.edge(alpha.edges[-1]).source
            a_short = Path(alpha.source, v, alpha.edges[:-1])
            b_short = Path(beta.source, v, beta.edges[:-1])
            work.append((Monomial(a_short, b_short), c))
            for e in self.graph.out_edges(v):
                if e.name == self.special[v]:
                    continue
                work.append((Monomial(Path(a_short.source, e.range, a_short.edges + (e.name,)),
                                      Path(b_short.source, e.range, b_short.edges + (e.name,))), -c))
        if rewrites:
            logger.debug("normalized %d terms with %d CK2 rewrites", len(x.terms), rewrites)
        return AlgebraElement(self, result, True)

    def monomial_degree(self, m: Monomial) -> int:
        return path_degree(self.graph, m.alpha) - path_degree(self.graph, m.beta)

    def monomial_sort_key(self, m: Monomial) -> Tuple:
        order = self.graph.vertices
        return (m.alpha.length + m.beta.length, m.alpha.edges, m.beta.edges, order.index(m.vertex),
                order.index(m.alpha.source))

    def require_compatible(self, other: 'LeavittPathAlgebra') -> None:
        if self.graph != other.graph:
            raise GraphMismatch(f"elements of L({self.graph.name}) and L({other.graph.name}) cannot be combined")
        if self.ring != other.ring:
            raise RingMismatch(f"coefficient rings differ: {self.ring.label} vs {other.ring.label}")

    def embed(self, x: 'AlgebraElement') -> 'AlgebraElement':
        """Coerce an element over the base field into this algebra (e.g. L(E) into L(E)[t])"""
        if x.algebra == self:
            return x
        if x.algebra.graph != self.graph:
            raise GraphMismatch(f"cannot embed an element of L({x.algebra.graph.name}) into {self}")
        terms = {m: self.ring.coerce(c, x.algebra.ring) for m, c in x.terms.items()}
        return self.normalize(AlgebraElement(self, terms, x.normalized and x.algebra.special == self.special))

    def indeterminate(self) -> 'AlgebraElement':
        return self.one().scale(self.ring.indeterminate)


Scalar = Union[int, object]


class AlgebraElement:
    """Finite linear combination of monomials; immutable once built"""

    __slots__ = ('algebra', 'terms', 'normalized')

    def __init__(self, algebra: LeavittPathAlgebra, terms: Dict[Monomial, object], normalized: bool):
        self.algebra = algebra
        self.terms = terms
        self.normalized = normalized

    @property
    def graph(self) -> Graph:
        return self.algebra.graph

    @property
    def ring(self) -> CoefficientRing:
        return self.algebra.ring

    def normalize(self) -> 'AlgebraElement':
        return self.algebra.normalize(self)

    def is_zero(self) -> bool:
        return not self.normalize().terms

    def _coerce(self, other) -> 'AlgebraElement':
        if isinstance(other, AlgebraElement):
            self.algebra.require_compatible(other.algebra)
            return other
        if isinstance(other, int):
            return self.algebra.integer(other)
        return NotImplemented

    def __add__(self, other) -> 'AlgebraElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        terms = dict(self.normalize().terms)
        for m, c in other.normalize().terms.items():
            total = terms.get(m, ring.zero) + c
            if ring.is_zero(total):
                terms.pop(m, None)
            else:
                terms[m] = total
        return AlgebraElement(self.algebra, terms, True)

    __radd__ = __add__

    def __neg__(self) -> 'AlgebraElement':
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()}, self.normalized)

    def __sub__(self, other) -> 'AlgebraElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'AlgebraElement':
        return (-self) + other

    def scale(self, c) -> 'AlgebraElement':
        """Multiply by a coefficient of this algebra's ring"""
        ring = self.ring
        if isinstance(c, int):
            c = ring.from_int(c)
        terms = {}
        for m, a in self.terms.items():
            product = c * a
            if not ring.is_zero(product):
                terms[m] = product
        return AlgebraElement(self.algebra, terms, self.normalized)

    def __mul__(self, other) -> 'AlgebraElement':
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        terms: Dict[Monomial, object] = {}
        for m1, c1 in self.normalize().terms.items():
            for m2, c2 in other.normalize().terms.items():
                m = monomial_product(m1, m2)
                if m is None:
                    continue
                terms[m] = terms.get(m, ring.zero) + c1 * c2
        terms = {m: c for m, c in terms.items() if not ring.is_zero(c)}
        return self.algebra.normalize(AlgebraElement(self.algebra, terms, False))

    def __rmul__(self, other) -> 'AlgebraElement':
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> 'AlgebraElement':
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.algebra.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.algebra.integer(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.algebra != other.algebra:
            return False
        return self.normalize().terms == other.normalize().terms

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def star(self) -> 'AlgebraElement':
        terms = {m.star(): c for m, c in self.normalize().terms.items()}
        return self.algebra.normalize(AlgebraElement(self.algebra, terms, False))

    def degrees(self) -> List[int]:
        return sorted({self.algebra.monomial_degree(m) for m in self.normalize().terms})

    def degree(self) -> Optional[int]:
        """The common degree of a nonzero homogeneous element, else None"""
        found = self.degrees()
        return found[0] if len(found) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, d: int) -> 'AlgebraElement':
        terms = {m: c for m, c in self.normalize().terms.items() if self.algebra.monomial_degree(m) == d}
        return AlgebraElement(self.algebra, terms, True)

    def monomials(self) -> Iterable[Tuple[Monomial, object]]:
        """Terms in a deterministic display order"""
        x = self.normalize()
        return sorted(x.terms.items(), key=lambda item: self.algebra.monomial_sort_key(item[0]))

    def evaluate_at(self, value) -> 'AlgebraElement':
        """Substitute the central indeterminate t = value"""
        if not self.ring.polynomial:
            return self
        base = self.algebra.base_algebra
        terms = {m: self.ring.evaluate(c, value) for m, c in self.terms.items()}
        return base.element(terms, normalized=self.normalized)

    def __str__(self) -> str:
        from utils.data_helpers import DataFormatter
        return DataFormatter.format_element(self)

    def __repr__(self) -> str:
        return f"<{self} in {self.algebra!r}>"
