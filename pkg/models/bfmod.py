"""
Bowen-Franks Modules
Z[sigma]-presentations, the dimension-module model with its order, and isomorphism certificates
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix, Poly, Symbol, factor_list, factorint

from config.settings import (
    ENTRY_MAX, LAG_MAX, SEARCH_CANDIDATE_LIMIT, SEARCH_FREE_PARAMETERS, STAGE_CAP,
)
from models.coefficients import CoefficientRing
from models.errors import GraphMismatch, InvalidBounds, NotEssential, StageCapExceeded
from models.graph import Graph, classify, dual_graph, is_primitive, require_regular, square_adjacency
from models.integer_matrices import (
    as_int_matrix, diagonal, identity, integer_kernel, integer_solve, matrix_power, smith_normal_form,
)
from models.reports import VerificationReport

logger = logging.getLogger(__name__)

sigma = Symbol("sigma")
_x = Symbol("x")


# Presentations

@dataclass(frozen=True)
class BFPresentation:
    graph_name: str
    generators: Tuple[str, ...]
    relations: Matrix
    dual: bool = False

    def to_record(self) -> Dict:
        return {
            'graph': self.graph_name,
            'kind': 'dual' if self.dual else 'graded',
            'generators': list(self.generators),
            'relations': [[str(x) for x in self.relations.row(i)] for i in range(self.relations.rows)],
        }


def bf_graded(g: Graph) -> BFPresentation:
    """Columns v - sigma * sum r(e) over s(e) = v, one per regular vertex"""
    a = square_adjacency(g)
    regular = classify(g).regular
    n = len(g.vertices)
    cols = [g.vertex_index(v) for v in regular]

    def entry(i, j):
        v = cols[j]
        return (1 if i == v else 0) - sigma * int(a[v, i])

    return BFPresentation(g.name, g.vertices, Matrix(n, len(cols), entry), dual=False)


def bf_dual(g: Graph) -> BFPresentation:
    """I^t - sigma A_E, rows indexed by regular vertices"""
    a = square_adjacency(g)
    regular = classify(g).regular
    rows = [g.vertex_index(v) for v in regular]
    n = len(g.vertices)

    def entry(i, j):
        v = rows[i]
        return (1 if j == v else 0) - sigma * int(a[v, j])

    return BFPresentation(g.name, g.vertices, Matrix(len(rows), n, entry), dual=True)


def bf_of_dual_graph_check(g: Graph) -> bool:
    if not classify(g).is_essential:
        raise NotEssential(f"graph '{g.name}' is not essential")
    return bf_dual(g).relations.expand() == bf_graded(dual_graph(g)).relations.expand()


@dataclass(frozen=True)
class UngradedBF:
    divisors: Tuple[int, ...]
    free_rank: int

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.divisors] + (["Z^%d" % self.free_rank] if self.free_rank else [])
        return " + ".join(parts) if parts else "0"


def bf_ungraded(g: Graph) -> UngradedBF:
    """Cokernel of I - A^t by Smith normal form"""
    require_regular(g)
    a = square_adjacency(g)
    m = identity(len(g.vertices)) - a.T
    _, d, _ = smith_normal_form(m, check=True)
    diag = diagonal(d)
    divisors = tuple(int(x) for x in diag if x not in (0, 1))
    return UngradedBF(divisors, sum(1 for x in diag if x == 0))


# Dimension module lim(Z^E0, A^t)

class Positivity(str, Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    NOT_POSITIVE = "not-positive"
    UNDECIDED = "undecided"


class DimensionModule:
    """Direct limit of (Z^E0, A^t); a class (v, k) is identified with (A^t v, k+1)"""

    def __init__(self, graph: Graph, stage_cap: int = STAGE_CAP):
        require_regular(graph)
        if stage_cap < 0:
            raise InvalidBounds("stage cap must be nonnegative")
        self.graph = graph
        self.stage_cap = stage_cap
        self.adjacency = square_adjacency(graph)
        self.at = self.adjacency.T.copy()
        self.rank = len(graph.vertices)
        self._perron: Optional[Tuple[Poly, Tuple]] = None
        self._primitive: Optional[Optional[int]] = None

    def __eq__(self, other) -> bool:
        return isinstance(other, DimensionModule) and self.graph == other.graph

    def __hash__(self):
        return hash(self.graph)

    def element(self, vector: Sequence, stage: int = 0) -> 'DimModElement':
        if len(vector) != self.rank:
            raise GraphMismatch(f"vector of length {len(vector)} for a graph with {self.rank} vertices")
        return DimModElement(self, tuple(int(x) for x in vector), stage)

    def basis(self, v: str, stage: int = 0) -> 'DimModElement':
        vec = [0] * self.rank
        vec[self.graph.vertex_index(v)] = 1
        return self.element(vec, stage)

    def order_unit(self) -> 'DimModElement':
        return self.element([1] * self.rank, 0)

    def zero(self) -> 'DimModElement':
        return self.element([0] * self.rank, 0)

    def multiplicative(self, vector: Sequence, stage: int, field: CoefficientRing) -> 'DimModElement':
        return DimModElement(self, tuple(vector), stage, field)

    def multiplicative_one(self, field: CoefficientRing, stage: int = 0) -> 'DimModElement':
        return self.multiplicative([field.one] * self.rank, stage, field)

    # Connecting maps

    def push(self, x: 'DimModElement') -> Tuple:
        """Image of the vector under the connecting map to the next stage"""
        if x.field is None:
            return tuple(self.at.dot(np.array(x.vector, dtype=object)))
        out = []
        for w in range(self.rank):
            value = x.field.one
            for v in range(self.rank):
                for _ in range(int(self.adjacency[v, w])):
                    value = value * x.vector[v]
            out.append(value)
        return tuple(out)

    def promote(self, x: 'DimModElement', stage: int) -> 'DimModElement':
        if stage < x.stage:
            raise ValueError("cannot promote to an earlier stage")
        current = x
        while current.stage < stage:
            current = DimModElement(self, self.push(current), current.stage + 1, current.field)
        return current

    def stabilization_bound(self, field: Optional[CoefficientRing]) -> int:
        """Steps after which kernels of the connecting maps stop growing"""
        if field is None or not field.characteristic:
            return self.rank
        length = sum(factorint(field.characteristic - 1).values())
        return self.rank * max(1, length)

    def _is_trivial(self, x: 'DimModElement') -> bool:
        if x.field is None:
            return all(c == 0 for c in x.vector)
        return all(c == x.field.one for c in x.vector)

    def equal(self, x: 'DimModElement', y: 'DimModElement') -> bool:
        """Equality in the limit; raises StageCapExceeded rather than guessing"""
        if x.module != self or y.module != self:
            raise GraphMismatch("elements belong to different dimension modules")
        if (x.field is None) != (y.field is None):
            raise GraphMismatch("cannot compare additive and multiplicative classes")
        stage = max(x.stage, y.stage)
        diff = self.promote(x, stage) - self.promote(y, stage)
        bound = self.stabilization_bound(x.field)
        for step in range(bound + 1):
            if self._is_trivial(diff):
                return True
            if step == bound:
                break
            if step >= self.stage_cap:
                raise StageCapExceeded(self.stage_cap)
            diff = DimModElement(self, self.push(diff), diff.stage + 1, diff.field)
        return False

    def canonicalize(self, x: 'DimModElement') -> 'DimModElement':
        """Lower the stage while an integer preimage under A^t exists"""
        if x.field is not None:
            return x
        current = x
        while current.stage > 0:
            pre = integer_solve(self.at, list(current.vector))
            if pre is None:
                break
            current = DimModElement(self, tuple(int(c) for c in pre), current.stage - 1)
        return current

    def sigma_act(self, x: 'DimModElement', power: int = 1) -> 'DimModElement':
        current = x
        if power >= 0:
            return DimModElement(self, current.vector, current.stage + power, current.field)
        for _ in range(-power):
            current = DimModElement(self, self.push(current), current.stage, current.field)
        return current

    # Order

    @property
    def primitive_exponent(self) -> Optional[int]:
        if self._primitive is None:
            self._primitive = (is_primitive(self.graph),)
        return self._primitive[0]

    def perron_root(self) -> Tuple[Poly, Tuple]:
        """Irreducible factor of the characteristic polynomial carrying the Perron root, with an isolating interval"""
        if self._perron is None:
            chi = Poly(Matrix(self.adjacency.tolist()).charpoly(_x).as_expr(), _x)
            (low, high), _ = chi.intervals()[-1]
            _, factors = factor_list(chi)
            factor = next(f for f, _ in factors if f.count_roots(low, high) > 0)
            self._perron = (factor, (low, high))
        return self._perron

    def perron_pairing(self, x: 'DimModElement') -> int:
        """Sign of <l, x> for the positive left Perron vector l of A^t

        l is the first column of adj(xI - A) evaluated at the Perron root. The pairing
        is a rational polynomial in the root; its sign is read off an isolating interval
        refined until the polynomial has no root in it.
        """
        factor, (low, high) = self.perron_root()
        adjugate = (_x * Matrix.eye(self.rank) - Matrix(self.adjacency.tolist())).adjugate()
        pairing = Poly(sum(int(c) * adjugate[i, 0] for i, c in enumerate(x.vector)), _x, domain="QQ").rem(factor)
        if pairing.is_zero:
            return 0
        while pairing.count_roots(low, high) > 0:
            low, high = factor.refine_root(low, high, eps=(high - low) / 2 ** 32)
        return 1 if pairing.eval(low) > 0 else -1

    def is_positive(self, x: 'DimModElement') -> Positivity:
        zero: Optional[bool] = None
        try:
            zero = self.equal(x, self.zero())
        except StageCapExceeded:
            pass
        if zero:
            return Positivity.ZERO
        current = x.vector
        for _ in range(self.stage_cap + 1):
            if all(c >= 0 for c in current):
                return Positivity.POSITIVE
            if all(c <= 0 for c in current):
                return Positivity.NOT_POSITIVE
            current = tuple(self.at.dot(np.array(current, dtype=object)))
        if self.primitive_exponent is not None:
            sign = self.perron_pairing(x)
            # a nonzero class with no Perron component is never eventually positive
            if sign < 0 or (sign == 0 and zero is False):
                return Positivity.NOT_POSITIVE
        return Positivity.UNDECIDED


@dataclass(frozen=True, eq=False)
class DimModElement:
    """Stage-tagged vector; multiplicative classes carry their coefficient field"""
    module: DimensionModule
    vector: Tuple
    stage: int = 0
    field: Optional[CoefficientRing] = None

    @property
    def multiplicative(self) -> bool:
        return self.field is not None

    def _combine(self, other: 'DimModElement', sign: int) -> 'DimModElement':
        if other.module != self.module or other.field != self.field:
            raise GraphMismatch("elements belong to different dimension modules")
        stage = max(self.stage, other.stage)
        a = self.module.promote(self, stage)
        b = self.module.promote(other, stage)
        if self.field is None:
            vec = tuple(p + sign * q for p, q in zip(a.vector, b.vector))
        else:
            ring = self.field
            vec = tuple(p * (q if sign > 0 else ring.inverse(q)) for p, q in zip(a.vector, b.vector))
        return DimModElement(self.module, vec, stage, self.field)

    def __add__(self, other: 'DimModElement') -> 'DimModElement':
        return self._combine(other, 1)

    def __sub__(self, other: 'DimModElement') -> 'DimModElement':
        return self._combine(other, -1)

    def __neg__(self) -> 'DimModElement':
        if self.field is not None:
            return DimModElement(self.module, tuple(self.field.inverse(c) for c in self.vector), self.stage, self.field)
        return DimModElement(self.module, tuple(-c for c in self.vector), self.stage)

    def __mul__(self, other: 'DimModElement') -> 'DimModElement':
        """Group operation of a multiplicative class"""
        return self._combine(other, 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DimModElement):
            return NotImplemented
        return self.module.equal(self, other)

    __hash__ = None

    def at_stage(self, stage: int) -> 'DimModElement':
        return self.module.promote(self, stage)

    def describe(self) -> str:
        if self.field is None:
            entries = ", ".join(str(c) for c in self.vector)
        else:
            entries = ", ".join(self.field.format(c) for c in self.vector)
        return f"({entries}) @ {self.stage}"

    __str__ = describe

    def to_record(self) -> Dict:
        values = [int(c) for c in self.vector] if self.field is None else [self.field.format(c) for c in self.vector]
        return {'vector': values, 'stage': self.stage, 'multiplicative': self.field is not None}


def dim_equal(x: DimModElement, y: DimModElement) -> bool:
    return x.module.equal(x, y)


def canonicalize(x: DimModElement) -> DimModElement:
    return x.module.canonicalize(x)


def sigma_act(x: DimModElement, power: int = 1) -> DimModElement:
    return x.module.sigma_act(x, power)


def is_positive(x: DimModElement) -> Positivity:
    return x.module.is_positive(x)


# Certificates

@dataclass
class IsoCertificate:
    """M : F0 x E0 at lag `forward_lag`, M' : E0 x F0 at lag `lag`

    Both composites are the identity in the limit: M'M = (A_E^t)^total_lag and
    MM' = (A_F^t)^total_lag. Pointed means M 1_E @ forward_lag equals 1_F @ 0.
    """
    m: np.ndarray
    m_prime: np.ndarray
    lag: int
    forward_lag: int = 0

    @property
    def total_lag(self) -> int:
        return self.lag + self.forward_lag

    def to_record(self) -> Dict:
        record = {'lag': self.lag}
        if self.forward_lag:
            record['forward_lag'] = self.forward_lag
        record['M'] = [[int(x) for x in row] for row in self.m.tolist()]
        record["M'"] = [[int(x) for x in row] for row in self.m_prime.tolist()]
        return record


@dataclass(frozen=True)
class NotFoundWithinBounds:
    lag_max: int
    entry_max: int
    candidates_tested: int
    reason: str = "search exhausted"

    def to_record(self) -> Dict:
        return {'result': 'not-found-within-bounds', 'lag_max': self.lag_max, 'entry_max': self.entry_max,
                'candidates_tested': self.candidates_tested, 'reason': self.reason}


def _columns(module: DimensionModule, m: np.ndarray, stage: int) -> List[DimModElement]:
    return [module.element(list(m[:, j]), stage) for j in range(m.shape[1])]


def _positivity_check(report: VerificationReport, name: str, module: DimensionModule, m: np.ndarray) -> None:
    outcomes = [module.is_positive(col) for col in _columns(module, m, 0)]
    bad = [j for j, o in enumerate(outcomes) if o == Positivity.NOT_POSITIVE]
    open_ = [j for j, o in enumerate(outcomes) if o == Positivity.UNDECIDED]
    if bad:
        report.add(name, False, f"column {bad[0]} is not positive")
    elif open_:
        report.add(name, None, f"positivity of column {open_[0]} undecided within stage cap {module.stage_cap}")
    else:
        report.add(name, True)


def verify_iso_certificate(e: Graph, f: Graph, cert: IsoCertificate,
                           stage_cap: int = STAGE_CAP) -> VerificationReport:
    """Check every defining property of a pointed preordered module isomorphism"""
    report = VerificationReport(f"iso {e.name} -> {f.name}")
    mod_e = DimensionModule(e, stage_cap)
    mod_f = DimensionModule(f, stage_cap)
    m = np.array(cert.m, dtype=object)
    mp = np.array(cert.m_prime, dtype=object)
    shapes_ok = (m.ndim == 2 and mp.ndim == 2 and cert.lag >= 0 and cert.forward_lag >= 0
                 and m.shape == (mod_f.rank, mod_e.rank) and mp.shape == (mod_e.rank, mod_f.rank))
    report.add("shape", shapes_ok, "" if shapes_ok else
               f"expected M {mod_f.rank}x{mod_e.rank}, M' {mod_e.rank}x{mod_f.rank} and lags >= 0")
    if not shapes_ok:
        return report
    ae, af = mod_e.at, mod_f.at
    report.add("intertwines-forward", np.array_equal(af.dot(m), m.dot(ae)), "A_F^t M != M A_E^t")
    report.add("intertwines-backward", np.array_equal(ae.dot(mp), mp.dot(af)), "A_E^t M' != M' A_F^t")
    report.add("left-inverse", np.array_equal(mp.dot(m), matrix_power(ae, cert.total_lag)), "M'M != (A_E^t)^lag")
    report.add("right-inverse", np.array_equal(m.dot(mp), matrix_power(af, cert.total_lag)), "MM' != (A_F^t)^lag")
    _positivity_check(report, "positive-forward", mod_f, m)
    _positivity_check(report, "positive-backward", mod_e, mp)
    image = mod_f.element(list(m.dot(np.array([1] * mod_e.rank, dtype=object))), cert.forward_lag)
    try:
        pointed = mod_f.equal(image, mod_f.order_unit())
        report.add("pointed", pointed, "" if pointed else f"M 1_E = {image} is not the order unit of {f.name}")
    except StageCapExceeded as exc:
        report.add("pointed", None, str(exc))
    return report


def verify_hom_certificate(e: Graph, f: Graph, m, lag: int, pointed: bool = False,
                           stage_cap: int = STAGE_CAP) -> VerificationReport:
    """Module hom x@k -> Mx@(k+lag); equivariance is checked in the limit"""
    report = VerificationReport(f"hom {e.name} -> {f.name}")
    mod_e = DimensionModule(e, stage_cap)
    mod_f = DimensionModule(f, stage_cap)
    m = np.array(m, dtype=object)
    shape_ok = m.ndim == 2 and m.shape == (mod_f.rank, mod_e.rank) and lag >= 0
    report.add("shape", shape_ok, "" if shape_ok else f"expected a {mod_f.rank}x{mod_e.rank} matrix and lag >= 0")
    if not shape_ok:
        return report
    m = as_int_matrix(m)
    lhs = _columns(mod_f, mod_f.at.dot(m), lag + 1)
    rhs = _columns(mod_f, m.dot(mod_e.at), lag + 1)
    try:
        broken = [j for j, (a, b) in enumerate(zip(lhs, rhs)) if not mod_f.equal(a, b)]
        report.add("intertwines", not broken, f"column {broken[0]} fails A_F^t M ~ M A_E^t" if broken else "")
    except StageCapExceeded as exc:
        report.add("intertwines", None, str(exc))
    _positivity_check(report, "positive", mod_f, m)
    if pointed:
        image = mod_f.element(list(m.dot(np.array([1] * mod_e.rank, dtype=object))), lag)
        try:
            ok = mod_f.equal(image, mod_f.order_unit())
            report.add("pointed", ok, "" if ok else f"image of the order unit is {image}")
        except StageCapExceeded as exc:
            report.add("pointed", None, str(exc))
    return report


# Bounded search

def intertwiner_lattice(left: np.ndarray, right: np.ndarray) -> List[np.ndarray]:
    """Integer basis of {X : left X = X right} with X of shape left.rows x right.rows"""
    p, q = left.shape[0], right.shape[0]
    system = np.zeros((p * q, p * q), dtype=object)
    for i in range(p):
        for j in range(q):
            row = i * q + j
            for k in range(p):
                system[row, k * q + j] += left[i, k]
            for k in range(q):
                system[row, i * q + k] -= right[k, j]
    kernel = integer_kernel(system)
    return [kernel[:, c].reshape(p, q) for c in range(kernel.shape[1])]


def lattice_points(rank: int, bound: int) -> Iterator[Tuple[int, ...]]:
    """Nonzero integer vectors by increasing sup norm, lexicographic within a norm"""
    for norm in range(1, bound + 1):
        for point in itertools.product(range(-norm, norm + 1), repeat=rank):
            if max(abs(c) for c in point) == norm:
                yield point


def _combine_basis(basis: List[np.ndarray], coeffs: Sequence[int]) -> np.ndarray:
    total = np.zeros(basis[0].shape, dtype=object)
    for c, b in zip(coeffs, basis):
        total = total + int(c) * b
    return total


def _solve_inverse(m: np.ndarray, basis: List[np.ndarray], target_e: np.ndarray, target_f: np.ndarray,
                   entry_max: int) -> Optional[np.ndarray]:
    """Integer M' in span(basis) with M'M = target_e and MM' = target_f"""
    if not basis:
        return None
    rows, rhs = [], []
    left_products = [b.dot(m) for b in basis]
    right_products = [m.dot(b) for b in basis]
    for products, target in ((left_products, target_e), (right_products, target_f)):
        for i in range(target.shape[0]):
            for j in range(target.shape[1]):
                rows.append([int(p[i, j]) for p in products])
                rhs.append(int(target[i, j]))
    try:
        solution, params = Matrix(rows).gauss_jordan_solve(Matrix(rhs))
    except ValueError:
        return None
    free = list(params)
    if len(free) > SEARCH_FREE_PARAMETERS:
        free_choices: Iterator = iter([tuple([0] * len(free))])
    else:
        free_choices = itertools.chain([tuple([0] * len(free))], lattice_points(len(free), entry_max))
    for choice in free_choices:
        values = solution.subs(dict(zip(free, choice))) if free else solution
        if not all(v.is_Integer for v in values):
            continue
        candidate = _combine_basis(basis, [int(v) for v in values])
        if all(abs(x) <= entry_max for x in candidate.flat):
            return candidate
    return None


ProgressCallback = Callable[[int, int, str], None]


def _pointed_lags(module: DimensionModule, m: np.ndarray, lag_max: int) -> List[int]:
    """Forward lags k <= lag_max at which M 1_E @ k is the order unit"""
    image = list(m.dot(np.array([1] * m.shape[1], dtype=object)))
    unit = module.order_unit()
    lags = []
    for k in range(lag_max + 1):
        try:
            if module.equal(module.element(image, k), unit):
                lags.append(k)
        except StageCapExceeded:
            continue
    return lags


def search_pointed_iso(e: Graph, f: Graph, lag_max: int = LAG_MAX, entry_max: int = ENTRY_MAX,
                       stage_cap: int = STAGE_CAP, candidate_limit: int = SEARCH_CANDIDATE_LIMIT,
                       progress_callback: Optional[ProgressCallback] = None
                       ) -> Union[IsoCertificate, NotFoundWithinBounds]:
    """Bounded search over total lags, each split between M and M'

    A returned certificate has already passed verify_iso_certificate.
    """
    if lag_max < 0 or entry_max < 0 or stage_cap < 0:
        raise InvalidBounds("bounds must be nonnegative")
    mod_e = DimensionModule(e, stage_cap)
    mod_f = DimensionModule(f, stage_cap)
    forward = intertwiner_lattice(mod_f.at, mod_e.at)
    backward = intertwiner_lattice(mod_e.at, mod_f.at)
    logger.debug("intertwiner lattices for %s/%s have ranks %d and %d", e.name, f.name, len(forward), len(backward))
    if not forward or not backward:
        return NotFoundWithinBounds(lag_max, entry_max, 0, "no nonzero intertwiner")

    tested = 0
    candidates: List[Tuple[np.ndarray, List[int]]] = []
    for coeffs in lattice_points(len(forward), entry_max):
        tested += 1
        if tested > candidate_limit:
            return NotFoundWithinBounds(lag_max, entry_max, tested, "candidate limit reached")
        m = _combine_basis(forward, coeffs)
        if any(abs(x) > entry_max for x in m.flat):
            continue
        lags = _pointed_lags(mod_f, m, lag_max)
        if not lags:
            continue
        if all(mod_f.is_positive(col) in (Positivity.POSITIVE, Positivity.ZERO) for col in _columns(mod_f, m, 0)):
            candidates.append((m, lags))
    logger.debug("%d pointed positive forward candidates", len(candidates))

    for total in range(lag_max + 1):
        if progress_callback:
            progress_callback(total + 1, lag_max + 1, f"lag {total}")
        target_e = matrix_power(mod_e.at, total)
        target_f = matrix_power(mod_f.at, total)
        for forward_lag in range(total + 1):
            for m, lags in candidates:
                if forward_lag not in lags:
                    continue
                tested += 1
                if tested > candidate_limit:
                    return NotFoundWithinBounds(lag_max, entry_max, tested, "candidate limit reached")
                m_prime = _solve_inverse(m, backward, target_e, target_f, entry_max)
                if m_prime is None:
                    continue
                cert = IsoCertificate(m, m_prime, total - forward_lag, forward_lag)
                if verify_iso_certificate(e, f, cert, stage_cap).ok:
                    logger.info("pointed isomorphism %s -> %s found at lag %d (forward %d)",
                                e.name, f.name, total, forward_lag)
                    return cert
    logger.info("no pointed isomorphism %s -> %s within lag %d, entries %d", e.name, f.name, lag_max, entry_max)
    return NotFoundWithinBounds(lag_max, entry_max, tested)
