"""
Tensor Products
Elements of L(F) (x) L(E_t) as combinations of monomial pairs, with the tensor grading
"""
from typing import Dict, Iterable, Optional, Tuple

from models.algebra import AlgebraElement, LeavittPathAlgebra, Monomial, monomial_product
from models.errors import GraphMismatch

Pair = Tuple[Monomial, Monomial]


class TensorAlgebra:
    def __init__(self, left: LeavittPathAlgebra, right: LeavittPathAlgebra):
        left.ring.require_same(right.ring)
        self.left = left
        self.right = right
        self.ring = left.ring
        self._cache: Dict[Tuple[Monomial, Monomial, str], AlgebraElement] = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorAlgebra) and self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self) -> str:
        return f"{self.left!r} (x) {self.right!r}"

    def zero(self) -> 'TensorElement':
        return TensorElement(self, {})

    def one(self) -> 'TensorElement':
        return self.pure(self.left.one(), self.right.one())

    def pure(self, x: AlgebraElement, y: AlgebraElement) -> 'TensorElement':
        """x (x) y"""
        if x.algebra != self.left or y.algebra != self.right:
            raise GraphMismatch(f"factors do not belong to {self!r}")
        ring = self.ring
        terms: Dict[Pair, object] = {}
        for m1, c1 in x.normalize().terms.items():
            for m2, c2 in y.normalize().terms.items():
                c = c1 * c2
                if not ring.is_zero(c):
                    terms[(m1, m2)] = c
        return TensorElement(self, terms)

    def embed(self, x: AlgebraElement, side: str = "left") -> 'TensorElement':
        """x (x) 1 for side='left', 1 (x) x for side='right'"""
        if side == "left":
            return self.pure(x, self.right.one())
        return self.pure(self.left.one(), x)

    def from_pairs(self, pairs: Iterable[Tuple[AlgebraElement, AlgebraElement]]) -> 'TensorElement':
        total = self.zero()
        for x, y in pairs:
            total = total + self.pure(x, y)
        return total

    def factor_product(self, algebra: LeavittPathAlgebra, m1: Monomial, m2: Monomial, side: str) -> AlgebraElement:
        key = (m1, m2, side)
        if key not in self._cache:
            m = monomial_product(m1, m2)
            self._cache[key] = algebra.zero() if m is None else algebra.monomial(m)
        return self._cache[key]


class TensorElement:
    __slots__ = ('parent', 'terms')

    def __init__(self, parent: TensorAlgebra, terms: Dict[Pair, object]):
        self.parent = parent
        self.terms = terms

    def _check(self, other: 'TensorElement') -> None:
        if not isinstance(other, TensorElement) or other.parent != self.parent:
            raise GraphMismatch("tensor elements live in different tensor products")

    def __add__(self, other: 'TensorElement') -> 'TensorElement':
        self._check(other)
        ring = self.parent.ring
        terms = dict(self.terms)
        for pair, c in other.terms.items():
            total = terms.get(pair, ring.zero) + c
            if ring.is_zero(total):
                terms.pop(pair, None)
            else:
                terms[pair] = total
        return TensorElement(self.parent, terms)

    def __neg__(self) -> 'TensorElement':
        return TensorElement(self.parent, {pair: -c for pair, c in self.terms.items()})

    def __sub__(self, other: 'TensorElement') -> 'TensorElement':
        return self + (-other)

    def __mul__(self, other: 'TensorElement') -> 'TensorElement':
        self._check(other)
        parent = self.parent
        ring = parent.ring
        terms: Dict[Pair, object] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                left = parent.factor_product(parent.left, a1, a2, "left")
                if not left.terms:
                    continue
                right = parent.factor_product(parent.right, b1, b2, "right")
                for ml, cl in left.terms.items():
                    for mr, cr in right.terms.items():
                        pair = (ml, mr)
                        terms[pair] = terms.get(pair, ring.zero) + c1 * c2 * cl * cr
        return TensorElement(parent, {p: c for p, c in terms.items() if not ring.is_zero(c)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.parent == other.parent and self.terms == other.terms

    __hash__ = None

    def star(self) -> 'TensorElement':
        parent = self.parent
        total = parent.zero()
        for (a, b), c in self.terms.items():
            left = parent.left.monomial(a.star(), c)
            right = parent.right.monomial(b.star())
            total = total + parent.pure(left, right)
        return total

    def degrees(self):
        parent = self.parent
        return sorted({parent.left.monomial_degree(a) + parent.right.monomial_degree(b) for a, b in self.terms})

    def degree(self) -> Optional[int]:
        found = self.degrees()
        return found[0] if len(found) == 1 else None

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        from utils.data_helpers import DataFormatter
        return DataFormatter.format_tensor(self)

    __repr__ = __str__


# Functional aliases

def t_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    return x * y


def t_add(x: TensorElement, y: TensorElement) -> TensorElement:
    return x + y


def t_star(x: TensorElement) -> TensorElement:
    return x.star()


def t_degree(x: TensorElement) -> Optional[int]:
    return x.degree()
