"""
Matrix Algebras
Small square matrices M_n(L(E)) with entries in a Leavitt path algebra
"""
from typing import Callable, List, Optional, Sequence

from models.algebra import AlgebraElement, LeavittPathAlgebra
from models.errors import DimensionMismatch


class MatrixAlgebra:
    def __init__(self, algebra: LeavittPathAlgebra, size: int = 2):
        if size < 1:
            raise DimensionMismatch("matrix size must be positive")
        self.algebra = algebra
        self.size = size

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixAlgebra) and self.size == other.size and self.algebra == other.algebra

    def __hash__(self):
        return hash((self.algebra, self.size))

    def __repr__(self) -> str:
        return f"M{self.size}({self.algebra!r})"

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def graph(self):
        return self.algebra.graph

    @property
    def base_algebra(self) -> 'MatrixAlgebra':
        return MatrixAlgebra(self.algebra.base_algebra, self.size)

    def from_rows(self, rows: Sequence[Sequence[AlgebraElement]]) -> 'ElementMatrix':
        n = self.size
        if len(rows) != n or any(len(row) != n for row in rows):
            raise DimensionMismatch(f"expected a {n}x{n} array")
        for row in rows:
            for x in row:
                self.algebra.require_compatible(x.algebra)
        return ElementMatrix(self, tuple(tuple(row) for row in rows))

    def zero(self) -> 'ElementMatrix':
        z = self.algebra.zero()
        return self.from_rows([[z] * self.size for _ in range(self.size)])

    def identity(self) -> 'ElementMatrix':
        return self.diagonal([self.algebra.one()] * self.size)

    one = identity

    def diagonal(self, entries: Sequence[AlgebraElement]) -> 'ElementMatrix':
        z = self.algebra.zero()
        return self.from_rows([[entries[i] if i == j else z for j in range(self.size)] for i in range(self.size)])

    def unit(self, i: int, j: int, x: Optional[AlgebraElement] = None) -> 'ElementMatrix':
        """x placed at (i, j); the matrix unit when x is omitted"""
        x = self.algebra.one() if x is None else x
        z = self.algebra.zero()
        return self.from_rows([[x if (r, c) == (i, j) else z for c in range(self.size)] for r in range(self.size)])

    def elementary(self, i: int, j: int, x: AlgebraElement) -> 'ElementMatrix':
        """Identity plus x at off-diagonal position (i, j)"""
        if i == j:
            raise DimensionMismatch("elementary matrices need an off-diagonal position")
        return self.identity() + self.unit(i, j, x)

    def corner(self, x: AlgebraElement, i: int = 0) -> 'ElementMatrix':
        """The corner inclusion x -> x e_ii"""
        return self.unit(i, i, x)


class ElementMatrix:
    __slots__ = ('parent', 'rows')

    def __init__(self, parent: MatrixAlgebra, rows):
        self.parent = parent
        self.rows = rows

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def _check(self, other: 'ElementMatrix') -> None:
        if not isinstance(other, ElementMatrix) or other.parent.size != self.parent.size:
            raise DimensionMismatch("matrix sizes differ")
        self.parent.algebra.require_compatible(other.parent.algebra)

    def map(self, fn: Callable[[AlgebraElement], AlgebraElement], parent: Optional[MatrixAlgebra] = None) -> 'ElementMatrix':
        return ElementMatrix(parent or self.parent, tuple(tuple(fn(x) for x in row) for row in self.rows))

    def __add__(self, other: 'ElementMatrix') -> 'ElementMatrix':
        self._check(other)
        n = self.parent.size
        return ElementMatrix(self.parent, tuple(tuple(self.rows[i][j] + other.rows[i][j] for j in range(n)) for i in range(n)))

    def __neg__(self) -> 'ElementMatrix':
        return self.map(lambda x: -x)

    def __sub__(self, other: 'ElementMatrix') -> 'ElementMatrix':
        return self + (-other)

    def scale(self, c) -> 'ElementMatrix':
        return self.map(lambda x: x.scale(c))

    def __mul__(self, other: 'ElementMatrix') -> 'ElementMatrix':
        self._check(other)
        n = self.parent.size
        zero = self.parent.algebra.zero()
        rows: List[List[AlgebraElement]] = []
        for i in range(n):
            row = []
            for j in range(n):
                total = zero
                for k in range(n):
                    total = total + self.rows[i][k] * other.rows[k][j]
                row.append(total)
            rows.append(row)
        return ElementMatrix(self.parent, tuple(tuple(row) for row in rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementMatrix):
            return NotImplemented
        return self.parent == other.parent and all(
            a == b for row_a, row_b in zip(self.rows, other.rows) for a, b in zip(row_a, row_b))

    __hash__ = None

    def normalize(self) -> 'ElementMatrix':
        return self.map(lambda x: x.normalize())

    def star(self) -> 'ElementMatrix':
        n = self.parent.size
        return ElementMatrix(self.parent, tuple(tuple(self.rows[j][i].star() for j in range(n)) for i in range(n)))

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def degrees(self) -> List[int]:
        return sorted({d for row in self.rows for x in row for d in x.degrees()})

    def degree(self) -> Optional[int]:
        found = self.degrees()
        return found[0] if len(found) == 1 else None

    def evaluate_at(self, value) -> 'ElementMatrix':
        return self.map(lambda x: x.evaluate_at(value), self.parent.base_algebra)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.rows) + "]"

    __repr__ = __str__


def mat_mul(a: ElementMatrix, b: ElementMatrix) -> ElementMatrix:
    return a * b


def mat_add(a: ElementMatrix, b: ElementMatrix) -> ElementMatrix:
    return a + b
