"""
Coefficient Rings
Exact coefficient domains: the rationals, prime fields and a polynomial layer K[t]
"""
from typing import Any, Optional

from sympy import GF, QQ, isprime

from config.settings import POLYNOMIAL_VARIABLE
from models.errors import InvalidField, RingMismatch


class CoefficientRing:
    """A field K (QQ or GF(p)), optionally extended to K[t] with t central of degree 0"""

    def __init__(self, characteristic: int = 0, polynomial: bool = False):
        if characteristic and not isprime(characteristic):
            raise InvalidField(f"{characteristic} is not prime")
        self.characteristic = characteristic
        self.polynomial = polynomial
        self.field = GF(characteristic) if characteristic else QQ
        if polynomial:
            self.domain = self.field.poly_ring(POLYNOMIAL_VARIABLE)
            self._gen = self.domain.gens[0]
        else:
            self.domain = self.field
            self._gen = None

    @classmethod
    def from_selector(cls, selector: str) -> 'CoefficientRing':
        """Parse 'q' or 'fp:<p>'"""
        text = selector.strip().lower()
        if text in ("q", "qq"):
            return cls()
        if text.startswith("fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise InvalidField(f"bad prime in field selector '{selector}'")
            if p < 2:
                raise InvalidField(f"{p} is not prime")
            return cls(p)
        raise InvalidField(f"unknown field selector '{selector}' (use q or fp:<p>)")

    def __eq__(self, other) -> bool:
        return (isinstance(other, CoefficientRing)
                and self.characteristic == other.characteristic
                and self.polynomial == other.polynomial)

    def __hash__(self):
        return hash((self.characteristic, self.polynomial))

    def __repr__(self) -> str:
        return f"CoefficientRing({self.label})"

    @property
    def label(self) -> str:
        base = f"F{self.characteristic}" if self.characteristic else "Q"
        return f"{base}[{POLYNOMIAL_VARIABLE}]" if self.polynomial else base

    @property
    def base(self) -> 'CoefficientRing':
        return CoefficientRing(self.characteristic) if self.polynomial else self

    def with_polynomials(self) -> 'CoefficientRing':
        return CoefficientRing(self.characteristic, polynomial=True)

    def require_same(self, other: 'CoefficientRing') -> None:
        if self != other:
            raise RingMismatch(f"coefficient rings differ: {self.label} vs {other.label}")

    # Element construction

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def from_int(self, k: int):
        return self.embed(self.field.convert(k))

    def from_fraction(self, numerator: int, denominator: int = 1):
        if denominator == 0:
            raise ZeroDivisionError("zero denominator in coefficient")
        value = self.field.quo(self.field.convert(numerator), self.field.convert(denominator))
        return self.embed(value)

    def embed(self, c):
        """Field element into this ring's domain"""
        if self.polynomial:
            return self.domain.ring.ground_new(c)
        return c

    def coerce(self, c, source: 'CoefficientRing'):
        """Coefficient from source ring into this one (same field, or field into K[t])"""
        if source == self:
            return c
        if source == self.base and self.polynomial:
            return self.embed(c)
        raise RingMismatch(f"cannot coerce {source.label} coefficients into {self.label}")

    @property
    def indeterminate(self):
        if not self.polynomial:
            raise RingMismatch(f"{self.label} has no indeterminate")
        return self._gen

    def is_zero(self, c) -> bool:
        return not c

    def evaluate(self, c, value: Any):
        """Substitute t = value; returns a field element"""
        if not self.polynomial:
            return c
        return c.evaluate(self._gen, self.field.convert(value))

    def inverse(self, c):
        if self.polynomial:
            raise RingMismatch("polynomial coefficients are not invertible in general")
        return self.field.quo(self.field.one, c)

    # Formatting

    def format_scalar(self, c) -> str:
        value = self.field.to_sympy(c)
        if self.characteristic:
            return str(int(value) % self.characteristic)
        return str(value)

    def is_negative(self, c) -> bool:
        if self.characteristic or self.polynomial:
            return False
        return self.field.to_sympy(c) < 0

    def format(self, c) -> str:
        if not self.polynomial:
            return self.format_scalar(c)
        text = ""
        for (power,), coeff in sorted(c.terms(), key=lambda term: term[0]):
            negative = not self.characteristic and self.field.to_sympy(coeff) < 0
            scalar = self.format_scalar(-coeff if negative else coeff)
            if power:
                var = POLYNOMIAL_VARIABLE if power == 1 else f"{POLYNOMIAL_VARIABLE}^{power}"
                scalar = var if scalar == "1" else f"{scalar} {var}"
            if not text:
                text = f"-{scalar}" if negative else scalar
            else:
                text += f" - {scalar}" if negative else f" + {scalar}"
        return text or "0"


def field_of(selector: Optional[str]) -> CoefficientRing:
    return CoefficientRing.from_selector(selector or "q")
