"""
Data Helper Functions
Formatting of coefficients, elements and integer matrices, and identifier validation
"""
import re
from typing import Any, List, Sequence

from models.algebra import Monomial

IDENTIFIER_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
RESERVED_NAMES = {"t", "auto", "graph", "vertices", "edge", "weight"}


class DataFormatter:
    """Text rendering in the same grammar the expression parser reads"""

    @staticmethod
    def format_monomial(m: Monomial) -> str:
        """alpha edges in order, then beta edges reversed and starred"""
        if m.is_vertex:
            return m.vertex
        parts = list(m.alpha.edges) + [e + "*" for e in reversed(m.beta.edges)]
        return " ".join(parts)

    @staticmethod
    def _signed_terms(items: Sequence, ring, render_basis) -> str:
        text = ""
        for basis, c in items:
            negative = ring.is_negative(c)
            coeff = ring.format(-c if negative else c)
            if ring.polynomial:
                negative = coeff.startswith("-") and " " not in coeff
                if negative:
                    coeff = coeff[1:]
                elif " " in coeff:
                    coeff = f"({coeff})"
            body = render_basis(basis)
            term = body if coeff == "1" else f"{coeff} {body}"
            if not text:
                text = f"-{term}" if negative else term
            else:
                text += f" - {term}" if negative else f" + {term}"
        return text or "0"

    @staticmethod
    def format_element(x: Any) -> str:
        """E.g. 'v - e e* + 1/2 e f*'"""
        return DataFormatter._signed_terms(x.monomials(), x.ring, DataFormatter.format_monomial)

    @staticmethod
    def format_tensor(x: Any) -> str:
        left, right = x.parent.left, x.parent.right
        items = sorted(x.terms.items(),
                       key=lambda item: (left.monomial_sort_key(item[0][0]), right.monomial_sort_key(item[0][1])))

        def pair(monomials):
            m1, m2 = monomials
            return f"{DataFormatter.format_monomial(m1)} ⊗ {DataFormatter.format_monomial(m2)}"

        return DataFormatter._signed_terms(items, x.parent.ring, pair)

    @staticmethod
    def format_int_matrix(m: Any) -> str:
        """Rows of an integer matrix as '[[1, 0], [0, 1]]'"""
        rows = [[int(x) for x in row] for row in m.tolist()]
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in rows) + "]"

    @staticmethod
    def format_matrix_rows(m: Any) -> List[str]:
        """One space-separated line per row, the certificate file layout"""
        return [" ".join(str(int(x)) for x in row) for row in m.tolist()]

    @staticmethod
    def format_dim_element(x: Any) -> str:
        return x.describe()


class NameValidator:
    """Identifier validation for graph, vertex and edge names"""

    @staticmethod
    def is_identifier(text: str) -> bool:
        return bool(text) and IDENTIFIER_PATTERN.fullmatch(text) is not None

    @staticmethod
    def is_reserved(text: str) -> bool:
        return text in RESERVED_NAMES

    @staticmethod
    def is_valid_name(text: str) -> bool:
        """An identifier that is not a reserved keyword"""
        return NameValidator.is_identifier(text) and not NameValidator.is_reserved(text)

    @staticmethod
    def extract_names(text: str) -> List[str]:
        """Distinct identifiers in order of first appearance"""
        seen: List[str] = []
        for match in IDENTIFIER_PATTERN.findall(str(text or "")):
            if match not in seen:
                seen.append(match)
        return seen
