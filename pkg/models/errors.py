"""
Error Hierarchy
Every library failure carries a stable one-line code used by the CLI
"""
from typing import Optional


class LPAError(Exception):
    """Base class for all library errors"""

    code = "E-LPA"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message


# Graphs

class GraphValidationError(LPAError):
    code = "E-GRAPH-INVALID"


class NonRegularGraph(LPAError):
    code = "E-NON-REGULAR"


class NotEssential(LPAError):
    code = "E-NOT-ESSENTIAL"


class NotPrimitive(LPAError):
    code = "E-NOT-PRIMITIVE"


class NotAnEliminableSource(LPAError):
    code = "E-NOT-ELIMINABLE"


class LastVertex(LPAError):
    code = "E-LAST-VERTEX"


class SinkVertex(LPAError):
    code = "E-SINK-VERTEX"


class NoIncomingEdge(LPAError):
    code = "E-NO-INCOMING-EDGE"

    def __init__(self, vertex: str):
        super().__init__(f"vertex '{vertex}' is not the range of any edge")
        self.vertex = vertex


# Algebra

class GraphMismatch(LPAError):
    code = "E-GRAPH-MISMATCH"


class RingMismatch(LPAError):
    code = "E-RING-MISMATCH"


class InvalidField(LPAError):
    code = "E-INVALID-FIELD"


class InvalidSpecialEdge(LPAError):
    code = "E-INVALID-SPECIAL-EDGE"


class ExpressionSyntaxError(LPAError):
    code = "E-SYNTAX"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownGenerator(LPAError):
    code = "E-UNKNOWN-GENERATOR"

    def __init__(self, name: str, position: Optional[int] = None):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"unknown generator '{name}'{where}")
        self.name = name
        self.position = position


class DimensionMismatch(LPAError):
    code = "E-DIMENSION-MISMATCH"


class NormalizationFuelExhausted(LPAError):
    code = "E-INTERNAL-FUEL"


# Degree-zero part

class NotDegreeZero(LPAError):
    code = "E-NOT-DEGREE-ZERO"


class PaddingNeedsRegular(LPAError):
    code = "E-PADDING-NEEDS-REGULAR"


class StageTooSmall(LPAError):
    code = "E-STAGE-TOO-SMALL"


class NotIdempotent(LPAError):
    code = "E-NOT-IDEMPOTENT"


class NotAUnit(LPAError):
    code = "E-NOT-A-UNIT"


class UnsupportedCoefficientField(LPAError):
    code = "E-UNSUPPORTED-FIELD"


# Bowen-Franks modules

class StageCapExceeded(LPAError):
    code = "E-STAGE-CAP"

    def __init__(self, cap: int):
        super().__init__(f"stabilization not reached within stage cap {cap}")
        self.cap = cap


class InvalidBounds(LPAError):
    code = "E-INVALID-BOUNDS"


# Homomorphisms

class UnverifiedHom(LPAError):
    code = "E-UNVERIFIED-HOM"


class NotStarCompatible(LPAError):
    code = "E-NOT-STAR-COMPATIBLE"


class CornerConditionFailed(LPAError):
    code = "E-CORNER-CONDITION"

    def __init__(self, generator: str, detail: str):
        super().__init__(f"corner condition failed at '{generator}': {detail}")
        self.generator = generator


# Files

class FileFormatError(LPAError):
    code = "E-FILE-FORMAT"

    def __init__(self, message: str, line: Optional[int] = None, source: str = "<input>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line
        self.source = source
