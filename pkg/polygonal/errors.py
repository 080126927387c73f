"""
Exceptions raised by the polygonal package.
"""


class PolygonalError(Exception):
    "Base class for every error raised on purpose by this package."


class InvalidSizeError(PolygonalError, ValueError):
    "Polygon size out of range, e.g. $n < 3$."


class InvalidArgumentError(PolygonalError, ValueError):
    "Malformed or inconsistent argument."


class NotFoundError(PolygonalError, KeyError):
    "A diagonal or edge label that is not part of the triangulation."

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ResourceLimitError(PolygonalError, ValueError):
    "The requested computation exceeds a configured limit."


class EmptySpaceError(PolygonalError, ValueError):
    "Side lengths for which the polygon space is empty or degenerate."


class UnboundedError(PolygonalError, ValueError):
    "A polytope operation that needs a bounded polytope got an unbounded one."


class NotSubtractionFreeError(PolygonalError, ValueError):
    "Tropicalization of an expression with non-positive coefficients."


class InvariantViolation(PolygonalError, AssertionError):
    "A mathematical invariant that must always hold was broken."
