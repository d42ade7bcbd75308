"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class BandBrickError(Exception):
    """Base class for all errors raised by :mod:`bandbrick`."""


class ParseError(BandBrickError):
    """Malformed input document."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message}")


class InvalidInput(BandBrickError):
    """Well-formed input that violates a precondition."""


class DuplicateId(InvalidInput):
    pass


class DanglingEndpoint(InvalidInput):
    pass


class RelationTooShort(InvalidInput):
    pass


class ForeignArrow(InvalidInput):
    pass


class EndpointMismatch(InvalidInput):
    pass


class UnreducedJunction(InvalidInput):
    pass


class NotClosed(InvalidInput):
    pass


class NotCyclicallyReduced(InvalidInput):
    pass


class NotAString(InvalidInput):
    pass


class NotABand(InvalidInput):
    pass


class NotABrickBand(InvalidInput):
    pass


class NotSpecialBiserial(InvalidInput):
    pass


class NotAdmissible(InvalidInput):
    pass


class ZeroLambda(InvalidInput):
    pass


class DuplicateLambda(InvalidInput):
    pass


class ShapeMismatch(InvalidInput):
    pass


class BadWitness(InvalidInput):
    pass


class EdgeDegreeNotTwo(InvalidInput):
    pass


class Disconnected(InvalidInput):
    pass


class ZeroMultiplicity(InvalidInput):
    pass


class CheckFailed(BandBrickError, AssertionError):
    """An internal consistency check failed (a bug, never a user error).

    Raised when a theorem-backed post-condition does not hold or when the
    combinatorial and linear-algebra computations disagree.
    """
