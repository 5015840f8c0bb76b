"""Exception hierarchy shared by all flatbundle modules."""

from __future__ import annotations


class FlatBundleError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(FlatBundleError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class InvalidLiftError(InvalidInputError):
    """Lift data violates monotonicity/equivariance invariants."""


class InvalidMatrixError(InvalidInputError):
    """Matrix handed to boundary_action is not in SL(2, R)."""


class InvalidGenusError(InvalidInputError):
    """Genus outside the operation's domain (e.g. fuchsian needs g >= 2)."""


class AmbiguousArcError(InvalidInputError):
    """Two consecutive circle points are exactly antipodal; the shortest
    arc between them is undefined."""


class SamplingGapError(InvalidInputError):
    """A loop sample step reaches a half turn, so winding is ambiguous."""


class ComplexityBudgetError(FlatBundleError):
    """A composition exceeded its breakpoint or chain-part budget."""


class RotationBudgetError(FlatBundleError):
    """Iteration budget exhausted before the rotation enclosure reached the
    requested tolerance.  Carries the best enclosure obtained so far."""

    def __init__(self, message: str, best):
        super().__init__(message)
        self.best = best


class WordParseError(InvalidInputError):
    """Unparseable word text; carries the offending token position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (token {position})")
        self.position = position


class WordTooLongError(InvalidInputError):
    """Word length exceeded the hard cap."""


class DegenerateVertexError(InvalidInputError):
    """Singular vertex with n + k = 0 (weight denominator vanishes)."""


class NotARepresentationError(FlatBundleError):
    """The relator does not evaluate to an integer translation within
    tolerance; the generator tuple is not a representation (exit code 1)."""

    def __init__(self, message: str, deviation: float):
        super().__init__(message)
        self.deviation = deviation


class AmbiguousIntegerError(FlatBundleError):
    """Relator translation amount is not within 1/4 of an integer."""


class TheoremViolationError(FlatBundleError):
    """A mechanically checked theorem-level assertion failed.  This signals
    an implementation bug, never expected behaviour; carries a payload
    describing the counterexample."""

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


class AuditViolationError(TheoremViolationError):
    """A Milnor-Wood or doubling audit found a violating representation;
    payload holds the counterexample serialization."""


class VerificationError(FlatBundleError):
    """Internal consistency check failed (e.g. a cover word table that does
    not satisfy its own invariants)."""
