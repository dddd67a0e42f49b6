"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the command line
front end reports alongside the message.
"""

from __future__ import annotations


class CZLabError(ValueError):
    code = "error"


class DescriptorError(CZLabError):
    code = "descriptor"


class NonDegeneracyViolation(DescriptorError):
    """Some iterate within the horizon has the eigenvalue 1."""

    code = "non_degeneracy_violation"

    def __init__(self, message: str, k: int | None = None):
        super().__init__(message)
        self.k = k


class SignatureParityError(DescriptorError):
    code = "signature_parity"


class OddLoopError(DescriptorError):
    code = "odd_loop"


class HorizonExceeded(CZLabError):
    code = "horizon_exceeded"


class NoMatch(CZLabError):
    code = "no_match"


class Ambiguous(CZLabError):
    code = "ambiguous"

    def __init__(self, message: str, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class NotElliptic(CZLabError):
    code = "not_elliptic"


class EndpointOnCycle(CZLabError):
    code = "endpoint_on_cycle"


class DegenerateSegment(CZLabError):
    code = "degenerate_segment"


class HypothesisNotMet(CZLabError):
    code = "hypothesis_not_met"


class DegenerateRotation(CZLabError):
    code = "degenerate_rotation"


class RecappingFailed(CZLabError):
    code = "recapping_failed"


class DuplicateAction(CZLabError):
    code = "duplicate_action"


class WindowOnSpectrum(CZLabError):
    code = "window_on_spectrum"


class InvalidTable(CZLabError):
    code = "invalid_table"


class NotBalanced(CZLabError):
    code = "not_balanced"


class WrongDimension(CZLabError):
    code = "wrong_dimension"


class FamilyExhausted(CZLabError):
    code = "family_exhausted"


class ParseError(CZLabError):
    code = "parse_error"


class SchemaError(CZLabError):
    code = "schema_error"
