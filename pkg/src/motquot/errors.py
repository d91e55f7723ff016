"""Exception types shared across the package."""

from __future__ import annotations


class MotQuotError(Exception):
    """Base class for every package-specific error."""


class MixedBaseField(MotQuotError):
    """Two operands live over different base fields."""


class OrderBoundExceeded(MotQuotError):
    """No multiplicative order was found within the configured bound."""


class UnsupportedDegree(MotQuotError):
    """A factor of degree > 2 over the base field would be required."""


class NotFiniteOrder(MotQuotError):
    """The matrix has no finite multiplicative order within the bound."""


class RootsOfUnityMissing(MotQuotError):
    """The base field lacks the required roots of unity."""


class NonCyclicImage(MotQuotError):
    """The monodromy image of the action is not cyclic."""


class NotPrimePower(MotQuotError):
    """The (image) group order is not a prime power."""


class NoFaithfulFactor(MotQuotError):
    """No irreducible factor carries a faithful action (contract violation)."""


class SemilinearityViolated(MotQuotError):
    """A generator does not intertwine the Galois twist as declared."""


class EigenvectorNotFound(MotQuotError):
    """No common eigenvector exists in the candidate subspace."""


class CertificationFailed(MotQuotError):
    """An internal certificate (degree count, split form) did not check out."""


class NotInvolutive(MotQuotError):
    """M * conj(M) is not a nonzero rational scalar matrix."""


class NotPulledBack(MotQuotError):
    """restrict_scalars needs an expression produced by extend_scalars."""


class BadReduction(MotQuotError):
    """Reduction or specialization at p is not defined for this input."""


class TooLarge(MotQuotError):
    """The requested enumeration exceeds the configured budget."""


class SearchExhausted(MotQuotError):
    """A bounded search finished without locating the promised witness."""


class UnsupportedAction(MotQuotError):
    """The action is outside the scope this operation supports."""


class Inconclusive(MotQuotError):
    """Neither a point, nor definiteness, nor a local obstruction was found."""


class ParseError(MotQuotError):
    """Malformed input text; carries 1-based line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", col {column}"
            loc = f" ({loc})"
        super().__init__(message + loc)


class ValidationError(MotQuotError):
    """One or more structural invariants of the input are violated."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
