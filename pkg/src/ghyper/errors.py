"""Exception taxonomy.

DomainError and its subclasses signal unusable input (CLI exit status 2);
DecayError signals a failed runtime check on valid input (exit status 1).
"""


class GhyperError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GhyperError, ValueError):
    """Arguments outside the supported domain (bad n, d, order, file...)."""


class SizeLimitError(DomainError):
    """A requested monomial basis exceeds the configured size cap."""


class OddDegreeError(DomainError):
    """No real decay contour exists for odd degree: P(-x) = -P(x), so the
    exponent cannot have negative real part in both of the directions +-x."""


class UnsupportedOrderError(DomainError):
    """Finite differences are only provided for derivative order <= 4."""


class DecayError(GhyperError):
    """The decay predicate failed: exp(P) does not decrease along the real
    contour, so the integral must not be attempted at this coefficient set."""


class StencilError(DomainError):
    """A finite-difference stencil point left the evaluatable domain."""


class NormalizationError(GhyperError):
    """A discriminant could not be normalized (zero leading coefficient).

    Carries the raw Sylvester resultant in ``raw_resultant`` so callers can
    still inspect the unnormalized value.
    """

    def __init__(self, message, raw_resultant=None):
        super().__init__(message)
        self.raw_resultant = raw_resultant


class CoefficientFileError(DomainError):
    """A coefficient file failed to parse; the message names the bad key."""
