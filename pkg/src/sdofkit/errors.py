"""Exception types shared across the package."""


class SdofError(Exception):
    """Base class for all package-specific errors."""


class DegenerateInput(SdofError):
    """Matrix pair is rank deficient in a way that breaks the full-rank
    dimension bookkeeping of the GSVD."""


class NotAligned(SdofError):
    """Precoder pair does not satisfy the eavesdropper-span containment
    required for canonicalization."""


class OutOfRange(SdofError):
    """Requested point lies outside the valid parameter range."""


class TargetInfeasible(SdofError):
    """Requested S.D.o.F. pair lies outside the achievable region."""


class ConstructionDeficit(SdofError):
    """Assembled precoding matrices failed a numerical rank check,
    signalling a degenerate channel draw."""


class NumericalBreakdown(SdofError):
    """A log-det argument was not positive definite within tolerance."""


class DegenerateDraw(SdofError):
    """Channel sampling failed full-rank checks repeatedly."""


class SchemaViolation(SdofError):
    """A JSON document does not conform to its shipped schema."""
