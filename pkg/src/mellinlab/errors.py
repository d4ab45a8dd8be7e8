"""Exception types shared across the package."""


class MellinLabError(Exception):
    """Base class for package-specific failures."""


class ToleranceNotReached(MellinLabError):
    """Quadrature refinement hit max depth without meeting tolerance.

    Carries the best estimate so callers can inspect it; it must never be
    consumed silently as a converged value.
    """

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


class CertificateGap(MellinLabError):
    """Insufficient decay certificate for a requested exponent pair."""


class TailMassExceeded(MellinLabError):
    """Log-grid window too small: truncated tail mass exceeds the budget."""


class CapabilityError(MellinLabError):
    """Derivative order above the configured maximum."""


class DegenerateBaseFunction(MellinLabError):
    """Base functional value is zero; exponent recovery is undefined."""
