"""Exception types shared across the package."""


class PowerFracError(Exception):
    """Base class for all powerfrac errors."""


class DomainError(PowerFracError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConvergenceError(PowerFracError, RuntimeError):
    """A series failed to meet its truncation criterion within the term cap."""

    def __init__(self, message, *, terms=None, ratio=None):
        super().__init__(message)
        self.terms = terms
        self.ratio = ratio


class ResolutionError(PowerFracError, RuntimeError):
    """Inter-level interpolation error exceeds the requested tolerance."""


class DerivativeUnavailableError(PowerFracError, LookupError):
    """Closed-form derivative values requested for an unregistered function."""
