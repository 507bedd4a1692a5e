"""Exception types shared across the package."""


class RandSubError(Exception):
    """Base class for all package errors."""


class InvalidSetError(RandSubError, ValueError):
    """A subtraction set (or a game built from sets) failed validation."""


class ResourceLimitError(RandSubError):
    """An exact computation exceeded its configured budget."""


class RootSolverError(RandSubError, ArithmeticError):
    """Simultaneous iteration failed to converge.

    ``residuals`` holds |p(z)| for the best iterate, one entry per root.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class IllConditionedError(RandSubError, ArithmeticError):
    """The Vandermonde system is too ill-conditioned for a double solve."""

    def __init__(self, message, condition):
        super().__init__(message)
        self.condition = condition


class IdentityCheckError(RandSubError, ArithmeticError):
    """An exact algebraic identity that must hold did not."""
