"""Exception types shared across the package."""


class SingularParameterError(ValueError):
    """Raised when a formula is undefined at the requested group parameters.

    Typical cases are ``rho == 0`` (closed forms divide by ``sinh(rho)``) or
    ``sigma == 0`` (the two seed elements stop being independent).
    """


class ConvergenceError(ArithmeticError):
    """Raised when a truncated series or truncated operator fails its tail check."""


class TruncationError(ConvergenceError):
    """Raised when the truncated Fock space is too small for the requested entries."""


class ConditioningWarning(RuntimeWarning):
    """Emitted when a recurrence step divides by a nearly singular block."""
