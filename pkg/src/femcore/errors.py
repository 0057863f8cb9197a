"""Exception types shared across the package."""


class BoundsError(IndexError):
    """An index is outside its valid range."""


class ShapeMismatchError(ValueError):
    """Operands have non-conforming shapes."""


class SingularityError(ArithmeticError):
    """A matrix that must be invertible is numerically singular."""


class ConvergenceError(RuntimeError):
    """An iteration stopped without meeting its residual criterion."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class CapabilityError(ValueError):
    """The request exceeds what this build supports."""


class ContractError(ValueError):
    """A documented precondition was violated (debug-mode check)."""


class MatrixMarketError(ValueError):
    """Malformed MatrixMarket input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
