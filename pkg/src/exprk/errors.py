"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Matrix/vector shapes are inconsistent with the operation."""


class ParameterError(ValueError):
    """A scalar parameter is outside its admissible range."""


class ContractError(ValueError):
    """An input violates a structural precondition (e.g. symmetry)."""


class DomainError(ValueError):
    """The requested function is undefined for this input (e.g. fractional
    power of a matrix with nonpositive eigenvalues)."""


class InstabilityError(RuntimeError):
    """A time-stepping run produced non-finite values."""

    def __init__(self, step_index, message=None):
        self.step_index = step_index
        super().__init__(message or f"non-finite state at step {step_index}")


class InsufficientDataError(ValueError):
    """Not enough unflagged data points for an order fit."""
