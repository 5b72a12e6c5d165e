"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Inputs violate a documented precondition."""


class TooLargeError(RuntimeError):
    """An exhaustive computation would exceed its configured size cap."""


class DivergenceError(RuntimeError):
    """An iterative solver left its stability region."""
