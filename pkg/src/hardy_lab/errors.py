"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid construction parameter or experiment configuration."""

    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field


class GridMismatchError(ValueError):
    """Two operands live on grids of different sizes."""


class DegreeBudgetError(ValueError):
    """A polynomial degree does not fit the working grid without aliasing."""
