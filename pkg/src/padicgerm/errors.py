"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class FitError(ArithmeticError):
    """A germ fit failed verification on held-out points."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class DegenerateInputError(ValueError):
    """A determinant that must be nonzero vanished."""


class ConfigError(ValueError):
    """Invalid verification or CLI configuration."""
