"""Exception types raised across the package."""


class InvalidParameterError(ValueError):
    """A physical parameter or configuration value is outside its domain."""


class ReducibleGeneratorError(RuntimeError):
    """The master-equation generator has no unique stationary state."""


class InvariantViolation(AssertionError):
    """A conservation law or thermodynamic bound failed at an evaluated point."""
