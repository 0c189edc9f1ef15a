"""Exception types shared across the toolkit."""


class InvalidParameter(ValueError):
    """A parameter is outside its admissible range."""


class NumericRange(ArithmeticError):
    """A numeric evaluation left its guaranteed-convergence region."""


class ConfigError(ValueError):
    """A scenario or schedule configuration is inconsistent."""
