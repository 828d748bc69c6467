"""Shared exception types."""


class ConfigurationError(ValueError):
    """Malformed spec, config file, or experiment definition."""


class ShapeError(ValueError):
    """Tensor or parameter shapes do not compose."""


class UsageError(RuntimeError):
    """An API was driven out of order (e.g. backward on a stale tape)."""


class NumericError(ArithmeticError):
    """Non-finite values where finite ones are required; the run should abort."""


class ChecksumError(IOError):
    """A checkpoint or dump file failed integrity or compatibility checks."""


class InsufficientDataError(RuntimeError):
    """Not enough stored experience to draw a minibatch."""
