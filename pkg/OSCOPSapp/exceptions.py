class OscOpsError(Exception):
    """Base class for every error raised by the oscillatory-operations library."""


class ArgumentError(OscOpsError, ValueError):
    """An argument is outside the domain an operation accepts."""


class RangeError(OscOpsError, OverflowError):
    """A result would not be representable in double precision."""


class ConvergenceError(OscOpsError, RuntimeError):
    """An iterative reference computation did not reach its tolerance."""
