"""Exception types raised by kdist."""


class KdistError(Exception):
    """Base class for all domain errors."""


class ParseError(KdistError, ValueError):
    """Malformed shape file. ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionMismatchError(KdistError, ValueError):
    pass


class NotPositiveDefiniteError(KdistError):
    """A positive semidefinite kernel/Gram was required but the input is indefinite."""


class IndistinguishableError(KdistError):
    """Two measures have (numerically) zero kernel distance."""
