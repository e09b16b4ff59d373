"""Exceptions raised by the arithmetic and lattice layers.

All of them derive from built-in exception types so callers may catch them
broadly (``ZeroDivisionError``, ``ArithmeticError``...).
"""

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECISION_EXHAUSTED = 3


class InverseOfZeroError(ZeroDivisionError):
    """Inverse of an exact zero, or of a non-unit symbolic coefficient."""


class PrecisionLossError(ArithmeticError):
    """A quantity vanished at its tracked precision where a nonzero value was required."""


class InconsistencyError(RuntimeError):
    """An internal identity failed to hold at working precision."""


class DegenerateActionError(ValueError):
    """gamma * omega has a vanishing last entry."""
