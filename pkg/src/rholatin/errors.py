"""Exception hierarchy.

Infeasibility is not an error: solvers return an :class:`~rholatin.certificates.Infeasible`
value instead of raising.
"""


class RhoLatinError(Exception):
    """Base class for every error raised by the package."""


class ValidationError(RhoLatinError, ValueError):
    """Input does not describe a valid profile, rectangle or square."""


class SumMismatch(ValidationError):
    pass


class RangeViolation(ValidationError):
    pass


class RowRepeat(ValidationError):
    pass


class ColRepeat(ValidationError):
    pass


class BudgetExceeded(ValidationError):
    pass


class BadSymbol(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class IndexOutOfRange(RhoLatinError, IndexError):
    pass


class PreconditionViolation(RhoLatinError, ValueError):
    pass


class InvalidParams(RhoLatinError, ValueError):
    pass


class TooLarge(RhoLatinError):
    """An exhaustive evaluator refused an input above its enumeration guard."""


class SplitInfeasible(RhoLatinError):
    """A detachment extraction step failed. Signals an internal bug."""


class PostconditionFailure(RhoLatinError, AssertionError):
    """A constructed object violated a contract the construction guarantees."""
