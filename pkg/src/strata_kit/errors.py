"""Exception hierarchy shared across the package."""


class StrataKitError(Exception):
    """Base class for all domain errors raised by this package."""


class WeightMismatchError(StrataKitError):
    """Comparison of partitions with different weights."""


class BudgetExceededError(StrataKitError):
    """An enumeration exceeded its configured bound."""


class WraparoundError(StrataKitError):
    """An operation that needs an infinite twist line was given a finite-period one."""


class ShapeError(StrataKitError):
    """Input does not have the shape required by an operation's precondition."""
