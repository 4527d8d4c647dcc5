"""Exception types shared across the package."""


class HgfamError(Exception):
    """Base class for all package errors."""


class RankError(HgfamError, ValueError):
    """Raised when a configuration matrix is not of full row rank."""

    def __init__(self, message="not full rank"):
        super().__init__(message)


class DimensionError(HgfamError, ValueError):
    """Raised on mismatched vector or matrix dimensions."""


class GradingError(HgfamError, ValueError):
    """Raised when no positive grading exists for a set of columns."""

    def __init__(self, message="semigroup not pointed by positive grading"):
        super().__init__(message)


class ResourceLimitError(HgfamError, RuntimeError):
    """A computation exceeded its configured budget.

    This is distinct from a mathematical failure: the answer is unknown,
    not negative.
    """


class InternalError(HgfamError, ArithmeticError):
    """An identity that holds in theory was violated; indicates a bug."""
