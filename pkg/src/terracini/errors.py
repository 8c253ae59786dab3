"""Exception hierarchy shared by every module."""


class TerraciniError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(TerraciniError, ValueError):
    """Malformed or inconsistent input (mixed fields, duplicate points, ...)."""


class UnsupportedCharacteristicError(TerraciniError):
    """The working characteristic breaks an assumption of the computation."""


class ReductionError(TerraciniError, ArithmeticError):
    """A rational value cannot be reduced modulo the requested prime."""


class RefusalError(TerraciniError):
    """A well-formed request that the construction refuses to carry out.

    ``detail`` carries a report explaining the refusal (for instance the
    threshold report of an infeasible parameter choice).
    """

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class PointCollisionError(TerraciniError):
    """A forced point coincides with an already chosen one; resample."""


class RetryBudgetExhausted(TerraciniError):
    """Sampling kept producing degenerate configurations."""
