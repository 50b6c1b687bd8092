"""
Exception hierarchy shared by the ladder packages.
Library code raises these; only the CLI turns them into exit codes.
"""


class LadderError(Exception):
    """Base class for every error raised by this package."""


class ModulusMismatchError(LadderError, ValueError):
    """Field elements from different prime fields were combined."""


class NotInvertibleError(LadderError, ZeroDivisionError):
    """Inversion of zero (or of a non-unit) was requested."""


class NonResidueError(LadderError, ValueError):
    """A square root was requested for a quadratic non-residue."""


class PointNotOnCurveError(LadderError, ValueError):
    """An operand does not satisfy y^2 = x^3 + 7."""


class CountingInfeasibleError(LadderError):
    """Point counting is not available at this bit-length (verify-only range)."""


class PointCountingError(LadderError):
    """The group order could not be pinned down within the retry budget."""


class CardFormatError(LadderError, ValueError):
    """A challenge card could not be parsed."""


class BudgetExceededError(LadderError):
    """A solver ran past its group-operation budget."""

    def __init__(self, message, ops=0):
        super().__init__(message)
        self.ops = ops


class DegenerateCollision(LadderError):
    """Two walks collided with equal b-coefficients; the walk must restart."""


class ShorRecoveryError(LadderError):
    """No sample yielded a verified secret; more samples are needed."""


class ParameterError(LadderError, ValueError):
    """Cost-model parameters are outside the model's validity range."""


class DatasetLookupError(LadderError, KeyError):
    """Unknown dataset table, row or column."""
