"""Exception and warning types raised across the package."""


class RDMDError(Exception):
    """Base class for all package errors."""


class MalformedInputError(RDMDError, ValueError):
    """Input arrays have inconsistent shapes or invalid values."""


class InsufficientDataError(RDMDError, ValueError):
    """Too few samples, points or snapshots for the requested operation."""


class ParseError(RDMDError, ValueError):
    """A CSV or spec file could not be parsed.

    ``row`` and ``column`` are 1-based positions in the file when known.
    """

    def __init__(self, message, row=None, column=None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.row = row
        self.column = column


class DomainError(RDMDError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class RankDeficiencyError(RDMDError, ValueError):
    """A matrix that must be nonsingular is (numerically) singular."""


class TruncationError(RDMDError, ValueError):
    """Requested SVD rank exceeds the numerical rank of the data."""


class RobustnessConditionError(RDMDError, ValueError):
    """The reduction basis spans the whole space, so weighting cancels out."""


class DivergenceError(RDMDError, ArithmeticError):
    """Numerical integration produced non-finite values."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class DegenerateScaleWarning(RuntimeWarning):
    """A robust scale estimate collapsed to (numerically) zero."""


class DegenerateDataWarning(RuntimeWarning):
    """Every projection direction had zero spread."""


class RankWarning(RuntimeWarning):
    """A least-squares problem was rank deficient and solved by pseudo-inverse."""


class ConvergenceWarning(RuntimeWarning):
    """IRLS stopped at the iteration cap before meeting the tolerance."""
