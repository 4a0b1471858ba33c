"""Exception types shared across the package."""


class HistosplineError(Exception):
    """Base class for all errors raised by this package."""


class NonIncreasingKnotsError(HistosplineError, ValueError):
    """Knot sequence is not strictly increasing."""


class TooFewKnotsError(HistosplineError, ValueError):
    """Fewer knots than the construction can work with."""


class NeedsMoreCellsError(HistosplineError):
    """An operation needs more cells than the histogram provides."""


class NotDominantError(HistosplineError):
    """Tridiagonal system violates the expected diagonal dominance."""


class ZeroPivotError(HistosplineError):
    """Elimination hit a (numerically) zero pivot."""


class SingularSystemError(HistosplineError):
    """Dense solve found the matrix singular."""


class OutOfDomainError(HistosplineError, ValueError):
    """Evaluation point lies outside the spline's interval."""


class BadCellIndexError(HistosplineError, IndexError):
    """Cell index outside 0..k-1."""


class UnknownFixtureError(HistosplineError, KeyError):
    """No built-in dataset under that name."""
