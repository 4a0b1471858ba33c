"""Shape-preserving C1 cubic splines from cell-average (histogram) data.

Fit a one-parameter family of C1 cubic curves whose integral over every
mesh cell matches the prescribed cell average exactly, certify
monotonicity/convexity with runnable sufficient conditions, and verify the
accuracy orders empirically.
"""

from .build import (FallbackReport, SplineC1, assemble_system, boundary_values,
                    fit, fit_fallback)
from .errors import (BadCellIndexError, HistosplineError, NeedsMoreCellsError,
                     NonIncreasingKnotsError, NotDominantError,
                     OutOfDomainError, SingularSystemError, TooFewKnotsError,
                     UnknownFixtureError, ZeroPivotError)
from .evaluate import (cell_integral, deriv1, deriv2, second_derivative_jumps,
                       value)
from .fixtures import FIXTURE_NAMES, Fixture, get_fixture
from .mesh import (DataShape, Histogram, Partition, average_slopes,
                   classify_data, make_histogram)
from .shape import (ConditionResult, FeasibleIntervals, ShapeReport, certify,
                    check_convexity_conditions, check_geometric_mesh,
                    check_monotonicity_conditions, convex_positions,
                    feasible_intervals, slope_sensitivity)
from .tridiag import TridiagonalSystem, solve
from .verify import (ConvergenceRecord, OrderEstimates, TestFunction,
                     convergence_study, dense_solve, estimate_orders,
                     mesh_family, simpson_cell_integral)

__version__ = "0.1.0"

__all__ = [
    "BadCellIndexError", "ConditionResult", "ConvergenceRecord", "DataShape",
    "FallbackReport", "FeasibleIntervals", "Fixture", "FIXTURE_NAMES",
    "Histogram", "HistosplineError", "NeedsMoreCellsError",
    "NonIncreasingKnotsError", "NotDominantError", "OrderEstimates",
    "OutOfDomainError", "Partition", "ShapeReport", "SingularSystemError",
    "SplineC1", "TestFunction", "TooFewKnotsError", "TridiagonalSystem",
    "UnknownFixtureError", "ZeroPivotError",
    "assemble_system", "average_slopes", "boundary_values", "cell_integral",
    "certify", "check_convexity_conditions", "check_geometric_mesh",
    "check_monotonicity_conditions", "classify_data", "convergence_study",
    "convex_positions", "dense_solve", "deriv1", "deriv2",
    "estimate_orders", "feasible_intervals", "fit", "fit_fallback",
    "get_fixture", "make_histogram", "mesh_family", "second_derivative_jumps",
    "simpson_cell_integral", "slope_sensitivity", "solve", "value",
]
