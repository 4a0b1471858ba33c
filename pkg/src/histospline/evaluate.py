"""Evaluation of a fitted spline: values, derivatives, cell integrals, jumps.

All point evaluators accept scalars or arrays and resolve points to cells by
binary search; a point equal to an interior knot belongs to the cell on its
right, the right endpoint to the last cell.
"""

from __future__ import annotations

import numpy as np

from .build import SplineC1
from .errors import BadCellIndexError, OutOfDomainError
from .mesh import Partition


def locate(p: Partition, x):
    """Cell index i and local coordinate t = (x - x_i)/h_{i+1} for each point."""
    x = np.asarray(x, dtype=float)
    lo, hi = p.span
    if np.any(x < lo) or np.any(x > hi):
        raise OutOfDomainError(f"point outside [{lo}, {hi}]")
    idx = np.clip(np.searchsorted(p.knots, x, side="right") - 1, 0, p.n_cells - 1)
    t = (x - p.knots[idx]) / p.steps[idx]
    return idx, t


def value(s: SplineC1, x):
    """Spline value: Hermite patch of the two knot values and slopes per cell."""
    idx, t = locate(s.partition, x)
    h = s.partition.steps[idx]
    omt = 1.0 - t
    return (omt * omt * (1.0 + 2.0 * t) * s.values[idx]
            + t * t * (3.0 - 2.0 * t) * s.values[idx + 1]
            + h * t * omt * (omt * s.slopes[idx] - t * s.slopes[idx + 1]))


def deriv1(s: SplineC1, x):
    """First derivative of the Hermite patch (valid for any knot data)."""
    idx, t = locate(s.partition, x)
    h = s.partition.steps[idx]
    dv = (s.values[idx + 1] - s.values[idx]) / h
    return (6.0 * t * (1.0 - t) * dv
            + (1.0 - t) * (1.0 - 3.0 * t) * s.slopes[idx]
            + t * (3.0 * t - 2.0) * s.slopes[idx + 1])


def deriv2(s: SplineC1, x):
    """Second derivative; at an interior knot this is the right-cell limit."""
    idx, t = locate(s.partition, x)
    h = s.partition.steps[idx]
    dv = (s.values[idx + 1] - s.values[idx]) / h
    return (6.0 * (1.0 - 2.0 * t) * dv / h
            + ((6.0 * t - 4.0) * s.slopes[idx]
               + (6.0 * t - 2.0) * s.slopes[idx + 1]) / h)


def deriv1_from_slopes(s: SplineC1, x):
    """First derivative as a nonnegative-weight blend of the two cell slopes.

    Equivalent to deriv1 exactly when the fit's per-cell integral identity
    holds (standard fits); used as the monotonicity certificate because both
    weights are >= 0 for alpha in [0,1].  Differs from deriv1 on fallback
    fits.
    """
    idx, t = locate(s.partition, x)
    a = s.alpha
    return ((1.0 - t) * (1.0 + (1.0 - 2.0 * a) * t) * s.slopes[idx]
            + t * (2.0 * a + t * (1.0 - 2.0 * a)) * s.slopes[idx + 1])


def deriv2_from_slopes(s: SplineC1, x):
    """Second derivative in certificate form: sign equals sign of the slope gap."""
    idx, t = locate(s.partition, x)
    h = s.partition.steps[idx]
    a = s.alpha
    return 2.0 * (a + t * (1.0 - 2.0 * a)) / h * (s.slopes[idx + 1] - s.slopes[idx])


def cell_integral(s: SplineC1, i: int) -> float:
    """Exact integral of the cubic over cell i (0-based): closed form."""
    if not 0 <= i < s.partition.n_cells:
        raise BadCellIndexError(f"cell {i} outside 0..{s.partition.n_cells - 1}")
    h = s.partition.steps[i]
    return float(h * (0.5 * (s.values[i] + s.values[i + 1])
                      + h * (s.slopes[i] - s.slopes[i + 1]) / 12.0))


def second_derivative_sides(s: SplineC1, i: int) -> tuple[float, float]:
    """One-sided second derivatives (left, right) at interior knot x_i."""
    k = s.partition.n_cells
    if not 1 <= i <= k - 1:
        raise BadCellIndexError(f"interior knot index {i} outside 1..{k - 1}")
    h = s.partition.steps
    dv = np.diff(s.values)
    left = (-6.0 * dv[i - 1] / h[i - 1] ** 2
            + (2.0 * s.slopes[i - 1] + 4.0 * s.slopes[i]) / h[i - 1])
    right = (6.0 * dv[i] / h[i] ** 2
             + (-4.0 * s.slopes[i] - 2.0 * s.slopes[i + 1]) / h[i])
    return float(left), float(right)


def second_derivative_jumps(s: SplineC1) -> np.ndarray:
    """Jump (right - left limit) of the second derivative at interior knots."""
    h = s.partition.steps
    dv = np.diff(s.values)
    m = s.slopes
    right = 6.0 * dv[1:] / h[1:] ** 2 + (-4.0 * m[1:-1] - 2.0 * m[2:]) / h[1:]
    left = -6.0 * dv[:-1] / h[:-1] ** 2 + (2.0 * m[:-2] + 4.0 * m[1:-1]) / h[:-1]
    return right - left
