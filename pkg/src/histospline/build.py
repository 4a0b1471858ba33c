"""Construction of the alpha-family of C1 integro cubic splines.

Given cell averages I_1..I_k, the fit solves a diagonally dominant
tridiagonal system for the knot slopes m_0..m_k and then recovers knot
values by

    S(x_i) = I_i + h_i/12 * ((3-2a) m_{i-1} + (3+2a) m_i),    i = 1..k,

with a = alpha in [0,1].  Every member of the family reproduces the
prescribed cell integrals h_i * I_i exactly; alpha moves the curve inside
the band of admissible shapes, and alpha = 1/2 is the most accurate member.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NeedsMoreCellsError
from .mesh import Histogram, Partition, average_slopes
from .tridiag import TridiagonalSystem, solve


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha out of [0,1]: {alpha}")
    return alpha


def interior_coefficients(p: Partition, alpha: float):
    """Sub/diagonal/super coefficients (a_i, c_i, b_i) of the interior rows.

    a_i = lam_i (3-2a), b_i = mu_i (1+2a), c_i = a_i + b_i + 4(a lam_i + (1-a) mu_i);
    each row sums to 6 and c_i > a_i + b_i, which gives strict dominance.
    """
    a = p.lam * (3.0 - 2.0 * alpha)
    b = p.mu * (1.0 + 2.0 * alpha)
    c = a + b + 4.0 * (alpha * p.lam + (1.0 - alpha) * p.mu)
    return a, b, c


@dataclass(frozen=True)
class SplineC1:
    """Fitted spline: one value and one slope per knot (C1 by sharing).

    On cell [x_i, x_{i+1}] with t = (x - x_i)/h_{i+1} the curve is the cubic
    Hermite patch of (values[i], values[i+1], slopes[i], slopes[i+1]).
    """

    partition: Partition
    values: np.ndarray
    slopes: np.ndarray
    alpha: float

    def __post_init__(self):
        n = len(self.partition.knots)
        for name in ("values", "slopes"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=float)
            if len(arr) != n:
                raise ValueError(f"{name} must have one entry per knot ({n})")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def knots(self) -> np.ndarray:
        return self.partition.knots


def boundary_values(hist: Histogram, alpha: float) -> tuple[float, float]:
    """Endpoint values S(x_0), S(x_k) estimated from the outermost averages.

    The estimates come from expanding the spline around each endpoint and
    eliminating the unknown slopes with the first/last two average slopes,
    so they need at least 3 cells.  For data sampled from an affine function
    they return the exact endpoint values.
    """
    alpha = check_alpha(alpha)
    p = hist.partition
    if hist.n_cells < 3:
        raise NeedsMoreCellsError(
            "endpoint estimation needs at least 3 cells; "
            "pass explicit endpoint values instead")
    d = average_slopes(hist)
    h1, hk = p.steps[0], p.steps[-1]
    s0 = hist.averages[0] + h1 / 12.0 * (
        p.mu[0] * (1 + 2 * alpha) * (2 * alpha - 5) * (d[0] - d[1])
        / (p.lam[0] * (3 - 2 * alpha))
        - 6.0 * d[0])
    sk = hist.averages[-1] + hk / 12.0 * (
        p.lam[-1] * (9 - 4 * alpha * alpha) * (d[-1] - d[-2])
        / (p.mu[-1] * (1 + 2 * alpha))
        + 6.0 * d[-1])
    return float(s0), float(sk)


def assemble_system(hist: Histogram, alpha: float,
                    s0: float, sk: float) -> TridiagonalSystem:
    """Slope system for given endpoint values.

    Row 0:    (5-2a) m_0 + (2a+1) m_1 = 12 (I_1 - s0) / h_1
    Row i:    a_i m_{i-1} + c_i m_i + b_i m_{i+1} = 6 d_i,   i = 1..k-1
    Row k:    (3-2a) m_{k-1} + (3+2a) m_k = 12 (sk - I_k) / h_k

    where d_i are the average slopes.  Rows 0 and k are the value-recovery
    identities for cells 1 and k, so any solution reproduces every cell
    integral exactly.
    """
    alpha = check_alpha(alpha)
    if not (np.isfinite(s0) and np.isfinite(sk)):
        raise ValueError("endpoint values must be finite")
    p = hist.partition
    k = hist.n_cells
    a, b, c = interior_coefficients(p, alpha)
    d = average_slopes(hist)

    sub = np.empty(k)
    diag = np.empty(k + 1)
    sup = np.empty(k)
    rhs = np.empty(k + 1)
    diag[0] = 5.0 - 2.0 * alpha
    sup[0] = 2.0 * alpha + 1.0
    rhs[0] = 12.0 * (hist.averages[0] - s0) / p.steps[0]
    sub[:-1] = a
    diag[1:-1] = c
    sup[1:] = b
    rhs[1:-1] = 6.0 * d
    sub[-1] = 3.0 - 2.0 * alpha
    diag[-1] = 3.0 + 2.0 * alpha
    rhs[-1] = 12.0 * (sk - hist.averages[-1]) / p.steps[-1]
    return TridiagonalSystem(sub, diag, sup, rhs)


def recover_values(hist: Histogram, alpha: float,
                   slopes: np.ndarray, s0: float) -> np.ndarray:
    """Knot values from slopes: right-endpoint identity per cell, S(x_0) given."""
    p = hist.partition
    values = np.empty(hist.n_cells + 1)
    values[0] = s0
    values[1:] = hist.averages + p.steps / 12.0 * (
        (3.0 - 2.0 * alpha) * slopes[:-1] + (3.0 + 2.0 * alpha) * slopes[1:])
    return values


def fit(hist: Histogram, alpha: float = 0.5,
        ends: tuple[float, float] | None = None) -> SplineC1:
    """Fit the alpha-member of the spline family to a histogram.

    ``ends`` pins the endpoint values (clamped mode, works with 2 cells);
    when None they are estimated from the data, which needs 3 cells.
    """
    alpha = check_alpha(alpha)
    if ends is None:
        s0, sk = boundary_values(hist, alpha)
    else:
        s0, sk = float(ends[0]), float(ends[1])
    system = assemble_system(hist, alpha, s0, sk)
    slopes = solve(system)
    values = recover_values(hist, alpha, slopes, s0)
    return SplineC1(hist.partition, values, slopes, alpha)


@dataclass(frozen=True)
class FallbackReport:
    """Consistency diagnostics of a fallback fit.

    value_mismatch[i-1]  |left-cell value - right-cell value| at interior
                         knot x_i (both recovery identities evaluated; the
                         spline keeps the left-cell one)
    integral_residuals   per-cell integral minus h_i * I_i

    Both are identically zero for a standard fit; the fallback trades them
    away for slopes that follow the data's own divided differences.
    """

    value_mismatch: np.ndarray
    integral_residuals: np.ndarray

    @property
    def max_value_mismatch(self) -> float:
        return float(np.max(np.abs(self.value_mismatch), initial=0.0))

    @property
    def max_integral_residual(self) -> float:
        return float(np.max(np.abs(self.integral_residuals), initial=0.0))


def fit_fallback(hist: Histogram, alpha: float = 0.5) -> tuple[SplineC1, FallbackReport]:
    """Shape-first fit: interior slopes are set to the average slopes.

    Interior slopes m_i = d_i inherit monotonicity/convexity straight from
    the data; m_0 and m_k are back-solved from the first and last interior
    rows of the standard system.  Knot values use the right-endpoint
    identity per cell (S(x_0) from cell 1's left-endpoint identity), so the
    remaining identities generally do not hold; the report quantifies the
    damage.
    """
    alpha = check_alpha(alpha)
    if hist.n_cells < 3:
        raise NeedsMoreCellsError("fallback fit needs at least 3 cells")
    p = hist.partition
    a, b, c = interior_coefficients(p, alpha)
    d = average_slopes(hist)

    slopes = np.empty(hist.n_cells + 1)
    slopes[1:-1] = d
    slopes[0] = (6.0 * d[0] - c[0] * slopes[1] - b[0] * slopes[2]) / a[0]
    slopes[-1] = (6.0 * d[-1] - a[-1] * slopes[-3] - c[-1] * slopes[-2]) / b[-1]

    s0 = hist.averages[0] + p.steps[0] / 12.0 * (
        (2.0 * alpha - 5.0) * slopes[0] - (2.0 * alpha + 1.0) * slopes[1])
    values = recover_values(hist, alpha, slopes, s0)
    spline = SplineC1(p, values, slopes, alpha)

    # left-endpoint identity of cell i+1 gives a second value for knot x_i
    left_of_next = hist.averages[1:] + p.steps[1:] / 12.0 * (
        (2.0 * alpha - 5.0) * slopes[1:-1] - (2.0 * alpha + 1.0) * slopes[2:])
    mismatch = np.abs(values[1:-1] - left_of_next)
    h = p.steps
    integrals = h * (0.5 * (values[:-1] + values[1:])
                     + h * (slopes[:-1] - slopes[1:]) / 12.0)
    residuals = integrals - h * hist.averages
    return spline, FallbackReport(mismatch, residuals)
