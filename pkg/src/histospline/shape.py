"""Shape certificates and diagnostics.

Two kinds of statement live here.  The sufficient conditions
(check_monotonicity_conditions / check_convexity_conditions /
check_geometric_mesh) are inequalities on the *input* data that guarantee a
sign pattern of the solved slopes before fitting; all margins are reported
and comparisons are strict, with no hidden epsilon.  The verdicts in
``certify`` are post-hoc: they look at the fitted spline itself, via slope
signs and dense derivative sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .build import (SplineC1, assemble_system, boundary_values, check_alpha,
                    fit, interior_coefficients)
from .errors import NeedsMoreCellsError
from .evaluate import deriv1, deriv2, second_derivative_jumps
from .mesh import DataShape, Histogram, Partition, average_slopes, classify_data
from .tridiag import TridiagonalSystem, solve


@dataclass(frozen=True)
class ConditionResult:
    """Outcome of one family of strict inequalities.

    ``margins`` maps an inequality label to its slack (left-over amount on
    the strict side); the family holds iff every margin is > 0.
    """

    satisfied: bool
    margins: dict[str, float]

    @property
    def min_margin(self) -> float:
        return min(self.margins.values())

    def to_dict(self) -> dict:
        return {"satisfied": self.satisfied,
                "margins": {k: float(v) for k, v in self.margins.items()}}


def _ordered_result(margins: dict[str, float]) -> ConditionResult:
    return ConditionResult(all(v > 0.0 for v in margins.values()), margins)


def check_monotonicity_conditions(hist: Histogram, alpha: float,
                                  s0: float, sk: float) -> ConditionResult:
    """Sufficient conditions for all solved slopes to be strictly positive.

    Requires monotone increasing data to be meaningful.  The two endpoint
    gaps I_1 - s0 and sk - I_k must be positive and the average slopes must
    dominate the neighbor terms row by row; failures show up as nonpositive
    margins, never as exceptions.
    """
    alpha = check_alpha(alpha)
    k = hist.n_cells
    if k < 3:
        raise NeedsMoreCellsError("monotonicity conditions need at least 3 cells")
    p = hist.partition
    a, b, c = interior_coefficients(p, alpha)
    d = average_slopes(hist)
    h1, hk = p.steps[0], p.steps[-1]
    left_gap = hist.averages[0] - s0
    right_gap = sk - hist.averages[-1]

    margins: dict[str, float] = {
        "left_gap": float(left_gap),
        "right_gap": float(right_gap),
        "first_lower": float(d[0] - (2.0 * a[0] * left_gap / (h1 * (5 - 2 * alpha))
                                     + b[0] * d[1] / c[1])),
        "first_upper": float(2.0 * c[0] * left_gap / (h1 * (2 * alpha + 1)) - d[0]),
    }
    for j in range(2, k - 1):
        margins[f"interior_{j}"] = float(
            d[j - 1] - (a[j - 1] * d[j - 2] / c[j - 2] + b[j - 1] * d[j] / c[j]))
    margins["last_lower"] = float(
        d[-1] - (2.0 * b[-1] * right_gap / (hk * (3 + 2 * alpha))
                 + a[-1] * d[-2] / c[-2]))
    margins["last_upper"] = float(
        2.0 * c[-1] * right_gap / (hk * (3 - 2 * alpha)) - d[-1])
    return _ordered_result(margins)


def check_convexity_conditions(hist: Histogram, alpha: float,
                               m0: float, m_km1: float,
                               s0: float, sk: float) -> ConditionResult:
    """Sufficient conditions for strictly increasing solved slopes.

    Stated for the slope-difference system, with the first and second-to-last
    slopes (m0, m_km1) treated as given -- pass the solved values for a
    post-hoc check or prescribed ones for an a-priori one.  The two side
    margins 2(I_1-s0)/h_1 - m0 and 2(sk-I_k)/h_k - m_km1 must be positive.
    With 3 cells only the side margins are checkable (the full first/last
    inequalities reference slopes two cells in).
    """
    alpha = check_alpha(alpha)
    k = hist.n_cells
    if k < 3:
        raise NeedsMoreCellsError("convexity conditions need at least 3 cells")
    p = hist.partition
    a, b, c = interior_coefficients(p, alpha)
    d = average_slopes(hist)
    side_left = 2.0 * (hist.averages[0] - s0) / p.steps[0] - m0
    side_right = 2.0 * (sk - hist.averages[-1]) / p.steps[-1] - m_km1

    margins: dict[str, float] = {
        "side_left": float(side_left),
        "side_right": float(side_right),
    }
    if k >= 4:
        dd = np.diff(d)  # dd[i-2] = d_i - d_{i-1}, i = 2..k-1
        margins["first"] = float(
            dd[0] - (a[1] * side_left / (2 * alpha + 1) + b[1] * dd[1] / c[2]))
        for j in range(3, k - 1):
            margins[f"interior_{j}"] = float(
                dd[j - 2] - (a[j - 1] * dd[j - 3] / c[j - 2]
                             + b[j - 1] * dd[j - 1] / c[j]))
        margins["last"] = float(
            dd[-1] - (b[-1] * side_right / (3 + 2 * alpha)
                      + a[-1] * dd[-2] / c[-2]))
    return _ordered_result(margins)


@dataclass(frozen=True)
class GeometricMeshResult:
    """Whether interior steps satisfy h_i = sqrt(h_{i-1} h_{i+1}).

    That identity makes the interior row coefficients index-independent
    (equivalently: all lam_i equal), which is what the convexity theorem
    actually consumes; ``max_weight_deviation`` reports max |lam_i - lam_{i-1}|
    directly.
    """

    is_geometric: bool
    step_deviations: np.ndarray
    max_step_deviation: float
    coefficients_equal: bool
    max_weight_deviation: float

    def to_dict(self) -> dict:
        return {"is_geometric": self.is_geometric,
                "max_step_deviation": self.max_step_deviation,
                "coefficients_equal": self.coefficients_equal,
                "max_weight_deviation": self.max_weight_deviation}


def check_geometric_mesh(p: Partition, tol: float = 1e-12) -> GeometricMeshResult:
    h = p.steps
    if len(h) < 3:
        dev = np.zeros(0)
    else:
        dev = np.abs(h[1:-1] - np.sqrt(h[:-2] * h[2:])) / h[1:-1]
    max_dev = float(dev.max(initial=0.0))
    wdev = float(np.max(np.abs(np.diff(p.lam)), initial=0.0))
    return GeometricMeshResult(max_dev <= tol, dev, max_dev, wdev <= tol, wdev)


@dataclass(frozen=True)
class ShapeReport:
    """Everything ``certify`` knows about one fitted spline."""

    data_monotone: bool
    data_convex: bool | None
    cond_monotone: ConditionResult
    cond_convex: ConditionResult
    mesh_geometric: GeometricMeshResult
    slopes_nonneg: bool
    slopes_increasing: bool
    spline_monotone_verdict: bool
    spline_convex_verdict: bool
    convex_positions: bool
    affine: bool

    def to_dict(self) -> dict:
        return {
            "data_monotone": self.data_monotone,
            "data_convex": self.data_convex,
            "cond20": self.cond_monotone.to_dict(),
            "cond24": self.cond_convex.to_dict(),
            "mesh_geometric": self.mesh_geometric.to_dict(),
            "slopes_nonneg": self.slopes_nonneg,
            "slopes_increasing": self.slopes_increasing,
            "spline_monotone_verdict": self.spline_monotone_verdict,
            "spline_convex_verdict": self.spline_convex_verdict,
            "convex_positions": self.convex_positions,
            "affine": self.affine,
        }


def _sampled_derivative_minima(s: SplineC1, samples_per_cell: int):
    p = s.partition
    min_d1 = np.inf
    min_d2 = np.inf
    for i in range(p.n_cells):
        xs = np.linspace(p.knots[i], p.knots[i + 1], samples_per_cell)
        min_d1 = min(min_d1, float(np.min(deriv1(s, xs))))
        min_d2 = min(min_d2, float(np.min(deriv2(s, xs))))
    return min_d1, min_d2


def convex_positions(s: SplineC1) -> bool:
    """Strict convex position of the knot values.

    True iff the value slopes dS_i = (S(x_{i+1}) - S(x_i))/h_{i+1} satisfy
    dS_i > dS_{i-1} >= 0 for every interior knot.  Affine and constant
    splines return False (the inequalities are strict).
    """
    ds = np.diff(s.values) / s.partition.steps
    return bool(np.all(np.diff(ds) > 0.0) and np.all(ds[:-1] >= 0.0))


def certify(s: SplineC1, hist: Histogram,
            samples_per_cell: int = 1000) -> ShapeReport:
    """Full shape report for a spline fitted from ``hist``.

    Verdicts come from dense sampling of the derivatives (tolerance -1e-12),
    so they hold for fallback fits too; the slope-sign flags are the cheap
    sufficient versions that coincide with the verdicts on standard fits.
    """
    data = classify_data(hist)
    s0, sk = float(s.values[0]), float(s.values[-1])
    cond_m = check_monotonicity_conditions(hist, s.alpha, s0, sk)
    cond_c = check_convexity_conditions(
        hist, s.alpha, float(s.slopes[0]), float(s.slopes[-2]), s0, sk)
    geo = check_geometric_mesh(hist.partition)

    m = s.slopes
    min_d1, min_d2 = _sampled_derivative_minima(s, samples_per_cell)
    ds = np.diff(s.values) / s.partition.steps
    spread = max(np.ptp(ds), np.ptp(m))
    affine = bool(spread <= 1e-12 * max(1.0, float(np.max(np.abs(ds)))))

    return ShapeReport(
        data_monotone=data.monotone_increasing,
        data_convex=data.convex,
        cond_monotone=cond_m,
        cond_convex=cond_c,
        mesh_geometric=geo,
        slopes_nonneg=bool(np.all(m >= 0.0)),
        slopes_increasing=bool(np.all(np.diff(m) > 0.0)),
        spline_monotone_verdict=min_d1 >= -1e-12,
        spline_convex_verdict=min_d2 >= -1e-12,
        convex_positions=convex_positions(s),
        affine=affine,
    )


def slope_sensitivity(s: SplineC1, hist: Histogram) -> np.ndarray:
    """Derivative of every knot slope with respect to alpha, at the fit's alpha.

    Differentiating the slope system (endpoint values held fixed) gives a
    system with the same matrix and right-hand side built from slope gaps:

        row 0:  2 (m_0 - m_1)
        row i:  2 lam_i (m_{i-1} - m_i) + 2 mu_i (m_i - m_{i+1})
        row k:  2 (m_{k-1} - m_k)

    For strictly convex fits (increasing slopes) the right-hand side is
    negative, and under the convexity conditions the interior entries of the
    result are negative: raising alpha flattens the interior slopes.
    """
    p = hist.partition
    alpha = s.alpha
    a, b, c = interior_coefficients(p, alpha)
    m = s.slopes
    k = hist.n_cells

    sub = np.empty(k)
    diag = np.empty(k + 1)
    sup = np.empty(k)
    rhs = np.empty(k + 1)
    diag[0] = 5.0 - 2.0 * alpha
    sup[0] = 2.0 * alpha + 1.0
    rhs[0] = 2.0 * (m[0] - m[1])
    sub[:-1] = a
    diag[1:-1] = c
    sup[1:] = b
    rhs[1:-1] = 2.0 * p.lam * (m[:-2] - m[1:-1]) + 2.0 * p.mu * (m[1:-1] - m[2:])
    sub[-1] = 3.0 - 2.0 * alpha
    diag[-1] = 3.0 + 2.0 * alpha
    rhs[-1] = 2.0 * (m[-2] - m[-1])
    return solve(TridiagonalSystem(sub, diag, sup, rhs))


@dataclass(frozen=True)
class FeasibleIntervals:
    """Per-knot envelopes of the alpha-family with fixed endpoint values.

    Interior slopes decrease in alpha under the convexity conditions, so
    [slope_low, slope_high] = [m_i(alpha=1), m_i(alpha=0)] brackets every
    family member.  value_low/value_high bracket the knot values of interior
    knots (1..k-1):  I_i + h_i/2 * m_{i-1}(1)  <=  S(x_i)  <=  I_i + h_i/2 * m_i(0).
    """

    ends: tuple[float, float]
    slope_low: np.ndarray
    slope_high: np.ndarray
    value_low: np.ndarray
    value_high: np.ndarray


def feasible_intervals(hist: Histogram,
                       ends: tuple[float, float] | None = None,
                       reference_alpha: float = 0.5) -> FeasibleIntervals:
    """Slope and value envelopes over alpha in [0,1].

    The whole family must share one pair of endpoint values for the
    envelopes to mean anything (the monotone-in-alpha argument holds the
    endpoint rows fixed); when ``ends`` is None they are resolved once from
    the data at ``reference_alpha``.
    """
    if ends is None:
        ends = boundary_values(hist, reference_alpha)
    at0 = fit(hist, 0.0, ends=ends)
    at1 = fit(hist, 1.0, ends=ends)
    h = hist.partition.steps
    avg = hist.averages
    # one interval per interior knot x_i, i = 1..k-1: I_i, h_i are avg[:-1], h[:-1]
    value_low = avg[:-1] + h[:-1] / 2.0 * at1.slopes[:-2]
    value_high = avg[:-1] + h[:-1] / 2.0 * at0.slopes[1:-1]
    return FeasibleIntervals(ends, at1.slopes, at0.slopes, value_low, value_high)
