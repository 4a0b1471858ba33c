"""Independent oracles and the empirical convergence harness.

The oracles deliberately take a different route than the code they check:
the dense solve goes through LAPACK's pivoted elimination instead of the
Thomas recurrence, and the quadrature integrates sampled spline values
instead of using the closed-form cell integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .build import SplineC1, fit
from .errors import SingularSystemError
from .evaluate import second_derivative_jumps, value
from .mesh import Histogram, Partition
from .tridiag import TridiagonalSystem

#: errors below this are considered exact reproduction (orders meaningless)
EXACT_THRESHOLD = 1e-12


def dense_solve(system: TridiagonalSystem) -> np.ndarray:
    """Reference solve via dense partial-pivoting elimination (LAPACK)."""
    if system.size > 500:
        raise ValueError("dense oracle limited to 500 unknowns")
    try:
        return np.linalg.solve(system.dense(), system.rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc


def simpson_cell_integral(s: SplineC1, i: int, panels: int = 64) -> float:
    """Composite Simpson over cell i; exact for cubics up to roundoff."""
    a = float(s.partition.knots[i])
    b = float(s.partition.knots[i + 1])
    xs = np.linspace(a, b, 2 * panels + 1)
    v = value(s, xs)
    w = (b - a) / (2 * panels) / 3.0
    return float(w * (v[0] + v[-1] + 4.0 * v[1:-1:2].sum() + 2.0 * v[2:-2:2].sum()))


@dataclass(frozen=True)
class TestFunction:
    """Smooth function with closed-form antiderivative for exact averages."""

    name: str
    u: Callable[[np.ndarray], np.ndarray]
    du: Callable[[np.ndarray], np.ndarray]
    antiderivative: Callable[[np.ndarray], np.ndarray]

    def cell_averages(self, p: Partition) -> np.ndarray:
        return np.diff(self.antiderivative(p.knots)) / p.steps

    def histogram(self, p: Partition) -> Histogram:
        return Histogram(p, self.cell_averages(p))


EXP = TestFunction("exp", np.exp, np.exp, np.exp)

SINLIN = TestFunction(
    "sinlin",
    lambda x: np.sin(x) + 2.0 * x,
    lambda x: np.cos(x) + 2.0,
    lambda x: -np.cos(x) + x * x,
)


def affine_function(slope: float = 2.0, intercept: float = 1.0) -> TestFunction:
    return TestFunction(
        "affine",
        lambda x: slope * x + intercept,
        lambda x: np.full_like(np.asarray(x, dtype=float), slope),
        lambda x: 0.5 * slope * x * x + intercept * x,
    )


def mesh_family(kind: str, k: int, interval: tuple[float, float] = (0.0, 1.0)) -> Partition:
    """Refinement families whose consecutive steps differ by O(1/k^2).

    'uniform' is equispaced; 'smooth_graded' maps equispaced parameters
    through s + 0.2 s (1-s), a smooth increasing reparametrization, so the
    steps vary but their consecutive differences shrink quadratically.
    """
    if k < 3:
        raise ValueError("mesh families need k >= 3")
    a, b = interval
    s = np.arange(k + 1) / k
    if kind == "uniform":
        return Partition(a + (b - a) * s)
    if kind in ("smooth_graded", "graded"):
        return Partition(a + (b - a) * (s + 0.2 * s * (1.0 - s)))
    raise ValueError(f"unknown mesh kind {kind!r}")


@dataclass(frozen=True)
class ConvergenceRecord:
    """Errors of one fit in a refinement study.

    err_value is the sup-norm error of the curve over a dense sample of the
    interval (this is what the accuracy orders are about); err_value_knots
    is the knot-only value error, which superconverges by roughly one extra
    order and is reported for information.  Pairwise orders compare against
    the previous (coarser) record and are None on the first one.
    """

    k: int
    hbar: float
    err_value: float
    err_value_knots: float
    err_slope: float
    jump: float
    order_value: float | None = None
    order_slope: float | None = None
    order_jump: float | None = None

    @property
    def exact(self) -> bool:
        return max(self.err_value, self.err_slope) < EXACT_THRESHOLD


def _pairwise(prev: "ConvergenceRecord", cur: "ConvergenceRecord"):
    dh = np.log(cur.hbar / prev.hbar)

    def slope(e_prev, e_cur):
        if min(e_prev, e_cur) < EXACT_THRESHOLD:
            return None
        return float(np.log(e_cur / e_prev) / dh)

    return (slope(prev.err_value, cur.err_value),
            slope(prev.err_slope, cur.err_slope),
            slope(prev.jump, cur.jump))


def convergence_study(f: TestFunction, alpha: float, mesh_kind: str,
                      ks: list[int], interval: tuple[float, float] = (0.0, 1.0),
                      samples_per_cell: int = 20) -> list[ConvergenceRecord]:
    """Fit f's exact cell averages on a refinement family and measure errors.

    Endpoint values are clamped to the exact u(a), u(b); averages come from
    the closed-form antiderivative so quadrature error never pollutes the
    measured orders.  Expected orders for smooth u: value 2, slope 1 and
    O(1) second-derivative jumps at the knots, all rising by one at
    alpha = 1/2.
    """
    if len(ks) < 3:
        raise ValueError("need at least 3 mesh sizes to estimate orders")
    if sorted(ks) != list(ks):
        raise ValueError("mesh sizes must be increasing")
    records: list[ConvergenceRecord] = []
    for k in ks:
        p = mesh_family(mesh_kind, k, interval)
        hist = f.histogram(p)
        s = fit(hist, alpha, ends=(float(f.u(p.knots[0])), float(f.u(p.knots[-1]))))
        xs = np.linspace(interval[0], interval[1], samples_per_cell * k + 1)
        rec = ConvergenceRecord(
            k=k,
            hbar=float(p.steps.max()),
            err_value=float(np.max(np.abs(value(s, xs) - f.u(xs)))),
            err_value_knots=float(np.max(np.abs(s.values - f.u(p.knots)))),
            err_slope=float(np.max(np.abs(s.slopes - f.du(p.knots)))),
            jump=float(np.max(np.abs(second_derivative_jumps(s)))),
        )
        if records:
            ov, os_, oj = _pairwise(records[-1], rec)
            rec = ConvergenceRecord(rec.k, rec.hbar, rec.err_value,
                                    rec.err_value_knots, rec.err_slope, rec.jump,
                                    ov, os_, oj)
        records.append(rec)
    return records


@dataclass(frozen=True)
class OrderEstimates:
    """Least-squares log-log slopes over a whole study."""

    value: float | None
    slope: float | None
    jump: float | None
    exact: bool
    stabilization: dict[str, float]


def estimate_orders(records: list[ConvergenceRecord]) -> OrderEstimates:
    """Global order estimates plus a pre-asymptotic guard.

    ``stabilization`` holds the absolute change between the last two pairwise
    slopes for each error; values noticeably above ~0.2 mean the study has
    not reached its asymptotic regime.  Exact (roundoff-level) studies get
    orders of None.
    """
    if len(records) < 3:
        raise ValueError("order estimation needs at least 3 records")
    if all(r.exact for r in records):
        return OrderEstimates(None, None, None, True, {})
    logh = np.log([r.hbar for r in records])

    def lsq(errs):
        errs = np.asarray(errs)
        if np.any(errs < EXACT_THRESHOLD):
            return None
        return float(np.polyfit(logh, np.log(errs), 1)[0])

    def stab(name):
        pairs = [getattr(r, name) for r in records[1:]]
        if len(pairs) < 2 or pairs[-1] is None or pairs[-2] is None:
            return float("nan")
        return abs(pairs[-1] - pairs[-2])

    return OrderEstimates(
        value=lsq([r.err_value for r in records]),
        slope=lsq([r.err_slope for r in records]),
        jump=lsq([r.jump for r in records]),
        exact=False,
        stabilization={"value": stab("order_value"),
                       "slope": stab("order_slope"),
                       "jump": stab("order_jump")},
    )
