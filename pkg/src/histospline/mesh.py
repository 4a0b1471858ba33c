"""Partition and histogram data model.

Conventions used throughout the package: a partition x_0 < x_1 < ... < x_k
has k cells, cell i being [x_{i-1}, x_i] with step h_i = x_i - x_{i-1}
(1-based, stored 0-based so ``steps[i-1] == h_i``).  A histogram attaches one
average I_i per cell; the cell integral of the underlying function is
h_i * I_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonIncreasingKnotsError, TooFewKnotsError


@dataclass(frozen=True)
class Partition:
    """Strictly increasing knots plus derived mesh quantities.

    Derived arrays (all computed once, read-only):
      steps      h_i = x_i - x_{i-1},               length k
      mean_steps (h_i + h_{i+1}) / 2,               length k-1
      lam        h_i / (h_i + h_{i+1}),             length k-1
      mu         1 - lam,                           length k-1
    """

    knots: np.ndarray
    steps: np.ndarray = field(init=False, repr=False)
    mean_steps: np.ndarray = field(init=False, repr=False)
    lam: np.ndarray = field(init=False, repr=False)
    mu: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        knots = np.ascontiguousarray(self.knots, dtype=float)
        if knots.ndim != 1 or len(knots) < 3:
            raise TooFewKnotsError(
                f"need at least 3 knots (2 cells), got {knots.size}")
        h = np.diff(knots)
        if np.any(h <= 0):
            bad = int(np.argmax(h <= 0))
            raise NonIncreasingKnotsError(
                f"knots must be strictly increasing; violation at index {bad + 1}")
        knots.setflags(write=False)
        object.__setattr__(self, "knots", knots)
        for name, arr in (
            ("steps", h),
            ("mean_steps", 0.5 * (h[:-1] + h[1:])),
            ("lam", h[:-1] / (h[:-1] + h[1:])),
        ):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        mu = 1.0 - self.lam
        mu.setflags(write=False)
        object.__setattr__(self, "mu", mu)

    @property
    def n_cells(self) -> int:
        return len(self.knots) - 1

    @property
    def span(self) -> tuple[float, float]:
        return float(self.knots[0]), float(self.knots[-1])


@dataclass(frozen=True)
class Histogram:
    """A partition together with one average value per cell."""

    partition: Partition
    averages: np.ndarray

    def __post_init__(self):
        averages = np.ascontiguousarray(self.averages, dtype=float)
        if averages.ndim != 1 or len(averages) != self.partition.n_cells:
            raise ValueError(
                f"expected {self.partition.n_cells} averages, got {averages.size}")
        averages.setflags(write=False)
        object.__setattr__(self, "averages", averages)

    @property
    def n_cells(self) -> int:
        return self.partition.n_cells


def make_histogram(knots, averages) -> Histogram:
    """Convenience constructor from raw sequences."""
    return Histogram(Partition(np.asarray(knots, dtype=float)), averages)


def average_slopes(hist: Histogram) -> np.ndarray:
    """Divided differences of neighboring cell averages.

    Entry i-1 is (I_{i+1} - I_i) / mean_steps_i for i = 1..k-1; it is a
    second-order estimate of the derivative at the interior knot x_i on
    smoothly graded meshes.
    """
    return np.diff(hist.averages) / hist.partition.mean_steps


@dataclass(frozen=True)
class DataShape:
    """Monotonicity/convexity flags of the raw averages, with slack margins.

    ``convex`` is None when the histogram has fewer than 3 cells (the second
    difference is empty, so the question is undefined rather than false).
    Margins are the smallest slack of the defining inequalities; negative
    margins show how badly a failed inequality is violated.
    """

    monotone_increasing: bool
    convex: bool | None
    monotone_margin: float
    convex_margin: float | None


def classify_data(hist: Histogram, tol: float = 0.0) -> DataShape:
    """Classify the averages as monotone increasing and/or convex.

    Data is monotone increasing when every average slope is >= 0 and convex
    when the slopes are nondecreasing.  ``tol`` loosens both comparisons to
    >= -tol; the default is exact.
    """
    d = average_slopes(hist)
    mono_margin = float(d.min())
    mono = mono_margin >= -tol
    if len(d) < 2:
        return DataShape(mono, None, mono_margin, None)
    conv_margin = float(np.diff(d).min())
    return DataShape(mono, conv_margin >= -tol, mono_margin, conv_margin)
