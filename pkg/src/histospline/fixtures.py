"""Built-in datasets: small classic histograms plus generated families.

The named fixtures are the standard demonstration datasets for this kind of
fit; ``circle_segment`` builds averages of u(x) = 2 - sqrt(x(2-x)) on [0,2]
from its closed-form antiderivative.  The generated families produce
histograms that provably satisfy the shape conditions, for property tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .build import boundary_values, fit
from .errors import UnknownFixtureError
from .mesh import Histogram, Partition, make_histogram
from .shape import check_convexity_conditions, check_monotonicity_conditions
from .verify import EXP, TestFunction, mesh_family


def circle_segment_antiderivative(x):
    """Antiderivative of 2 - sqrt(x(2-x)) on [0, 2]."""
    x = np.asarray(x, dtype=float)
    s = x - 1.0
    return 2.0 * x - 0.5 * (s * np.sqrt(np.clip(1.0 - s * s, 0.0, None)) + np.arcsin(s))


CIRCLE_SEGMENT = TestFunction(
    "circle_segment",
    lambda x: 2.0 - np.sqrt(np.asarray(x, dtype=float) * (2.0 - np.asarray(x, dtype=float))),
    lambda x: (np.asarray(x, dtype=float) - 1.0)
    / np.sqrt(np.asarray(x, dtype=float) * (2.0 - np.asarray(x, dtype=float))),
    circle_segment_antiderivative,
)


@dataclass(frozen=True)
class Fixture:
    name: str
    histogram: Histogram
    facts: dict = field(default_factory=dict)


def _example2(knots) -> Histogram:
    p = Partition(np.asarray(knots, dtype=float))
    return Histogram(p, CIRCLE_SEGMENT.cell_averages(p))


def _build(name: str) -> Fixture:
    if name == "example1":
        return Fixture(name, make_histogram([0, 4, 6, 7], [1, 2, 4]),
                       {"data_monotone": True, "data_convex": True,
                        "mesh_geometric": True,
                        "endpoints_at_half": (1.0, 16.0 / 3.0)})
    if name == "example2_uniform":
        return Fixture(name, _example2(np.linspace(0.0, 2.0, 11)),
                       {"data_convex": True})
    if name == "example2_nonuniform":
        return Fixture(name, _example2(
            [0, 0.05, 0.1, 0.4, 0.7, 1, 1.3, 1.6, 1.9, 1.95, 2]),
            {"data_convex": True})
    if name == "example3":
        return Fixture(name, make_histogram(
            [0, 1, 2, 4, 6, 7, 8], [2.86, 1, 0.5, 1, 2, 2.86]),
            {"data_monotone": False, "data_convex": True})
    if name == "akima":
        return Fixture(name, make_histogram(
            [0, 2, 3, 5, 6, 8, 9, 11, 12, 14],
            [10, 10, 10, 10, 10, 10, 10.5, 15, 50]),
            {"data_monotone": True, "data_convex": True,
             "cond_convex_holds": False})
    raise UnknownFixtureError(name)


FIXTURE_NAMES = ("example1", "example2_uniform", "example2_nonuniform",
                 "example3", "akima")


def get_fixture(name: str) -> Fixture:
    if name not in FIXTURE_NAMES:
        raise UnknownFixtureError(
            f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return _build(name)


def _noisy_averages(f: TestFunction, p: Partition, rng: np.random.Generator) -> np.ndarray:
    avg = f.cell_averages(p)
    hbar = float(p.steps.max())
    return avg + rng.uniform(-1.0, 1.0, len(avg)) * 1e-3 * hbar * hbar


_SMOOTH_CONVEX = (
    EXP,
    TestFunction("quartic",
                 lambda x: x ** 4 + x,
                 lambda x: 4.0 * x ** 3 + 1.0,
                 lambda x: x ** 5 / 5.0 + x * x / 2.0),
)


def convex_family(count: int = 100, seed: int = 42, alpha: float = 0.5,
                  max_tries: int = 10000) -> list[Histogram]:
    """Uniform-mesh convex histograms that pass the convexity conditions.

    Cell averages of smooth increasing convex functions on [0,1], perturbed
    by noise bounded by 1e-3 * hbar^2, kept only when the data is convex and
    the post-hoc convexity conditions hold at ``alpha``.
    """
    rng = np.random.default_rng(seed)
    out: list[Histogram] = []
    for _ in range(max_tries):
        if len(out) >= count:
            break
        f = _SMOOTH_CONVEX[int(rng.integers(0, len(_SMOOTH_CONVEX)))]
        p = mesh_family("uniform", int(rng.integers(6, 17)))
        hist = Histogram(p, _noisy_averages(f, p, rng))
        d = np.diff(hist.averages) / p.mean_steps
        if np.any(np.diff(d) < 0.0):
            continue
        s = fit(hist, alpha)
        cond = check_convexity_conditions(
            hist, alpha, float(s.slopes[0]), float(s.slopes[-2]),
            float(s.values[0]), float(s.values[-1]))
        if cond.satisfied:
            out.append(hist)
    if len(out) < count:
        raise RuntimeError(f"only {len(out)} of {count} samples accepted")
    return out


def monotone_family(count: int = 100, seed: int = 7, alpha: float = 0.5,
                    max_tries: int = 10000) -> list[Histogram]:
    """Uniform-mesh increasing histograms that pass the monotonicity conditions."""
    rng = np.random.default_rng(seed)
    out: list[Histogram] = []
    for _ in range(max_tries):
        if len(out) >= count:
            break
        p = mesh_family("uniform", int(rng.integers(6, 17)))
        hist = Histogram(p, _noisy_averages(_SMOOTH_CONVEX[0], p, rng))
        d = np.diff(hist.averages) / p.mean_steps
        if np.any(d < 0.0):
            continue
        s0, sk = boundary_values(hist, alpha)
        if check_monotonicity_conditions(hist, alpha, s0, sk).satisfied:
            out.append(hist)
    if len(out) < count:
        raise RuntimeError(f"only {len(out)} of {count} samples accepted")
    return out
