import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from histospline import (NeedsMoreCellsError, Partition, assemble_system,
                         average_slopes, boundary_values, fit, fit_fallback,
                         get_fixture, make_histogram)
from histospline.build import recover_values

from _helpers import affine_histogram, random_histogram, random_partition


class TestBoundaryValues:
    def test_reference_dataset_exact(self):
        hist = get_fixture("example1").histogram
        s0, sk = boundary_values(hist, 0.5)
        assert abs(s0 - 1.0) <= 1e-12
        assert abs(sk - 16.0 / 3.0) <= 1e-12

    @given(st.integers(0, 2 ** 32 - 1), st.floats(0.0, 1.0, allow_nan=False))
    @settings(max_examples=40, deadline=None)
    def test_affine_data_gives_exact_endpoints(self, seed, alpha):
        rng = np.random.default_rng(seed)
        p = random_partition(rng)
        slope, icpt = rng.uniform(-3, 3, 2)
        hist = affine_histogram(p, slope, icpt)
        s0, sk = boundary_values(hist, alpha)
        lo, hi = p.span
        assert abs(s0 - (slope * lo + icpt)) <= 1e-10
        assert abs(sk - (slope * hi + icpt)) <= 1e-10

    def test_needs_three_cells(self):
        hist = make_histogram([0, 1, 2], [1.0, 2.0])
        with pytest.raises(NeedsMoreCellsError):
            boundary_values(hist, 0.5)

    def test_alpha_validation(self):
        hist = get_fixture("example1").histogram
        with pytest.raises(ValueError, match="alpha out of"):
            boundary_values(hist, 1.5)


class TestAssembleSystem:
    def test_uniform_interior_rows_at_half(self):
        hist = make_histogram(np.arange(6.0), [1, 2, 3, 2, 1])
        sys = assemble_system(hist, 0.5, 0.0, 0.0)
        np.testing.assert_allclose(sys.sub[:-1], np.ones(4), rtol=1e-15)
        np.testing.assert_allclose(sys.diag[1:-1], 4.0 * np.ones(4), rtol=1e-15)
        np.testing.assert_allclose(sys.sup[1:], np.ones(4), rtol=1e-15)

    def test_uniform_interior_rows_at_zero(self):
        hist = make_histogram(np.arange(5.0), [1, 2, 3, 2])
        sys = assemble_system(hist, 0.0, 0.0, 0.0)
        np.testing.assert_allclose(sys.sub[:-1], 1.5 * np.ones(3), rtol=1e-15)
        np.testing.assert_allclose(sys.diag[1:-1], 4.0 * np.ones(3), rtol=1e-15)
        np.testing.assert_allclose(sys.sup[1:], 0.5 * np.ones(3), rtol=1e-15)

    @given(st.integers(0, 2 ** 32 - 1), st.floats(0.0, 1.0, allow_nan=False))
    @settings(max_examples=100, deadline=None)
    def test_every_row_sums_to_six(self, seed, alpha):
        hist = random_histogram(np.random.default_rng(seed))
        sys = assemble_system(hist, alpha, 0.0, 1.0)
        sums = sys.diag.copy()
        sums[1:] += sys.sub
        sums[:-1] += sys.sup
        np.testing.assert_allclose(sums, 6.0, rtol=1e-14)

    def test_right_hand_sides(self):
        hist = get_fixture("example1").histogram
        sys = assemble_system(hist, 0.5, 1.0, 16.0 / 3.0)
        np.testing.assert_allclose(sys.rhs, [0.0, 2.0, 8.0, 16.0], atol=1e-12)

    def test_rejects_nonfinite_ends(self):
        hist = get_fixture("example1").histogram
        with pytest.raises(ValueError):
            assemble_system(hist, 0.5, np.nan, 0.0)


class TestFit:
    def test_reference_dataset_frozen_values(self):
        hist = get_fixture("example1").histogram
        s = fit(hist, 0.5)
        np.testing.assert_allclose(s.slopes, [-1 / 6, 1 / 3, 4 / 3, 10 / 3],
                                   rtol=1e-12)
        np.testing.assert_allclose(s.values, [1.0, 4 / 3, 3.0, 16 / 3],
                                   rtol=1e-12)

    def test_constant_data_clamped(self):
        hist = make_histogram([0, 1, 2], [3.5, 3.5])
        s = fit(hist, 0.7, ends=(3.5, 3.5))
        np.testing.assert_allclose(s.slopes, 0.0, atol=1e-13)
        np.testing.assert_allclose(s.values, 3.5, rtol=1e-15)

    @given(st.integers(0, 2 ** 32 - 1),
           st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]))
    @settings(max_examples=60, deadline=None)
    def test_linear_reproduction(self, seed, alpha):
        rng = np.random.default_rng(seed)
        p = random_partition(rng)
        slope, icpt = rng.uniform(-3, 3, 2)
        s = fit(affine_histogram(p, slope, icpt), alpha)
        np.testing.assert_allclose(s.slopes, slope, atol=1e-11)
        np.testing.assert_allclose(s.values, slope * p.knots + icpt, atol=1e-11)

    @given(st.integers(0, 2 ** 32 - 1), st.floats(0.0, 1.0, allow_nan=False))
    @settings(max_examples=100, deadline=None)
    def test_per_cell_integral_identity(self, seed, alpha):
        hist = random_histogram(np.random.default_rng(seed))
        s = fit(hist, alpha)
        h = hist.partition.steps
        integrals = h * (0.5 * (s.values[:-1] + s.values[1:])
                         + h * (s.slopes[:-1] - s.slopes[1:]) / 12.0)
        target = h * hist.averages
        np.testing.assert_allclose(integrals, target,
                                   rtol=1e-11, atol=1e-11)

    @given(st.integers(0, 2 ** 32 - 1), st.floats(0.0, 1.0, allow_nan=False))
    @settings(max_examples=60, deadline=None)
    def test_value_recovery_consistent_from_both_cells(self, seed, alpha):
        # interior knots: right-endpoint identity of cell i agrees with
        # left-endpoint identity of cell i+1
        hist = random_histogram(np.random.default_rng(seed))
        s = fit(hist, alpha)
        p, m = hist.partition, s.slopes
        from_left_cell = s.values[1:-1]
        from_right_cell = hist.averages[1:] + p.steps[1:] / 12.0 * (
            (2 * alpha - 5) * m[1:-1] - (2 * alpha + 1) * m[2:])
        scale = 1.0 + np.max(np.abs(s.values))
        np.testing.assert_allclose(from_left_cell, from_right_cell,
                                   atol=1e-11 * scale)

    def test_clamped_works_with_two_cells(self):
        hist = make_histogram([0, 1, 2], [1.0, 3.0])
        s = fit(hist, 0.5, ends=(0.0, 4.0))
        assert s.values[0] == 0.0 and s.values[-1] == 4.0

    def test_alpha_out_of_range(self):
        hist = get_fixture("example1").histogram
        for bad in (-0.1, 1.0000001, 2.0):
            with pytest.raises(ValueError, match="alpha out of"):
                fit(hist, bad)


class TestFitFallback:
    def test_interior_slopes_equal_average_slopes_exactly(self):
        hist = get_fixture("akima").histogram
        s, report = fit_fallback(hist, 0.5)
        np.testing.assert_array_equal(s.slopes[1:-1], average_slopes(hist))
        assert np.all(np.isfinite(s.slopes)) and np.all(np.isfinite(s.values))
        assert report.max_integral_residual > 0.0

    def test_constant_data(self):
        hist = make_histogram([0, 1, 3, 4], [2.0, 2.0, 2.0])
        s, report = fit_fallback(hist, 0.5)
        np.testing.assert_allclose(s.slopes, 0.0, atol=1e-14)
        np.testing.assert_allclose(s.values, 2.0, rtol=1e-15)
        assert report.max_value_mismatch <= 1e-14
        assert report.max_integral_residual <= 1e-14

    @given(st.integers(0, 2 ** 32 - 1), st.floats(0.0, 1.0, allow_nan=False))
    @settings(max_examples=30, deadline=None)
    def test_coincides_with_standard_fit_on_affine_data(self, seed, alpha):
        rng = np.random.default_rng(seed)
        p = random_partition(rng)
        hist = affine_histogram(p, *rng.uniform(-3, 3, 2))
        s_std = fit(hist, alpha)
        s_fb, report = fit_fallback(hist, alpha)
        np.testing.assert_allclose(s_fb.slopes, s_std.slopes, atol=1e-10)
        np.testing.assert_allclose(s_fb.values, s_std.values, atol=1e-10)
        assert report.max_value_mismatch <= 1e-10

    def test_interior_slopes_near_standard_on_smooth_convex_data(self):
        # both approximate the derivative at interior knots; gap shrinks ~h^2
        gaps = []
        for k in (10, 20, 40):
            knots = np.linspace(0.0, 1.0, k + 1)
            avg = np.diff(np.exp(knots)) / np.diff(knots)
            hist = make_histogram(knots, avg)
            s_std = fit(hist, 0.5)
            s_fb, _ = fit_fallback(hist, 0.5)
            gaps.append(np.max(np.abs(s_fb.slopes[1:-1] - s_std.slopes[1:-1])))
        assert gaps[1] <= 0.3 * gaps[0]
        assert gaps[2] <= 0.3 * gaps[1]

    def test_needs_three_cells(self):
        with pytest.raises(NeedsMoreCellsError):
            fit_fallback(make_histogram([0, 1, 2], [1.0, 2.0]), 0.5)


def test_recover_values_matches_fit():
    hist = get_fixture("example3").histogram
    s = fit(hist, 0.5)
    np.testing.assert_array_equal(
        recover_values(hist, 0.5, s.slopes, s.values[0]), s.values)
