import numpy as np
import pytest

from histospline import (SingularSystemError, TridiagonalSystem,
                         assemble_system, boundary_values, cell_integral,
                         convergence_study, dense_solve, estimate_orders,
                         fit, get_fixture, mesh_family, simpson_cell_integral,
                         solve)
from histospline.verify import EXP, SINLIN, affine_function

from _helpers import random_dominant_system


class TestDenseSolve:
    def test_identity(self):
        f = np.array([1.0, -2.0, 0.5])
        sys = TridiagonalSystem(np.zeros(2), np.ones(3), np.zeros(2), f)
        np.testing.assert_array_equal(dense_solve(sys), f)

    def test_singular(self):
        sys = TridiagonalSystem(np.zeros(2), np.zeros(3), np.zeros(2), np.ones(3))
        with pytest.raises(SingularSystemError):
            dense_solve(sys)

    def test_size_limit(self):
        n = 501
        sys = TridiagonalSystem(np.zeros(n - 1), np.ones(n), np.zeros(n - 1),
                                np.ones(n))
        with pytest.raises(ValueError):
            dense_solve(sys)

    def test_agrees_with_thomas_on_fit_systems(self):
        for name in ("example1", "example3", "akima"):
            hist = get_fixture(name).histogram
            for alpha in (0.0, 0.5, 1.0):
                s0, sk = boundary_values(hist, alpha)
                sys = assemble_system(hist, alpha, s0, sk)
                ref = dense_solve(sys)
                scale = 1.0 + np.max(np.abs(ref))
                assert np.max(np.abs(solve(sys) - ref)) <= 1e-11 * scale

    def test_agrees_with_thomas_on_random_systems(self):
        rng = np.random.default_rng(99)
        for _ in range(50):
            sys = random_dominant_system(rng, int(rng.integers(3, 80)))
            ref = dense_solve(sys)
            scale = 1.0 + np.max(np.abs(ref))
            assert np.max(np.abs(solve(sys) - ref)) <= 1e-11 * scale


class TestQuadratureOracle:
    def test_constant_cells(self):
        from histospline import make_histogram
        hist = make_histogram([0, 1, 3, 4], [2.0, 2.0, 2.0])
        s = fit(hist, 0.5, ends=(2.0, 2.0))
        for i, h in enumerate(hist.partition.steps):
            assert simpson_cell_integral(s, i) == pytest.approx(2.0 * h, rel=1e-14)

    def test_matches_closed_form_on_standard_fits(self):
        for name in ("example1", "example3", "akima"):
            hist = get_fixture(name).histogram
            s = fit(hist, 0.5)
            for i in range(hist.n_cells):
                ci = cell_integral(s, i)
                assert abs(simpson_cell_integral(s, i) - ci) <= 1e-12 * (1 + abs(ci))

    def test_reproduces_prescribed_cell_integrals(self):
        hist = get_fixture("example3").histogram
        s = fit(hist, 0.5)
        h = hist.partition.steps
        for i in range(hist.n_cells):
            target = h[i] * hist.averages[i]
            assert abs(simpson_cell_integral(s, i) - target) <= 1e-11 * (1 + abs(target))


class TestMeshFamily:
    def test_uniform(self):
        p = mesh_family("uniform", 4)
        np.testing.assert_allclose(p.steps, 0.25, rtol=1e-15)

    def test_graded_steps_vary_smoothly(self):
        for k in (10, 20, 40):
            p = mesh_family("smooth_graded", k)
            step_gaps = np.abs(np.diff(p.steps))
            assert step_gaps.max() <= 0.5 / k ** 2
        assert np.ptp(mesh_family("smooth_graded", 10).steps) > 1e-3

    def test_refinement_halves_hbar(self):
        h10 = mesh_family("smooth_graded", 10).steps.max()
        h20 = mesh_family("smooth_graded", 20).steps.max()
        assert h20 / h10 == pytest.approx(0.5, abs=0.02)

    def test_interval_and_validation(self):
        p = mesh_family("uniform", 5, interval=(-1.0, 3.0))
        assert p.span == (-1.0, 3.0)
        with pytest.raises(ValueError):
            mesh_family("uniform", 2)
        with pytest.raises(ValueError):
            mesh_family("chebyshev", 10)


class TestTestFunctions:
    @pytest.mark.parametrize("f", [EXP, SINLIN, affine_function(1.7, -2.0)])
    def test_antiderivative_consistency(self, f):
        xs = np.linspace(0.05, 0.95, 19)
        step = 1e-6
        numeric = (f.antiderivative(xs + step) - f.antiderivative(xs - step)) / (2 * step)
        np.testing.assert_allclose(numeric, f.u(xs), atol=1e-8)

    def test_cell_averages_match_quadrature(self):
        from scipy.integrate import quad
        p = mesh_family("smooth_graded", 6)
        avg = SINLIN.cell_averages(p)
        for i in range(p.n_cells):
            ref = quad(SINLIN.u, p.knots[i], p.knots[i + 1])[0] / p.steps[i]
            assert avg[i] == pytest.approx(ref, rel=1e-12)


class TestConvergenceStudy:
    def test_optimal_alpha_orders(self):
        records = convergence_study(EXP, 0.5, "uniform", [10, 20, 40])
        orders = estimate_orders(records)
        assert orders.value == pytest.approx(3.0, abs=0.3)
        assert orders.slope == pytest.approx(2.0, abs=0.3)
        assert orders.jump == pytest.approx(1.0, abs=0.3)
        assert not orders.exact

    def test_generic_alpha_orders(self):
        records = convergence_study(EXP, 0.0, "uniform", [10, 20, 40])
        orders = estimate_orders(records)
        assert orders.value == pytest.approx(2.0, abs=0.3)
        assert orders.slope == pytest.approx(1.0, abs=0.3)
        assert orders.jump == pytest.approx(0.0, abs=0.3)

    def test_knot_values_superconverge(self):
        # knot-wise value errors run one order ahead of the sup-norm error
        records = convergence_study(EXP, 0.5, "uniform", [10, 20, 40, 80])
        logh = np.log([r.hbar for r in records])
        knot_order = np.polyfit(logh, np.log([r.err_value_knots for r in records]), 1)[0]
        assert knot_order == pytest.approx(4.0, abs=0.3)

    def test_affine_is_exact(self):
        records = convergence_study(affine_function(), 0.3, "uniform", [5, 10, 20])
        assert all(r.exact for r in records)
        orders = estimate_orders(records)
        assert orders.exact and orders.value is None

    def test_pairwise_orders_fill_in(self):
        records = convergence_study(EXP, 0.5, "uniform", [10, 20, 40])
        assert records[0].order_value is None
        assert records[1].order_value is not None

    def test_validation(self):
        with pytest.raises(ValueError):
            convergence_study(EXP, 0.5, "uniform", [10, 20])
        with pytest.raises(ValueError):
            convergence_study(EXP, 0.5, "uniform", [40, 20, 10])
        with pytest.raises(ValueError):
            estimate_orders(convergence_study(EXP, 0.5, "uniform", [8, 16, 32])[:2])
