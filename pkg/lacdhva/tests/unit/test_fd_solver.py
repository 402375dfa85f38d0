"""
Unit Tests for the Finite-Difference Radial Eigensolver
"""

import numpy as np
import pytest

from ...core.exceptions import PreconditionError
from ...physics.fd_solver import (
    MIN_GRID_POINTS,
    RadialGrid,
    analytic_levels,
    assemble_operator,
    convergence_study,
    default_convergence_grids,
    eigenvalue_errors,
    ground_state_discrepancy,
    reference_grid,
    run_oracle,
    solve_radial_fd,
)


class TestRadialGrid:
    def test_cell_centred_nodes(self):
        grid = RadialGrid(r_max=1.0, n_points=400)
        assert grid.spacing == pytest.approx(1.0 / 400)
        assert grid.nodes[0] == pytest.approx(0.5 * grid.spacing)
        assert grid.nodes[-1] == pytest.approx(1.0 - 0.5 * grid.spacing)

    def test_minimum_size(self):
        with pytest.raises(PreconditionError):
            RadialGrid(r_max=1.0, n_points=MIN_GRID_POINTS - 1)

    def test_positive_extent(self):
        with pytest.raises(PreconditionError):
            RadialGrid(r_max=0.0, n_points=1000)


class TestOperator:
    def test_symmetric_tridiagonal_shape(self, scales):
        grid = reference_grid(2, 4, scales.a_ac, 1000)
        diagonal, off_diagonal = assemble_operator(2, 1, grid, scales.a_ac)
        assert diagonal.shape == (1000,)
        assert off_diagonal.shape == (999,)
        assert np.all(off_diagonal < 0)

    def test_scale_free(self, scales):
        # the dimensionless matrix only depends on the grid in units of a_ac
        grid = reference_grid(1, 2, scales.a_ac, 500)
        unit_grid = reference_grid(1, 2, 1.0, 500)
        d1, e1 = assemble_operator(1, -1, grid, scales.a_ac)
        d2, e2 = assemble_operator(1, -1, unit_grid, 1.0)
        np.testing.assert_allclose(d1, d2, rtol=1e-12)
        np.testing.assert_allclose(e1, e2, rtol=1e-12)


class TestSolve:
    """Eigenpairs against the analytic spectrum"""

    @pytest.mark.parametrize("m", [0, 1, -1, 3])
    @pytest.mark.parametrize("sigma", [-1, 1])
    def test_lowest_levels(self, rb_cfg, scales, m, sigma):
        result = solve_radial_fd(m, sigma, rb_cfg, reference_grid(m, 4, scales.a_ac), 4)
        assert np.all(eigenvalue_errors(result) <= 1e-6)
        np.testing.assert_allclose(
            result.eigenvalues, analytic_levels(m, sigma, 4, scales.hbar_omega),
            rtol=1e-6, atol=1e-6 * scales.hbar_omega,
        )
        assert np.all(result.residual_norms <= 1e-8 * result.matrix_norm)

    def test_zero_mode_uses_absolute_error(self, rb_cfg, scales):
        result = solve_radial_fd(0, -1, rb_cfg, reference_grid(0, 1, scales.a_ac), 1)
        assert analytic_levels(0, -1, 1, scales.hbar_omega)[0] == 0.0
        assert abs(result.eigenvalues[0]) <= 1e-6 * scales.hbar_omega

    def test_eigenvectors_normalized(self, rb_cfg, scales):
        grid = reference_grid(2, 3, scales.a_ac, 4000)
        result = solve_radial_fd(2, 1, rb_cfg, grid, 3)
        h = grid.spacing / scales.a_ac
        gram = h * result.eigenvectors.T @ result.eigenvectors
        np.testing.assert_allclose(gram, np.eye(3), atol=1e-8)

    @pytest.mark.parametrize("m", [0, 2, -3])
    def test_ground_state_matches_analytic(self, rb_cfg, scales, m):
        result = solve_radial_fd(m, 1, rb_cfg, reference_grid(m, 1, scales.a_ac), 1)
        assert ground_state_discrepancy(result) < 1e-4

    def test_coarse_grid_rejected(self, rb_cfg, scales):
        coarse = RadialGrid(r_max=reference_grid(0, 1, scales.a_ac).r_max, n_points=MIN_GRID_POINTS)
        with pytest.raises(PreconditionError):
            solve_radial_fd(0, 1, rb_cfg, coarse, 1)

    def test_short_grid_rejected(self, rb_cfg, scales):
        short = RadialGrid(r_max=3.0 * scales.a_ac, n_points=4000)
        with pytest.raises(PreconditionError):
            solve_radial_fd(0, 1, rb_cfg, short, 4)

    def test_needs_one_level(self, rb_cfg, scales):
        with pytest.raises(PreconditionError):
            solve_radial_fd(0, 1, rb_cfg, reference_grid(0, 1, scales.a_ac), 0)


class TestConvergence:
    def test_second_order(self, rb_cfg):
        study = convergence_study(0, -1, rb_cfg, default_convergence_grids(rb_cfg))
        assert 1.8 <= study.order <= 2.2
        assert len(study.ratios) == 2
        assert all(3.5 <= ratio <= 4.5 for ratio in study.ratios)
        assert len(study.rows()) == 3

    def test_needs_three_grids(self, rb_cfg):
        grids = default_convergence_grids(rb_cfg, sizes=(1000, 2000))
        with pytest.raises(PreconditionError):
            convergence_study(0, -1, rb_cfg, grids)

    def test_spacing_must_decrease(self, rb_cfg):
        grids = default_convergence_grids(rb_cfg, sizes=(1000, 2000, 2000))
        with pytest.raises(PreconditionError):
            convergence_study(0, -1, rb_cfg, grids)


@pytest.mark.slow
class TestOracle:
    def test_full_table(self, rb_cfg):
        report = run_oracle(rb_cfg)
        assert len(report.rows) == 7 * 2 * 4
        assert report.max_error <= 1e-6
        assert report.max_discrepancy < 1e-4
