"""
Finite-Difference Radial Eigensolver

Independent numerical oracle for the analytic LAC spectrum. The radial
operator

    -(hbar^2/2M) (1/r)(r R')' + [hbar^2 m^2/(2M r^2) + M omega^2 r^2/8
                                + sigma hbar|omega|(m+1)/2] R = E R

is discretized in conservative form on the cell-centred grid
r_i = (i - 1/2) h, i = 1..n_points, with a Dirichlet wall half a cell beyond
r_max. The flux through r = 0 vanishes, so no inner boundary value is needed. Substituting
v_i = sqrt(r_i) R_i (the discrete Liouville transform) turns the weighted
problem into a symmetric tridiagonal eigenproblem, solved with LAPACK
bisection (stebz) plus inverse iteration (stein).

Work is done in units a_ac = 1, hbar|omega| = 1 and rescaled to SI on output.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from ..core.constants import derive_scales
from ..core.exceptions import NumericError, PreconditionError
from .specfun import radial_shape, truncation_radius
from .spectrum import QuantumNumbers, SystemConfig, energy_eigenvalue

logger = logging.getLogger(__name__)

MIN_GRID_POINTS = 200
REFERENCE_GRID_POINTS = 16000
# Grid spacing must resolve the magnetic length by this factor
RESOLUTION_FACTOR = 20.0
RESIDUAL_TOLERANCE = 1e-8


@dataclass(frozen=True)
class RadialGrid:
    """Uniform cell-centred radial grid"""

    r_max: float  # m
    n_points: int

    def __post_init__(self):
        if not self.r_max > 0:
            raise PreconditionError(f"r_max must be positive, got {self.r_max}")
        if self.n_points < MIN_GRID_POINTS:
            raise PreconditionError(
                f"Grid needs at least {MIN_GRID_POINTS} points, got {self.n_points}"
            )

    @property
    def spacing(self) -> float:
        return self.r_max / self.n_points

    @property
    def nodes(self) -> np.ndarray:
        return (np.arange(1, self.n_points + 1) - 0.5) * self.spacing


@dataclass
class FDResult:
    """Lowest eigenpairs of the discretized radial operator"""

    eigenvalues: np.ndarray  # J, ascending
    eigenvectors: np.ndarray  # (n_points, k), v = sqrt(r) R on the nodes, unit L2 norm in r/a_ac
    residual_norms: np.ndarray  # ||T v - E v|| / ||v||, dimensionless
    matrix_norm: float  # infinity norm of T, units of hbar|omega|
    grid: RadialGrid
    m: int
    sigma: int
    hbar_omega: float
    a_ac: float


@dataclass
class ConvergenceStudy:
    """Eigenvalue error against grid spacing"""

    spacings: List[float] = field(default_factory=list)  # m
    errors: List[float] = field(default_factory=list)  # units of hbar|omega|
    ratios: List[float] = field(default_factory=list)
    order: float = float("nan")

    def rows(self) -> List[Tuple[float, float]]:
        return list(zip(self.spacings, self.errors))


def reference_grid(m: int, k: int, a_ac: float,
                   n_points: int = REFERENCE_GRID_POINTS) -> RadialGrid:
    """Grid reaching the turning point of the k-th level plus eight lengths"""
    return RadialGrid(r_max=truncation_radius(k, abs(m), a_ac), n_points=n_points)


def assemble_operator(m: int, sigma: int, grid: RadialGrid,
                      a_ac: float) -> Tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the symmetric radial matrix, in hbar|omega|"""
    h = grid.spacing / a_ac
    s = grid.nodes / a_ac
    faces = np.arange(1, grid.n_points) * h  # r_{i+1/2}
    potential = 0.5 * m ** 2 / s ** 2 + 0.125 * s ** 2 + 0.5 * sigma * (m + 1)
    diagonal = 1.0 / h ** 2 + potential
    off_diagonal = -0.5 * faces / (h ** 2 * np.sqrt(s[:-1] * s[1:]))
    return diagonal, off_diagonal


def _check_grid(m: int, k: int, grid: RadialGrid, a_ac: float) -> None:
    if k < 1:
        raise PreconditionError(f"Need at least one eigenvalue, got k={k}")
    if grid.spacing > a_ac / RESOLUTION_FACTOR:
        raise PreconditionError(
            f"Grid spacing {grid.spacing:.3e} m exceeds a_ac/{RESOLUTION_FACTOR:g} = "
            f"{a_ac / RESOLUTION_FACTOR:.3e} m"
        )
    needed = truncation_radius(k, abs(m), a_ac)
    if grid.r_max < needed * (1.0 - 1e-12):
        raise PreconditionError(
            f"r_max {grid.r_max:.3e} m is below {needed:.3e} m required for k={k}, m={m}"
        )


def solve_radial_fd(m: int, sigma: int, cfg: SystemConfig, grid: RadialGrid,
                    k: int) -> FDResult:
    """k lowest eigenpairs of the discretized radial equation"""
    scales = derive_scales(cfg)
    _check_grid(m, k, grid, scales.a_ac)

    diagonal, off_diagonal = assemble_operator(m, sigma, grid, scales.a_ac)
    try:
        values, vectors = eigh_tridiagonal(
            diagonal, off_diagonal, select="i", select_range=(0, k - 1),
            lapack_driver="stebz",
        )
    except (LinAlgError, ValueError) as e:
        raise NumericError(
            f"Tridiagonal eigensolver failed for m={m}, sigma={sigma}: {e}",
            {"m": m, "sigma": sigma, "n_points": grid.n_points, "k": k},
        ) from e

    h = grid.spacing / scales.a_ac
    matrix_norm = float(np.max(
        np.abs(diagonal)
        + np.concatenate(([0.0], np.abs(off_diagonal)))
        + np.concatenate((np.abs(off_diagonal), [0.0]))
    ))
    residuals = np.empty(k)
    for j in range(k):
        v = vectors[:, j]
        tv = diagonal * v
        tv[:-1] += off_diagonal * v[1:]
        tv[1:] += off_diagonal * v[:-1]
        residuals[j] = np.linalg.norm(tv - values[j] * v) / np.linalg.norm(v)

    if np.any(residuals > RESIDUAL_TOLERANCE * matrix_norm):
        raise NumericError(
            "Eigenpair residual above tolerance",
            {"residuals": residuals.tolist(), "matrix_norm": matrix_norm},
        )

    # Unit norm in the continuum sense: h * sum v^2 = 1, leading lobe positive
    vectors = vectors / np.sqrt(h * np.sum(vectors ** 2, axis=0))
    for j in range(k):
        lead = vectors[np.argmax(np.abs(vectors[:, j])), j]
        if lead < 0:
            vectors[:, j] = -vectors[:, j]

    logger.debug(
        f"FD solve m={m} sigma={sigma} n={grid.n_points}: "
        f"E/hbar_omega={np.array2string(values, precision=10)}"
    )
    return FDResult(
        eigenvalues=values * scales.hbar_omega,
        eigenvectors=vectors,
        residual_norms=residuals,
        matrix_norm=matrix_norm,
        grid=grid,
        m=m,
        sigma=sigma,
        hbar_omega=scales.hbar_omega,
        a_ac=scales.a_ac,
    )


def analytic_levels(m: int, sigma: int, k: int, hbar_omega: float) -> np.ndarray:
    """Analytic energies of the k lowest radial states at fixed m, sigma"""
    return np.array([
        energy_eigenvalue(QuantumNumbers(n_xi=n_xi, m=m, sigma=sigma), hbar_omega)
        for n_xi in range(k)
    ])


def eigenvalue_errors(result: FDResult) -> np.ndarray:
    """Error per level: relative, or absolute in hbar|omega| where the exact value is 0"""
    exact = analytic_levels(result.m, result.sigma, len(result.eigenvalues), result.hbar_omega)
    diff = np.abs(result.eigenvalues - exact)
    scale = np.where(exact == 0.0, result.hbar_omega, np.abs(exact))
    return diff / scale


def ground_state_discrepancy(result: FDResult) -> float:
    """L2 distance between the FD ground state and sqrt(r) R_{0,m} on the nodes

    Both sides are dimensionless (lengths in a_ac).
    """
    s = result.grid.nodes / result.a_ac
    h = result.grid.spacing / result.a_ac
    exact = np.sqrt(s) * radial_shape(0, abs(result.m), s)
    diff = result.eigenvectors[:, 0] - exact
    return float(np.sqrt(h * np.sum(diff ** 2)))


def convergence_study(m: int, sigma: int, cfg: SystemConfig,
                      grids: Sequence[RadialGrid], level: int = 0) -> ConvergenceStudy:
    """Observed order of the eigenvalue error over successively finer grids"""
    if len(grids) < 3:
        raise PreconditionError(f"Convergence study needs at least 3 grids, got {len(grids)}")
    spacings = [g.spacing for g in grids]
    if any(later >= earlier for earlier, later in zip(spacings, spacings[1:])):
        raise PreconditionError("Grid spacings must be strictly decreasing")

    study = ConvergenceStudy()
    for grid in grids:
        result = solve_radial_fd(m, sigma, cfg, grid, level + 1)
        study.spacings.append(grid.spacing)
        study.errors.append(float(eigenvalue_errors(result)[level]))

    errors = np.array(study.errors)
    if np.any(errors <= 0):
        raise NumericError("Eigenvalue error vanished; cannot fit an order",
                           {"errors": study.errors})
    study.ratios = (errors[:-1] / errors[1:]).tolist()
    slope, _ = np.polyfit(np.log(spacings), np.log(errors), 1)
    study.order = float(slope)
    logger.info(f"Convergence m={m} sigma={sigma}: order {study.order:.3f}")
    return study


@dataclass(frozen=True)
class OracleRow:
    m: int
    sigma: int
    level: int
    fd_energy: float  # J
    analytic_energy: float  # J
    error: float  # relative, or absolute in hbar|omega| for a zero level


@dataclass
class OracleReport:
    """FD eigenvalues against the analytic spectrum over a set of (m, sigma)"""

    rows: List[OracleRow] = field(default_factory=list)
    discrepancies: List[Tuple[int, int, float]] = field(default_factory=list)
    hbar_omega: float = 0.0

    @property
    def max_error(self) -> float:
        return max((row.error for row in self.rows), default=0.0)

    @property
    def max_discrepancy(self) -> float:
        return max((d for _, _, d in self.discrepancies), default=0.0)


def run_oracle(cfg: SystemConfig, m_values: Sequence[int] = (0, 1, -1, 2, -2, 3, -3),
               sigmas: Sequence[int] = (-1, 1), k: int = 4,
               n_points: int = REFERENCE_GRID_POINTS) -> OracleReport:
    """Solve every (m, sigma) on its reference grid and tabulate the errors"""
    scales = derive_scales(cfg)
    report = OracleReport(hbar_omega=scales.hbar_omega)
    for sigma in sigmas:
        for m in m_values:
            result = solve_radial_fd(m, sigma, cfg, reference_grid(m, k, scales.a_ac, n_points), k)
            exact = analytic_levels(m, sigma, k, scales.hbar_omega)
            for level, (fd, err) in enumerate(zip(result.eigenvalues, eigenvalue_errors(result))):
                report.rows.append(OracleRow(m, sigma, level, float(fd), float(exact[level]), float(err)))
            report.discrepancies.append((m, sigma, ground_state_discrepancy(result)))
    logger.info(f"FD oracle: {len(report.rows)} levels, max error {report.max_error:.3e}")
    return report


def default_convergence_grids(cfg: SystemConfig, m: int = 0,
                              sizes: Sequence[int] = (1000, 2000, 4000)) -> List[RadialGrid]:
    """Ground-state grids of equal extent and halving spacing"""
    a_ac = derive_scales(cfg).a_ac
    return [reference_grid(m, 1, a_ac, n) for n in sizes]
