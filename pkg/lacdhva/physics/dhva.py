"""
Zero-Temperature de Haas-van Alphen Oscillations

N atoms fill LAC levels of degeneracy D = rho*B from the bottom: p levels are
completely filled and the (p+1)th holds N - pD atoms. Thermodynamics uses the
spectrum E_n = (n + 1/2) hbar|omega|; sigma only enters through |omega|.

Level populations are real-valued, like D. At an exact boundary N = pD the
state is taken as p filled levels and an empty (p+1)th level, i.e. the limit
from the larger-1/B side. Both one-sided values are available per jump
through ``jump_records``.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..core.constants import DerivedScales, derive_scales, load_constants
from ..core.exceptions import DomainError, InsufficientDataError
from .specfun import ArrayLike
from .spectrum import SystemConfig

logger = logging.getLogger(__name__)

# natoms/D within this relative distance of an integer counts as exactly filled
BOUNDARY_SNAP = 1e-12

# total_energy_sum loops over levels; beyond this p use total_energy_closed
MAX_SUM_LEVELS = 100_000


@dataclass(frozen=True)
class FillingState:
    """Completely filled levels and the population of the partial level"""

    p: int
    partial: float
    degeneracy_at_field: float


@dataclass(frozen=True)
class SweepPoint:
    inv_b: float  # 1/T_eff
    b: float  # T_eff
    p: int
    partial: float
    energy_total: float  # J
    energy_partial: float  # J
    magnetization: float  # J*s/T


@dataclass
class SweepResult:
    """Observables on a grid uniform in 1/B, ascending"""

    inv_b: np.ndarray
    b: np.ndarray
    p: np.ndarray
    partial: np.ndarray
    filled: np.ndarray
    energy_total: np.ndarray
    energy_partial: np.ndarray
    magnetization: np.ndarray
    natoms: int
    rho_flux: float
    mu_b_eff: float

    def __len__(self) -> int:
        return len(self.inv_b)

    def __getitem__(self, i: int) -> SweepPoint:
        return SweepPoint(
            inv_b=float(self.inv_b[i]),
            b=float(self.b[i]),
            p=int(self.p[i]),
            partial=float(self.partial[i]),
            energy_total=float(self.energy_total[i]),
            energy_partial=float(self.energy_partial[i]),
            magnetization=float(self.magnetization[i]),
        )

    def __iter__(self) -> Iterator[SweepPoint]:
        for i in range(len(self)):
            yield self[i]


@dataclass(frozen=True)
class JumpRecord:
    """One-sided limits of the observables at a level-opening boundary

    ``left`` is the smaller-1/B side (level k nearly full), ``right`` the
    larger-1/B side (level k+1 just opened).
    """

    inv_b: float
    level: int
    partial_left: float
    partial_right: float
    filled_left: float
    filled_right: float
    energy_partial_left: float
    energy_partial_right: float
    magnetization_left: float
    magnetization_right: float

    @property
    def magnetization_jump(self) -> float:
        return self.magnetization_right - self.magnetization_left


@dataclass(frozen=True)
class PeriodEstimate:
    period: float  # 1/T_eff, mean jump spacing
    max_deviation: float  # largest |spacing - period|


@dataclass
class OscillationAnalysis:
    """Jumps, period and Onsager area extracted from a sweep"""

    jump_positions: List[float] = field(default_factory=list)
    period: Optional[float] = None
    period_max_deviation: Optional[float] = None
    jump_amplitude: float = 0.0  # J*s/T
    jump_amplitude_analytic: float = 0.0
    fermi_area: float = 0.0  # m^-2
    records: List[JumpRecord] = field(default_factory=list)


def _filling_arrays(natoms: float, degeneracy: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    ratio = natoms / degeneracy
    nearest = np.rint(ratio)
    snapped = np.abs(ratio - nearest) <= BOUNDARY_SNAP * np.maximum(ratio, 1.0)
    p = np.where(snapped, nearest, np.floor(ratio)).astype(np.int64)
    partial = np.where(snapped, 0.0, natoms - p * degeneracy)
    partial = np.clip(partial, 0.0, degeneracy)
    return p, partial


def fill_levels(natoms: int, degeneracy: float) -> FillingState:
    """p = floor(N/D) filled levels, N - pD atoms in the next one"""
    if natoms < 1:
        raise DomainError(f"natoms must be at least 1, got {natoms}")
    if not degeneracy > 0:
        raise DomainError(f"Degeneracy must be positive, got {degeneracy}")
    p, partial = _filling_arrays(float(natoms), np.asarray(degeneracy, dtype=float))
    return FillingState(p=int(p), partial=float(partial), degeneracy_at_field=float(degeneracy))


def _resolve(cfg: SystemConfig, scales: Optional[DerivedScales]) -> DerivedScales:
    return scales if scales is not None else derive_scales(cfg)


def _field(b: ArrayLike) -> np.ndarray:
    arr = np.asarray(b, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("Field values must be positive")
    return arr


def _shaped(result: np.ndarray, like) -> ArrayLike:
    return float(result) if np.ndim(like) == 0 else result


def _state(b: np.ndarray, cfg: SystemConfig, scales: DerivedScales):
    return _filling_arrays(float(cfg.natoms), scales.rho_flux * b)


def _hbar_omega_at(b: np.ndarray, cfg: SystemConfig) -> np.ndarray:
    k = load_constants()
    return k.hbar * abs(cfg.mu) * b / (cfg.mass * k.c ** 2)


def _partial_energy_p(b, p, natoms: float, scales: DerivedScales):
    n_over_rho = natoms / scales.rho_flux
    return -scales.mu_b_eff * scales.rho_flux * (p * b - n_over_rho) * ((p + 1) * b - n_over_rho)


def _magnetization_p(b, p, natoms: float, scales: DerivedScales):
    n_over_rho = natoms / scales.rho_flux
    return scales.mu_b_eff * scales.rho_flux * (2.0 * b * p * (p + 1) - n_over_rho * (2 * p + 1))


def total_energy_sum(b: ArrayLike, cfg: SystemConfig,
                     scales: Optional[DerivedScales] = None) -> ArrayLike:
    """Sum over filled levels of (n+1/2) hbar|omega| D plus the partial level

    The literal level-by-level sum, meant as a cross-check at moderate p.
    Fields with more than MAX_SUM_LEVELS filled levels raise DomainError.
    """
    scales = _resolve(cfg, scales)
    field_ = _field(b)
    p, partial = _state(field_, cfg, scales)
    if p.size and int(np.max(p)) > MAX_SUM_LEVELS:
        raise DomainError(f"Literal sum needs {int(np.max(p))} levels, above {MAX_SUM_LEVELS}; "
                          f"use total_energy_closed")
    hw = _hbar_omega_at(field_, cfg)
    degeneracy = scales.rho_flux * field_

    filled = np.zeros_like(field_)
    for n in range(int(np.max(p)) if p.size else 0):
        filled = filled + np.where(n < p, (n + 0.5) * hw * degeneracy, 0.0)
    total = filled + partial * hw * (p + 0.5)
    return _shaped(total, b)


def total_energy_closed(b: ArrayLike, cfg: SystemConfig,
                        scales: Optional[DerivedScales] = None) -> ArrayLike:
    """-mu_eff rho (B^2 p(p+1) - (N/rho) B (2p+1))"""
    scales = _resolve(cfg, scales)
    field_ = _field(b)
    p, _ = _state(field_, cfg, scales)
    n_over_rho = cfg.natoms / scales.rho_flux
    energy = -scales.mu_b_eff * scales.rho_flux * (
        field_ ** 2 * p * (p + 1) - n_over_rho * field_ * (2 * p + 1)
    )
    return _shaped(energy, b)


def partial_energy(b: ArrayLike, cfg: SystemConfig,
                   scales: Optional[DerivedScales] = None) -> ArrayLike:
    """Energy of the partly occupied level, -mu_eff rho (pB - N/rho)((p+1)B - N/rho)

    Differs from the total energy by the constant -mu_eff N^2/rho.
    """
    scales = _resolve(cfg, scales)
    field_ = _field(b)
    p, _ = _state(field_, cfg, scales)
    return _shaped(_partial_energy_p(field_, p, float(cfg.natoms), scales), b)


def magnetization(b: ArrayLike, cfg: SystemConfig,
                  scales: Optional[DerivedScales] = None) -> ArrayLike:
    """Effective magnetization -d(eps')/dB = mu_eff rho (2Bp(p+1) - (N/rho)(2p+1))"""
    scales = _resolve(cfg, scales)
    field_ = _field(b)
    p, _ = _state(field_, cfg, scales)
    return _shaped(_magnetization_p(field_, p, float(cfg.natoms), scales), b)


def filled_atoms(b: ArrayLike, cfg: SystemConfig,
                 scales: Optional[DerivedScales] = None) -> ArrayLike:
    """Atoms in the completely occupied levels, pD"""
    scales = _resolve(cfg, scales)
    field_ = _field(b)
    p, _ = _state(field_, cfg, scales)
    return _shaped(p * scales.rho_flux * field_, b)


def partial_energy_maximum(p: int, cfg: SystemConfig,
                           scales: Optional[DerivedScales] = None) -> Tuple[float, float]:
    """Location (1/B) and height of the maximum of eps' with p filled levels"""
    scales = _resolve(cfg, scales)
    natoms = cfg.natoms
    if p < 1:
        raise DomainError(f"Maximum is defined for p >= 1, got {p}")
    inv_b = (scales.rho_flux / natoms) * p * (p + 1) / (p + 0.5)
    value = scales.mu_b_eff * natoms ** 2 / (4.0 * scales.rho_flux * p * (p + 1))
    return inv_b, value


def sweep(inv_b_min: float, inv_b_max: float, steps: int, cfg: SystemConfig,
          scales: Optional[DerivedScales] = None) -> SweepResult:
    """Evaluate every observable on a grid uniform in 1/B, endpoints included"""
    if not (0 < inv_b_min < inv_b_max) or not math.isfinite(inv_b_max):
        raise DomainError(f"Invalid sweep range [{inv_b_min}, {inv_b_max}]")
    if steps < 2:
        raise DomainError(f"Sweep needs at least 2 steps, got {steps}")
    scales = _resolve(cfg, scales)

    inv_b = np.linspace(inv_b_min, inv_b_max, int(steps))
    b = 1.0 / inv_b
    p, partial = _state(b, cfg, scales)
    natoms = float(cfg.natoms)
    result = SweepResult(
        inv_b=inv_b,
        b=b,
        p=p,
        partial=partial,
        filled=p * scales.rho_flux * b,
        energy_total=total_energy_closed(b, cfg, scales),
        energy_partial=_partial_energy_p(b, p, natoms, scales),
        magnetization=_magnetization_p(b, p, natoms, scales),
        natoms=cfg.natoms,
        rho_flux=scales.rho_flux,
        mu_b_eff=scales.mu_b_eff,
    )
    logger.info(f"Sweep of {steps} points over 1/B in [{inv_b_min:.4e}, {inv_b_max:.4e}], "
                f"p from {int(p[0])} to {int(p[-1])}")
    return result


def detect_jumps(result: SweepResult) -> List[float]:
    """Level-opening positions 1/B = p rho/N crossed by the sweep, ascending

    Crossings are located from increments of p between adjacent samples and
    placed at the analytic boundary.
    """
    if len(result) < 2:
        raise DomainError("Jump detection needs at least 2 sweep points")
    period = result.rho_flux / result.natoms
    jumps: List[float] = []
    for i in np.nonzero(np.diff(result.p) > 0)[0]:
        for level in range(int(result.p[i]) + 1, int(result.p[i + 1]) + 1):
            jumps.append(level * period)
    logger.info(f"Detected {len(jumps)} level openings")
    return jumps


def dhva_period(jumps: Sequence[float]) -> PeriodEstimate:
    """Mean spacing of consecutive jumps and the largest deviation from it"""
    if len(jumps) < 2:
        raise InsufficientDataError(f"Period needs at least 2 jumps, got {len(jumps)}")
    spacings = np.diff(np.asarray(jumps, dtype=float))
    period = float(np.mean(spacings))
    return PeriodEstimate(period=period, max_deviation=float(np.max(np.abs(spacings - period))))


def onsager_area(natoms: int, rho_flux: float) -> float:
    """Fermi-circle area from the period, S = 2 pi N/(hbar rho), in m^-2"""
    if natoms < 1:
        raise DomainError(f"natoms must be at least 1, got {natoms}")
    if not rho_flux > 0:
        raise DomainError(f"rho must be positive, got {rho_flux}")
    return 2.0 * math.pi * natoms / (load_constants().hbar * rho_flux)


def jump_records(jumps: Sequence[float], cfg: SystemConfig,
                 scales: Optional[DerivedScales] = None) -> List[JumpRecord]:
    """Both one-sided limits of the observables at every jump"""
    scales = _resolve(cfg, scales)
    natoms = cfg.natoms
    period = scales.rho_flux / natoms
    records = []
    for position in jumps:
        level = int(round(position / period))
        b = natoms / (level * scales.rho_flux)
        degeneracy = natoms / level
        records.append(JumpRecord(
            inv_b=float(position),
            level=level,
            partial_left=degeneracy,
            partial_right=0.0,
            filled_left=(level - 1) * degeneracy,
            filled_right=float(natoms),
            energy_partial_left=float(_partial_energy_p(b, level - 1, natoms, scales)),
            energy_partial_right=float(_partial_energy_p(b, level, natoms, scales)),
            magnetization_left=float(_magnetization_p(b, level - 1, natoms, scales)),
            magnetization_right=float(_magnetization_p(b, level, natoms, scales)),
        ))
    return records


def analyze_oscillations(result: SweepResult, cfg: SystemConfig,
                         scales: Optional[DerivedScales] = None) -> OscillationAnalysis:
    """Jumps, period, jump amplitude and Onsager area for a sweep"""
    scales = _resolve(cfg, scales)
    jumps = detect_jumps(result)
    records = jump_records(jumps, cfg, scales)
    analytic = 2.0 * cfg.natoms * scales.mu_b_eff

    analysis = OscillationAnalysis(
        jump_positions=jumps,
        jump_amplitude=(float(np.mean([r.magnetization_jump for r in records]))
                        if records else analytic),
        jump_amplitude_analytic=analytic,
        fermi_area=onsager_area(cfg.natoms, scales.rho_flux),
        records=records,
    )
    try:
        estimate = dhva_period(jumps)
        analysis.period = estimate.period
        analysis.period_max_deviation = estimate.max_deviation
    except InsufficientDataError as e:
        logger.warning(f"No period estimate: {e}")
    return analysis
