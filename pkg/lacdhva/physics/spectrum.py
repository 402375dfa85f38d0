"""
LAC Spectrum - Landau-Aharonov-Casher levels of a 2D dipole gas

A magnetic dipole aligned with z in the radial field E = rho0 r/(2 eps0) feels
the uniform synthetic field B_AC = rho0/eps0. This module holds the system
configuration, the cyclotron frequency, the (n_xi, m, sigma) eigenvalues and
eigenfunctions, the collapsed level index and the level degeneracy.

Sign bookkeeping: ``b_eff`` stores |rho0|/eps0 and ``sigma`` stores
sign(mu*rho0), so omega_AC = sigma*|omega_AC|.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..core.constants import derive_scales, load_constants, min_field
from ..core.exceptions import DomainError
from .specfun import ArrayLike, radial_shape

logger = logging.getLogger(__name__)

# Condition (iv) passes once the field exceeds the analytic threshold by this factor
FIELD_MARGIN = 100.0


@dataclass(frozen=True)
class SystemConfig:
    """Atom species, cloud and synthetic field"""

    mass: float  # kg
    mu: float  # J/T, signed moment along z
    area: float  # m^2
    natoms: int
    b_eff: float  # T_eff, |rho0|/eps0
    sigma: int = 1  # sign(mu*rho0)

    def __post_init__(self):
        problems = []
        if not (self.mass > 0 and math.isfinite(self.mass)):
            problems.append(f"mass must be positive (got {self.mass})")
        if not (self.area > 0 and math.isfinite(self.area)):
            problems.append(f"area must be positive (got {self.area})")
        if int(self.natoms) != self.natoms or self.natoms < 1:
            problems.append(f"natoms must be an integer of at least 1 (got {self.natoms})")
        if not (self.b_eff > 0 and math.isfinite(self.b_eff)):
            problems.append(f"b_eff must be positive (got {self.b_eff})")
        if self.mu == 0 or not math.isfinite(self.mu):
            problems.append(f"mu must be finite and non-zero (got {self.mu})")
        if self.sigma not in (-1, 1):
            problems.append(f"sigma must be +1 or -1 (got {self.sigma})")
        if problems:
            raise DomainError("Invalid system configuration: " + "; ".join(problems))

    @classmethod
    def from_charge_density(cls, mass: float, mu: float, area: float, natoms: int,
                            rho0: float) -> "SystemConfig":
        """Build the configuration from the uniform charge density rho0 (C/m^3)"""
        if rho0 == 0 or mu == 0:
            raise DomainError("Charge density and magnetic moment must be non-zero")
        k = load_constants()
        return cls(
            mass=mass,
            mu=mu,
            area=area,
            natoms=natoms,
            b_eff=abs(rho0) / k.epsilon0,
            sigma=1 if mu * rho0 > 0 else -1,
        )

    @property
    def charge_sign(self) -> int:
        """Sign of rho0 implied by sigma and the sign of mu"""
        return self.sigma * (1 if self.mu > 0 else -1)


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial, azimuthal and revolution-direction labels"""

    n_xi: int
    m: int
    sigma: int

    def __post_init__(self):
        if int(self.n_xi) != self.n_xi or self.n_xi < 0:
            raise DomainError(f"n_xi must be a non-negative integer, got {self.n_xi}")
        if int(self.m) != self.m:
            raise DomainError(f"m must be an integer, got {self.m}")
        if self.sigma not in (-1, 1):
            raise DomainError(f"sigma must be +1 or -1, got {self.sigma}")


@dataclass(frozen=True)
class LandauLevel:
    """Collapsed LAC level"""

    n: int
    energy: float  # J
    degeneracy: float


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    status: str  # pass | warn | fail
    detail: str


@dataclass
class ValidationReport:
    """Outcome of the configuration checks"""

    checks: List[ConditionCheck] = field(default_factory=list)
    min_field: float = 0.0
    field_ratio: float = 0.0
    d_coefficient: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)

    @property
    def warnings(self) -> List[ConditionCheck]:
        return [check for check in self.checks if check.status == "warn"]


def cyclotron_frequency(cfg: SystemConfig) -> float:
    """Signed omega_AC = sigma*|mu|*B/(M c^2) in rad/s"""
    k = load_constants()
    return cfg.sigma * abs(cfg.mu) * cfg.b_eff / (cfg.mass * k.c ** 2)


def level_spacing(cfg: SystemConfig) -> float:
    """Spacing hbar*|omega_AC| between levels of one sigma branch"""
    return load_constants().hbar * abs(cyclotron_frequency(cfg))


def electric_field(r: ArrayLike, rho0: float) -> ArrayLike:
    """Radial field rho0*r/(2*eps0) of the uniformly charged cylinder, V/m"""
    return rho0 * np.asarray(r, dtype=float) / (2.0 * load_constants().epsilon0)


def energy_eigenvalue(q: QuantumNumbers, hbar_omega: float) -> float:
    """E = hbar|omega| (n_xi + |m|/2 + sigma m/2 + sigma/2 + 1/2)"""
    if not hbar_omega > 0:
        raise DomainError(f"hbar_omega must be positive, got {hbar_omega}")
    twice = 2 * q.n_xi + abs(q.m) + q.sigma * q.m + q.sigma + 1
    return hbar_omega * (twice / 2.0)


def collapse_quantum_number(q: QuantumNumbers) -> int:
    """n = n_xi + (|m| + sigma*m)/2"""
    return q.n_xi + (abs(q.m) + q.sigma * q.m) // 2


def collapsed_energy(n: int, sigma: int, hbar_omega: float) -> float:
    """Standard-form spectrum hbar|omega| (n + (1+sigma)/2)"""
    if n < 0:
        raise DomainError(f"Level index must be non-negative, got {n}")
    return hbar_omega * (n + (1 + sigma) // 2)


def degeneracy(rho_flux: float, b_eff: float) -> float:
    """States per level, D = rho*B (kept real-valued)"""
    if not (rho_flux > 0 and b_eff > 0):
        raise DomainError("Degeneracy needs positive rho and field")
    return rho_flux * b_eff


def landau_level(n: int, cfg: SystemConfig) -> LandauLevel:
    scales = derive_scales(cfg)
    return LandauLevel(
        n=n,
        energy=collapsed_energy(n, cfg.sigma, scales.hbar_omega),
        degeneracy=degeneracy(scales.rho_flux, cfg.b_eff),
    )


def radial_wavefunction(q: QuantumNumbers, r: ArrayLike, a_ac: float) -> ArrayLike:
    """Normalized R_{n_xi,m}(r) in 1/m

    R = c e^{-r^2/(4a^2)} r^{|m|} F(-n_xi, |m|+1, r^2/(2a^2)) with c fixed so
    that the integral of R^2 r dr is one.
    """
    if not a_ac > 0:
        raise DomainError(f"a_ac must be positive, got {a_ac}")
    s = np.asarray(r, dtype=float) / a_ac
    values = radial_shape(q.n_xi, abs(q.m), s)
    return values / a_ac


def enumerate_states(n_max: int, m_max: int) -> List[QuantumNumbers]:
    """All (n_xi, m, sigma) with n_xi <= n_max, |m| <= m_max

    Ordered by sigma, then n_xi, then m.
    """
    if n_max < 0 or m_max < 0:
        raise DomainError("n_max and m_max must be non-negative")
    return [
        QuantumNumbers(n_xi=n_xi, m=m, sigma=sigma)
        for sigma in (-1, 1)
        for n_xi in range(n_max + 1)
        for m in range(-m_max, m_max + 1)
    ]


def validate_config(cfg: SystemConfig) -> ValidationReport:
    """Check the field-dipole configuration

    Invalid basic fields never get this far: SystemConfig rejects them with
    DomainError on construction. The four conditions are reported as
    pass/warn: (i)-(iii) hold by construction of the cylindrical field with
    the dipole on z; (iv) warns unless b_eff >= 100*min_field.
    """
    threshold = min_field(cfg.mu)
    ratio = cfg.b_eff / threshold
    scales = derive_scales(cfg)

    checks = [
        ConditionCheck("dipole_alignment", "pass",
                       "n = z: no torque on the dipole in a radial field"),
        ConditionCheck("electrostatics", "pass",
                       "static field with zero curl"),
        ConditionCheck("uniform_field", "pass",
                       "B_AC = rho0/eps0 is uniform for constant rho0"),
    ]
    if ratio >= FIELD_MARGIN:
        checks.append(ConditionCheck("field_strength", "pass",
                                     f"b_eff/min_field = {ratio:.3e}"))
    else:
        logger.warning(f"b_eff = {cfg.b_eff:.3e} T_eff is within {FIELD_MARGIN:g}x of "
                       f"min_field = {threshold:.3e} T_eff")
        checks.append(ConditionCheck("field_strength", "warn",
                                     f"b_eff/min_field = {ratio:.3e} < {FIELD_MARGIN:g}"))

    return ValidationReport(
        checks=checks,
        min_field=threshold,
        field_ratio=ratio,
        d_coefficient=scales.rho_flux,
    )
