"""
Physical Constants and Derived Scales

All arithmetic is SI. The synthetic field is carried in the effective unit
T_eff = N/(C*m) (rho0/epsilon0), so every scale below takes a field value in
T_eff and a magnetic moment in J/T.

The constant set is frozen. ``use_constants`` swaps it temporarily and exists
for tests that probe how results scale with a constant.
"""

import logging
import math
from contextlib import contextmanager
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Iterator, Optional

from scipy import constants as sp

from .exceptions import DomainError

if TYPE_CHECKING:
    from ..physics.spectrum import SystemConfig

logger = logging.getLogger(__name__)

# Threshold quoted in the literature for the 87Rb n=51 cloud; the formula
# 2*hbar*c^2/|mu| gives ~4.09e4 T_eff for the same moment.
PUBLISHED_MIN_FIELD_TEFF = 40.93


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants in SI units"""

    hbar: float = sp.hbar  # J*s
    h: float = sp.h  # J*s
    c: float = sp.c  # m/s
    epsilon0: float = sp.epsilon_0  # F/m
    mu_bohr: float = sp.physical_constants["Bohr magneton"][0]  # J/T

    def __post_init__(self):
        for name in ("hbar", "h", "c", "epsilon0", "mu_bohr"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"Physical constant {name} must be positive, got {value}")


@dataclass(frozen=True)
class DerivedScales:
    """Per-system scales for one configuration at its configured field"""

    mu_b_eff: float  # J*s/T, effective Bohr magneton hbar|mu|/(2Mc^2)
    rho_flux: float  # degeneracy per T_eff, |mu|A/(c^2 h)
    a_ac: float  # m, magnetic length sqrt(hbar/(M|omega|))
    hbar_omega: float  # J, level spacing hbar|omega_AC|
    omega_ac: float  # rad/s, signed cyclotron frequency
    b_eff: float  # T_eff, field the scales were evaluated at

    @property
    def degeneracy(self) -> float:
        """Degeneracy D = rho*B at the configured field"""
        return self.rho_flux * self.b_eff


# Active constant set
_constants: Optional[PhysicalConstants] = None


def load_constants() -> PhysicalConstants:
    """Return the active constant set"""
    global _constants
    if _constants is None:
        _constants = PhysicalConstants()
    return _constants


@contextmanager
def use_constants(**overrides: float) -> Iterator[PhysicalConstants]:
    """Temporarily replace selected constants (test hook)

    ``h`` follows ``hbar`` unless given explicitly, keeping h = 2*pi*hbar.
    """
    global _constants
    previous = load_constants()
    if "hbar" in overrides and "h" not in overrides:
        overrides["h"] = 2.0 * math.pi * overrides["hbar"]
    _constants = replace(previous, **overrides)
    logger.debug(f"Constants overridden: {sorted(overrides)}")
    try:
        yield _constants
    finally:
        _constants = previous


def effective_bohr_magneton(mu: float, mass: float) -> float:
    """Effective Bohr magneton hbar*|mu|/(2*M*c^2) in J*s/T"""
    if not mass > 0:
        raise DomainError(f"Mass must be positive, got {mass}")
    if mu == 0:
        raise DomainError("Magnetic moment must be non-zero")
    k = load_constants()
    return k.hbar * abs(mu) / (2.0 * mass * k.c ** 2)


def flux_density_factor(mu: float, area: float) -> float:
    """Degeneracy per unit synthetic field, rho = |mu|*A/(c^2*h)"""
    if not area > 0:
        raise DomainError(f"Cloud area must be positive, got {area}")
    if mu == 0:
        raise DomainError("Magnetic moment must be non-zero")
    k = load_constants()
    return abs(mu) * area / (k.c ** 2 * k.h)


def min_field(mu: float) -> float:
    """Field 2*hbar*c^2/|mu| below which the analytic LAC regime is invalid"""
    if mu == 0:
        raise DomainError("Magnetic moment must be non-zero")
    k = load_constants()
    return 2.0 * k.hbar * k.c ** 2 / abs(mu)


def derive_scales(cfg: "SystemConfig") -> DerivedScales:
    """Bundle the derived scales for a configuration"""
    k = load_constants()
    mu_b_eff = effective_bohr_magneton(cfg.mu, cfg.mass)
    rho_flux = flux_density_factor(cfg.mu, cfg.area)
    abs_omega = abs(cfg.mu) * cfg.b_eff / (cfg.mass * k.c ** 2)
    a_ac = math.sqrt(k.hbar / (cfg.mass * abs_omega))
    return DerivedScales(
        mu_b_eff=mu_b_eff,
        rho_flux=rho_flux,
        a_ac=a_ac,
        hbar_omega=k.hbar * abs_omega,
        omega_ac=cfg.sigma * abs_omega,
        b_eff=cfg.b_eff,
    )
