"""
Unit Tests for Physical Constants and Derived Scales
"""

import math
from dataclasses import FrozenInstanceError, replace

import pytest
from scipy import constants as sp

from ...core.constants import (
    PUBLISHED_MIN_FIELD_TEFF,
    PhysicalConstants,
    derive_scales,
    effective_bohr_magneton,
    flux_density_factor,
    load_constants,
    min_field,
    use_constants,
)
from ...core.exceptions import DomainError

MU_RB = 4.64e-22
MASS_RB = 1.443e-25


class TestPhysicalConstants:
    """CODATA constant set"""

    def test_codata_values(self):
        k = load_constants()
        assert k.hbar == sp.hbar
        assert k.c == 299792458.0
        assert k.h == pytest.approx(2 * math.pi * k.hbar, rel=1e-15)

    def test_frozen(self):
        k = load_constants()
        with pytest.raises(FrozenInstanceError):
            k.hbar = 1.0

    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            PhysicalConstants(hbar=-1.0)

    def test_override_is_scoped(self):
        original = load_constants().hbar
        with use_constants(hbar=2 * original) as k:
            assert k.hbar == 2 * original
            assert k.h == pytest.approx(2 * math.pi * 2 * original)
        assert load_constants().hbar == original


class TestScales:
    """Effective Bohr magneton, degeneracy factor and field threshold"""

    def test_effective_bohr_magneton(self):
        mu_eff = effective_bohr_magneton(MU_RB, MASS_RB)
        assert mu_eff == pytest.approx(1.8865e-48, rel=1e-3)
        # jump amplitude 2*N*mu_eff for 10^4 atoms
        assert 2 * 10000 * mu_eff == pytest.approx(3.76e-44, rel=1e-2)

    def test_sign_of_moment_ignored(self):
        assert effective_bohr_magneton(-MU_RB, MASS_RB) == effective_bohr_magneton(MU_RB, MASS_RB)

    def test_flux_density_factor(self):
        assert flux_density_factor(MU_RB, 1.5e-10) == pytest.approx(1.17e-15, rel=5e-3)

    def test_flux_density_factor_linear_in_area(self):
        one = flux_density_factor(MU_RB, 1.0e-10)
        assert flux_density_factor(MU_RB, 3.0e-10) == pytest.approx(3 * one, rel=1e-15)

    def test_min_field_formula(self):
        value = min_field(MU_RB)
        assert value == pytest.approx(4.085e4, rel=1e-3)
        # the formula and the quoted threshold differ by about three decades
        assert value / PUBLISHED_MIN_FIELD_TEFF == pytest.approx(998.2, rel=1e-2)

    @pytest.mark.parametrize("mu, area", [(MU_RB, 1.5e-10), (-MU_RB, 1.5e-10), (1.0e-23, 4.0e-9)])
    def test_min_field_times_flux_factor(self, mu, area):
        # 2 hbar c^2/|mu| * |mu| A/(c^2 h) = A/pi
        product = min_field(mu) * flux_density_factor(mu, area)
        assert product == pytest.approx(area / math.pi, rel=1e-12)

    @pytest.mark.parametrize("mu, mass", [(0.0, MASS_RB), (MU_RB, 0.0), (MU_RB, -1.0)])
    def test_bohr_magneton_domain(self, mu, mass):
        with pytest.raises(DomainError):
            effective_bohr_magneton(mu, mass)

    def test_flux_domain(self):
        with pytest.raises(DomainError):
            flux_density_factor(MU_RB, 0.0)
        with pytest.raises(DomainError):
            flux_density_factor(0.0, 1.5e-10)
        with pytest.raises(DomainError):
            min_field(0.0)

    def test_override_changes_scales(self, rb_cfg):
        base = derive_scales(rb_cfg)
        with use_constants(hbar=2 * load_constants().hbar):
            doubled = derive_scales(rb_cfg)
        assert doubled.mu_b_eff == pytest.approx(2 * base.mu_b_eff, rel=1e-14)
        assert doubled.rho_flux == pytest.approx(0.5 * base.rho_flux, rel=1e-14)


class TestDerivedScales:
    """Bundled per-configuration scales"""

    def test_reference_values(self, scales):
        assert scales.a_ac == pytest.approx(4.888e-8, rel=1e-3)
        assert scales.omega_ac == pytest.approx(3.059e5, rel=1e-3)
        assert scales.degeneracy == pytest.approx(1.0e4, rel=5e-3)

    def test_level_spacing_identity(self, scales):
        # hbar|omega| = 2 mu_eff B
        assert scales.hbar_omega == pytest.approx(2 * scales.mu_b_eff * scales.b_eff, rel=1e-12)

    def test_sigma_sets_sign(self, rb_cfg):
        flipped = derive_scales(replace(rb_cfg, sigma=-1))
        assert flipped.omega_ac == -derive_scales(rb_cfg).omega_ac
        assert flipped.hbar_omega == derive_scales(rb_cfg).hbar_omega
