"""
Pytest Configuration and Shared Fixtures
"""

import pytest

from ..core.config import BUNDLED_CONFIG, set_config
from ..core.constants import derive_scales
from ..physics.spectrum import SystemConfig

# 87Rb cloud of the bundled configuration
RB87_SYSTEM = dict(
    mass=1.443e-25,
    mu=4.64e-22,
    area=1.5e-10,
    natoms=10000,
    b_eff=8.55e18,
    sigma=1,
)

REFERENCE_INV_B_RANGE = (1.17e-19, 1.17e-18)


@pytest.fixture
def rb_cfg():
    """System configuration of the bundled run"""
    return SystemConfig(**RB87_SYSTEM)


@pytest.fixture
def scales(rb_cfg):
    return derive_scales(rb_cfg)


@pytest.fixture
def bundled_config_path():
    return BUNDLED_CONFIG


@pytest.fixture
def out_dir(tmp_path):
    """Fresh output directory (not yet created)"""
    return tmp_path / "out"


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch):
    """Keep user environment overrides and the active config out of tests"""
    monkeypatch.delenv("LACDHVA_OUTPUT_DIR", raising=False)
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    yield
    set_config(None)
