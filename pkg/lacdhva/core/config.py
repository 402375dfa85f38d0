"""
Run Configuration Management

Config files are flat ``key = value`` text with dotted keys::

    atom.mass_kg      = 1.443e-25
    atom.mu_J_per_T   = 4.64e-22
    cloud.area_m2     = 1.5e-10
    cloud.natoms      = 10000
    field.b_eff_Teff  = 8.55e18      # or field.rho0_C_per_m3
    field.sigma       = 1
    sweep.inv_b_min   = 1.17e-19
    sweep.inv_b_max   = 1.17e-18
    sweep.steps       = 1000
    output.dir        = out

Environment overrides (LACDHVA_OUTPUT_DIR, LOG_LEVEL) are applied after the
file, and may come from a .env file.
"""

import logging
import math
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from pydantic import BaseModel, Field, ValidationError, root_validator, validator

from .exceptions import ConfigurationError
from ..physics.spectrum import SystemConfig

logger = logging.getLogger(__name__)

BUNDLED_CONFIG = Path(__file__).resolve().parent.parent / "data" / "paper.cfg"

KNOWN_KEYS = {
    "atom.mass_kg", "atom.mu_J_per_T",
    "cloud.area_m2", "cloud.natoms",
    "field.b_eff_Teff", "field.rho0_C_per_m3", "field.sigma",
    "sweep.inv_b_min", "sweep.inv_b_max", "sweep.steps",
    "output.dir",
}


def _integral(value: Any) -> Any:
    """Accept integer-valued numbers written as floats, e.g. 1e4"""
    if isinstance(value, str):
        try:
            number = float(value)
        except ValueError:
            return value
        if math.isfinite(number) and number.is_integer():
            return int(number)
    return value


class AtomSettings(BaseModel):
    """Atom species"""
    mass_kg: float = Field(..., gt=0)
    mu_J_per_T: float

    @validator("mu_J_per_T")
    def _nonzero_moment(cls, v):
        if v == 0 or not math.isfinite(v):
            raise ValueError("magnetic moment must be finite and non-zero")
        return v


class CloudSettings(BaseModel):
    """Atomic cloud"""
    area_m2: float = Field(..., gt=0)
    natoms: int = Field(..., ge=1)

    _natoms_integral = validator("natoms", pre=True, allow_reuse=True)(_integral)


class FieldSettings(BaseModel):
    """Synthetic field, given directly or through the charge density"""
    b_eff_Teff: Optional[float] = Field(None, gt=0)
    rho0_C_per_m3: Optional[float] = None
    sigma: int = 1

    _sigma_integral = validator("sigma", pre=True, allow_reuse=True)(_integral)

    @validator("sigma")
    def _unit_sign(cls, v):
        if v not in (-1, 1):
            raise ValueError("sigma must be +1 or -1")
        return v

    @root_validator(skip_on_failure=True)
    def _one_source(cls, values):
        b_eff, rho0 = values.get("b_eff_Teff"), values.get("rho0_C_per_m3")
        if (b_eff is None) == (rho0 is None):
            raise ValueError("give exactly one of field.b_eff_Teff and field.rho0_C_per_m3")
        if rho0 is not None and rho0 == 0:
            raise ValueError("charge density must be non-zero")
        return values


class SweepSettings(BaseModel):
    """Inverse-field sweep"""
    inv_b_min: float = Field(..., gt=0)
    inv_b_max: float = Field(..., gt=0)
    steps: int = Field(1000, ge=2)

    _steps_integral = validator("steps", pre=True, allow_reuse=True)(_integral)

    @validator("inv_b_max")
    def _ordered(cls, v, values):
        low = values.get("inv_b_min")
        if low is not None and not v > low:
            raise ValueError("sweep.inv_b_max must exceed sweep.inv_b_min")
        return v


class OutputSettings(BaseModel):
    directory: str = Field("out", alias="dir")

    class Config:
        allow_population_by_field_name = True


class RunConfig(BaseModel):
    """Complete run configuration"""
    atom: AtomSettings
    cloud: CloudSettings
    efield: FieldSettings = Field(..., alias="field")
    sweep: SweepSettings
    output: OutputSettings = Field(default_factory=OutputSettings)
    log_level: str = "INFO"

    class Config:
        allow_population_by_field_name = True

    @classmethod
    def from_text(cls, text: str, source: str = "<string>") -> "RunConfig":
        """Parse and validate ``key = value`` text"""
        return cls._from_flat(parse_key_values(text, source), source)

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"Cannot read config {path}: {e}") from e
        return cls.from_text(text, str(path))

    @classmethod
    def _from_flat(cls, flat: Dict[str, str], source: str) -> "RunConfig":
        nested: Dict[str, Dict[str, str]] = {}
        for key, value in flat.items():
            section, name = key.split(".", 1)
            nested.setdefault(section, {})[name] = value
        try:
            config = cls.parse_obj(nested)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
            )
            raise ConfigurationError(f"Invalid config {source}: {problems}") from e
        logger.info(f"Loaded configuration from {source}")
        return config

    def with_env(self, env: Optional[Mapping[str, str]] = None) -> "RunConfig":
        """Copy with environment overrides applied"""
        env = os.environ if env is None else env
        updated = self.copy(deep=True)
        if out_dir := env.get("LACDHVA_OUTPUT_DIR"):
            updated.output.directory = out_dir
        updated.log_level = env.get("LOG_LEVEL", updated.log_level).upper()
        return updated

    def to_system_config(self) -> SystemConfig:
        if self.efield.rho0_C_per_m3 is not None:
            return SystemConfig.from_charge_density(
                mass=self.atom.mass_kg,
                mu=self.atom.mu_J_per_T,
                area=self.cloud.area_m2,
                natoms=self.cloud.natoms,
                rho0=self.efield.rho0_C_per_m3,
            )
        return SystemConfig(
            mass=self.atom.mass_kg,
            mu=self.atom.mu_J_per_T,
            area=self.cloud.area_m2,
            natoms=self.cloud.natoms,
            b_eff=self.efield.b_eff_Teff,
            sigma=self.efield.sigma,
        )

    def to_dict(self) -> Dict[str, Any]:
        """Plain dictionary using the file's key names"""
        return self.dict(by_alias=True)


def parse_key_values(text: str, source: str = "<string>") -> Dict[str, str]:
    """Split config text into a dotted-key mapping

    Blank lines and ``#`` comments are ignored; unknown or repeated keys are
    errors.
    """
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigurationError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigurationError(f"{source}:{lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigurationError(f"{source}:{lineno}: empty value for {key!r}")
        values[key] = value
    return values


# Active configuration for the CLI session
_config: Optional[RunConfig] = None


def get_config() -> RunConfig:
    """Active configuration, loading the bundled one on first use"""
    global _config
    if _config is None:
        _config = RunConfig.from_file(BUNDLED_CONFIG).with_env()
    return _config


def set_config(config: RunConfig):
    """Set the active configuration"""
    global _config
    _config = config
