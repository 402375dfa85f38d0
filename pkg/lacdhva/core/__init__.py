"""
Core Module - constants, derived scales and error types

Run configuration lives in ``lacdhva.core.config``.
"""

from .constants import DerivedScales, PhysicalConstants, derive_scales, load_constants, use_constants
from .exceptions import (
    ConfigurationError,
    DomainError,
    InsufficientDataError,
    LacDhvaError,
    NumericError,
    OutputError,
    PreconditionError,
    ValidationFailure,
)

__all__ = [
    "DerivedScales", "PhysicalConstants", "derive_scales", "load_constants", "use_constants",
    "ConfigurationError", "DomainError", "InsufficientDataError", "LacDhvaError",
    "NumericError", "OutputError", "PreconditionError", "ValidationFailure",
]
