"""
Error hierarchy for the LAC / dHvA toolkit

Library code raises these; only the CLI layer catches them and converts
them to process exit codes via ``exit_code``.
"""

from typing import Any, Dict, Optional


class LacDhvaError(Exception):
    """Base class for every error raised by the package"""

    exit_code: int = 1


class DomainError(LacDhvaError, ValueError):
    """Argument outside the mathematical domain of an operation"""

    exit_code = 2


class PreconditionError(DomainError):
    """Inputs are valid numbers but violate an operation's precondition"""


class NumericError(LacDhvaError, ArithmeticError):
    """Non-finite intermediate values or solver non-convergence"""

    exit_code = 1

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InsufficientDataError(LacDhvaError):
    """Not enough samples to form an estimate"""

    exit_code = 1


class ConfigurationError(LacDhvaError):
    """Unparseable or invalid run configuration"""

    exit_code = 2


class ValidationFailure(LacDhvaError):
    """A hard physical validation check failed"""

    exit_code = 1


class OutputError(LacDhvaError, OSError):
    """Writing an artifact failed"""

    exit_code = 3
