"""
Validation Report Rendering
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

from jinja2 import Environment, StrictUndefined

from ..physics.fd_solver import ConvergenceStudy, OracleReport
from ..physics.spectrum import ValidationReport

logger = logging.getLogger(__name__)

ORACLE_TOLERANCE = 1e-6
EIGENVECTOR_TOLERANCE = 1e-4
ORDER_RANGE = (1.8, 2.2)

_env = Environment(undefined=StrictUndefined, trim_blocks=True, lstrip_blocks=True)
_env.filters["sci"] = lambda value, digits=4: f"{value:.{digits}e}"

REPORT_TEMPLATE = _env.from_string("""\
LAC configuration checks
{% for check in config.checks %}
  [{{ check.status | upper }}] {{ check.name }}: {{ check.detail }}
{% endfor %}

Field threshold 2*hbar*c^2/|mu|
  formula value       {{ config.min_field | sci }} T_eff
  published value     {{ printed_min_field | sci }} T_eff
  formula/published   {{ (config.min_field / printed_min_field) | sci(3) }}  (the two disagree; formula used)
  configured b_eff    {{ b_eff | sci }} T_eff  ({{ config.field_ratio | sci(3) }} x threshold)

Degeneracy D = {{ config.d_coefficient | sci(3) }} * B_AC

Finite-difference oracle (hbar|omega| = {{ oracle.hbar_omega | sci }} J)
  sigma   m  level     FD/hbar_w  exact/hbar_w       error
{% for row in oracle.rows %}
  {{ "%5d" | format(row.sigma) }} {{ "%3d" | format(row.m) }} {{ "%6d" | format(row.level) }} {{ "%13.8f" | format(row.fd_energy / oracle.hbar_omega) }} {{ "%13.8f" | format(row.analytic_energy / oracle.hbar_omega) }} {{ row.error | sci(2) }}
{% endfor %}
  max error {{ oracle.max_error | sci(2) }} (tolerance {{ oracle_tolerance | sci(0) }})
  ground-state eigenvector L2 discrepancy max {{ oracle.max_discrepancy | sci(2) }} (tolerance {{ eigenvector_tolerance | sci(0) }})

Convergence (m=0, sigma=-1, ground state)
{% for h, err in convergence.rows() %}
  h = {{ h | sci }} m   error = {{ err | sci }}
{% endfor %}
  observed order {{ "%.3f" | format(convergence.order) }}

Result: {{ "PASS" if passed else "FAIL" }}
""")


@dataclass
class ValidationSummary:
    config: ValidationReport
    oracle: OracleReport
    convergence: ConvergenceStudy
    b_eff: float
    printed_min_field: float
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def evaluate(summary: ValidationSummary) -> ValidationSummary:
    """Collect the hard failures"""
    failures = [f"{c.name}: {c.detail}" for c in summary.config.checks if c.status == "fail"]
    if summary.oracle.max_error > ORACLE_TOLERANCE:
        failures.append(f"FD eigenvalue error {summary.oracle.max_error:.3e} > {ORACLE_TOLERANCE:g}")
    if summary.oracle.max_discrepancy > EIGENVECTOR_TOLERANCE:
        failures.append(f"FD eigenvector discrepancy {summary.oracle.max_discrepancy:.3e} "
                        f"> {EIGENVECTOR_TOLERANCE:g}")
    low, high = ORDER_RANGE
    if not low <= summary.convergence.order <= high:
        failures.append(f"convergence order {summary.convergence.order:.3f} outside [{low}, {high}]")
    summary.failures = failures
    for failure in failures:
        logger.error(f"Validation failure: {failure}")
    return summary


def render_text(summary: ValidationSummary) -> str:
    return REPORT_TEMPLATE.render(
        config=summary.config,
        oracle=summary.oracle,
        convergence=summary.convergence,
        b_eff=summary.b_eff,
        printed_min_field=summary.printed_min_field,
        oracle_tolerance=ORACLE_TOLERANCE,
        eigenvector_tolerance=EIGENVECTOR_TOLERANCE,
        passed=summary.passed,
    )


def render_json(summary: ValidationSummary) -> Dict[str, Any]:
    return {
        "passed": summary.passed,
        "failures": summary.failures,
        "checks": [
            {"name": c.name, "status": c.status, "detail": c.detail}
            for c in summary.config.checks
        ],
        "d_coefficient": summary.config.d_coefficient,
        "min_field_formula": summary.config.min_field,
        "min_field_paper_printed": summary.printed_min_field,
        "min_field_discrepancy_factor": summary.config.min_field / summary.printed_min_field,
        "b_eff": summary.b_eff,
        "fd_oracle": [
            {"sigma": r.sigma, "m": r.m, "level": r.level, "fd_energy": r.fd_energy,
             "analytic_energy": r.analytic_energy, "error": r.error}
            for r in summary.oracle.rows
        ],
        "fd_ground_state_discrepancy": [
            {"m": m, "sigma": sigma, "l2": d} for m, sigma, d in summary.oracle.discrepancies
        ],
        "convergence": {
            "spacings": summary.convergence.spacings,
            "errors": summary.convergence.errors,
            "order": summary.convergence.order,
        },
    }
