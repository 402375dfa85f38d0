"""
LAC physics: special functions, spectrum, finite-difference oracle and
zero-temperature dHvA thermodynamics
"""

from .dhva import (
    FillingState,
    JumpRecord,
    OscillationAnalysis,
    PeriodEstimate,
    SweepPoint,
    SweepResult,
    analyze_oscillations,
    detect_jumps,
    dhva_period,
    fill_levels,
    filled_atoms,
    jump_records,
    magnetization,
    onsager_area,
    partial_energy,
    partial_energy_maximum,
    sweep,
    total_energy_closed,
    total_energy_sum,
)
from .fd_solver import (
    ConvergenceStudy,
    FDResult,
    RadialGrid,
    convergence_study,
    reference_grid,
    solve_radial_fd,
)
from .specfun import integrate_radial, kummer_poly, radial_norm
from .spectrum import (
    LandauLevel,
    QuantumNumbers,
    SystemConfig,
    collapse_quantum_number,
    cyclotron_frequency,
    degeneracy,
    energy_eigenvalue,
    radial_wavefunction,
    validate_config,
)

__all__ = [
    "FillingState", "JumpRecord", "OscillationAnalysis", "PeriodEstimate",
    "SweepPoint", "SweepResult", "analyze_oscillations", "detect_jumps",
    "dhva_period", "fill_levels", "filled_atoms", "jump_records", "magnetization",
    "onsager_area", "partial_energy", "partial_energy_maximum", "sweep",
    "total_energy_closed", "total_energy_sum",
    "ConvergenceStudy", "FDResult", "RadialGrid", "convergence_study",
    "reference_grid", "solve_radial_fd",
    "integrate_radial", "kummer_poly", "radial_norm",
    "LandauLevel", "QuantumNumbers", "SystemConfig", "collapse_quantum_number",
    "cyclotron_frequency", "degeneracy", "energy_eigenvalue",
    "radial_wavefunction", "validate_config",
]
