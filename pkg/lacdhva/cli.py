"""
Command-line front end

    lacdhva <validate|spectrum|sweep> --config <path> [--out <dir>]

Exit codes: 0 success, 1 validation failure, 2 config error, 3 I/O error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from dotenv import load_dotenv

from . import __version__
from .core.config import BUNDLED_CONFIG, RunConfig, get_config, set_config
from .core.constants import PUBLISHED_MIN_FIELD_TEFF, derive_scales, min_field
from .core.exceptions import LacDhvaError, OutputError, ValidationFailure
from .output.datasets import (
    analysis_payload,
    build_figure_datasets,
    write_csv,
    write_figures,
    write_json,
    write_manifest,
)
from .output.report import ValidationSummary, evaluate, render_json, render_text
from .physics.dhva import analyze_oscillations, sweep
from .physics.fd_solver import convergence_study, default_convergence_grids, run_oracle
from .physics.spectrum import (
    collapse_quantum_number,
    energy_eigenvalue,
    enumerate_states,
    validate_config,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

SPECTRUM_COLUMNS = ("sigma", "n_xi", "m", "collapsed_n", "energy_J", "energy_hbar_omega")


def cmd_validate(config: RunConfig, out_dir: Optional[Path] = None) -> None:
    """Configuration checks, field threshold and the FD oracle

    The report is printed (and written) first; a failed hard check then
    raises ValidationFailure.
    """
    cfg = config.to_system_config()
    config_report = validate_config(cfg)
    oracle = run_oracle(cfg)
    convergence = convergence_study(0, -1, cfg, default_convergence_grids(cfg))

    summary = evaluate(ValidationSummary(
        config=config_report,
        oracle=oracle,
        convergence=convergence,
        b_eff=cfg.b_eff,
        printed_min_field=PUBLISHED_MIN_FIELD_TEFF,
    ))
    sys.stdout.write(render_text(summary))
    if out_dir is not None:
        write_json(out_dir / "validation.json", render_json(summary))
    if not summary.passed:
        raise ValidationFailure("; ".join(summary.failures))


def cmd_spectrum(config: RunConfig, out_dir: Path, n_max: int = 3, m_max: int = 3) -> Path:
    """One row per (n_xi, m, sigma), ordered by sigma, n_xi, m"""
    cfg = config.to_system_config()
    hbar_omega = derive_scales(cfg).hbar_omega
    rows = []
    for q in enumerate_states(n_max, m_max):
        energy = energy_eigenvalue(q, hbar_omega)
        rows.append((q.sigma, q.n_xi, q.m, collapse_quantum_number(q),
                     energy, energy_eigenvalue(q, 1.0)))
    return write_csv(out_dir / "spectrum.csv", SPECTRUM_COLUMNS, rows)


def cmd_sweep(config: RunConfig, out_dir: Path) -> Dict[str, Path]:
    """Figure datasets plus the oscillation analysis"""
    cfg = config.to_system_config()
    scales = derive_scales(cfg)
    result = sweep(config.sweep.inv_b_min, config.sweep.inv_b_max, config.sweep.steps, cfg, scales)
    analysis = analyze_oscillations(result, cfg, scales)

    paths = write_figures(build_figure_datasets(result, analysis), out_dir)
    paths.append(write_json(
        out_dir / "analysis.json",
        analysis_payload(analysis, scales.rho_flux, min_field(cfg.mu), PUBLISHED_MIN_FIELD_TEFF),
    ))
    if analysis.period is not None:
        logger.info(f"dHvA period {analysis.period:.6e} 1/T_eff over {len(analysis.jump_positions)} jumps")
    return {path.stem: path for path in paths}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lacdhva",
        description="Landau-Aharonov-Casher levels and de Haas-van Alphen oscillations",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None,
                        help=f"key=value config file (default: {BUNDLED_CONFIG.name})")
    common.add_argument("--out", type=Path, default=None, help="Output directory")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")

    sub.add_parser("validate", parents=[common], help="Check the configuration and run the FD oracle")
    spectrum = sub.add_parser("spectrum", parents=[common], help="Tabulate LAC eigenvalues")
    spectrum.add_argument("--n-max", type=int, default=3)
    spectrum.add_argument("--m-max", type=int, default=3)
    sub.add_parser("sweep", parents=[common], help="Inverse-field sweep and dHvA analysis")
    return parser


def _configure_logging(level: str, debug: bool):
    logging.basicConfig(
        level=logging.DEBUG if debug else getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)

    try:
        config = RunConfig.from_file(args.config or BUNDLED_CONFIG).with_env()
    except LacDhvaError as e:
        _configure_logging("INFO", args.debug)
        logger.error(f"{e}")
        return e.exit_code
    _configure_logging(config.log_level, args.debug)
    set_config(config)

    out_dir = args.out or Path(get_config().output.directory)
    try:
        if args.command == "validate":
            cmd_validate(config, args.out)
        elif args.command == "spectrum":
            cmd_spectrum(config, out_dir, args.n_max, args.m_max)
        elif args.command == "sweep":
            paths = cmd_sweep(config, out_dir)
            write_manifest(out_dir, "sweep", config.to_dict(), list(paths.values()), __version__)
        return 0
    except LacDhvaError as e:
        logger.error(f"{args.command} failed: {e}")
        return e.exit_code
    except OSError as e:
        logger.error(f"{args.command} failed: {OutputError(str(e))}")
        return OutputError.exit_code


def run():
    sys.exit(main())
