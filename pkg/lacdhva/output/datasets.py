"""
Figure Datasets and Artifact Emission

Data files are byte-stable: numbers are written with 12 significant digits
in lowercase scientific notation and nothing time-dependent goes into them.
The run manifest is the only file that carries a timestamp.
"""

import csv
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..core.exceptions import OutputError
from ..physics.dhva import OscillationAnalysis, SweepResult

logger = logging.getLogger(__name__)

INV_B_COLUMN = "inv_b_Teff_inv"

FIGURE_SCHEMAS: Dict[str, Tuple[str, str]] = {
    "figure1": (INV_B_COLUMN, "partial_atoms"),
    "figure1b": (INV_B_COLUMN, "filled_atoms"),
    "figure2": (INV_B_COLUMN, "energy_partial_J"),
    "figure3": (INV_B_COLUMN, "magnetization_JsT"),
}

# Row precedence at equal 1/B: left limit, sampled point, right limit
_LEFT, _GRID, _RIGHT = 0, 1, 2


@dataclass
class FigureDataset:
    name: str
    columns: Tuple[str, ...]
    rows: List[Tuple[float, ...]] = field(default_factory=list)


def format_number(value: float) -> str:
    """12 significant digits, lowercase exponent, no negative zero"""
    return f"{float(value) + 0.0:.11e}"


def round_sig(value: float) -> float:
    return float(format_number(value))


def build_figure_datasets(result: SweepResult,
                          analysis: OscillationAnalysis) -> Dict[str, FigureDataset]:
    """Sweep rows merged with both one-sided rows at every jump"""
    keyed: List[Tuple[float, int, Tuple[float, float, float, float]]] = []
    for i in range(len(result)):
        keyed.append((
            float(result.inv_b[i]), _GRID,
            (float(result.partial[i]), float(result.filled[i]),
             float(result.energy_partial[i]), float(result.magnetization[i])),
        ))

    sampled = np.asarray(result.inv_b)
    for record in analysis.records:
        keyed.append((record.inv_b, _LEFT,
                      (record.partial_left, record.filled_left,
                       record.energy_partial_left, record.magnetization_left)))
        # A sample sitting on the boundary already holds the right limit
        if not np.any(np.isclose(sampled, record.inv_b, rtol=1e-12, atol=0.0)):
            keyed.append((record.inv_b, _RIGHT,
                          (record.partial_right, record.filled_right,
                           record.energy_partial_right, record.magnetization_right)))
    keyed.sort(key=lambda row: (row[0], row[1]))

    datasets = {}
    for column, name in enumerate(FIGURE_SCHEMAS):
        datasets[name] = FigureDataset(
            name=name,
            columns=FIGURE_SCHEMAS[name],
            rows=[(inv_b, values[column]) for inv_b, _, values in keyed],
        )
    return datasets


def write_csv(path: Path, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> Path:
    """Write a CSV with formatted floats; ints and strings pass through"""
    def cell(value):
        if isinstance(value, (float, np.floating)):
            return format_number(value)
        return str(value)

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([cell(v) for v in row])
    except OSError as e:
        raise OutputError(f"Failed to write {path}: {e}") from e
    logger.info(f"Wrote {len(rows)} rows to {path}")
    return path


def write_figures(datasets: Dict[str, FigureDataset], out_dir: Path) -> List[Path]:
    return [write_csv(out_dir / f"{name}.csv", ds.columns, ds.rows)
            for name, ds in datasets.items()]


def _rounded(value: Any) -> Any:
    if isinstance(value, (float, np.floating)):
        return round_sig(value)
    if isinstance(value, dict):
        return {k: _rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v) for v in value]
    return value


def write_json(path: Path, payload: Dict[str, Any]) -> Path:
    """Deterministic JSON: fixed key order, floats rounded to 12 digits"""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(_rounded(payload), indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"Failed to write {path}: {e}") from e
    logger.info(f"Wrote {path}")
    return path


def analysis_payload(analysis: OscillationAnalysis, d_coefficient: float,
                     min_field_formula: float, min_field_printed: float) -> Dict[str, Any]:
    return {
        "jumps": list(analysis.jump_positions),
        "period": analysis.period,
        "period_max_deviation": analysis.period_max_deviation,
        "jump_amplitude": analysis.jump_amplitude,
        "jump_amplitude_analytic": analysis.jump_amplitude_analytic,
        "onsager_area": analysis.fermi_area,
        "d_coefficient": d_coefficient,
        "min_field_formula": min_field_formula,
        "min_field_paper_printed": min_field_printed,
    }


def write_manifest(out_dir: Path, command: str, config: Dict[str, Any],
                   files: Sequence[Path], version: str) -> Path:
    """Run manifest; the one artifact allowed to change between runs"""
    payload = {
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "version": version,
        "command": command,
        "config": config,
        "files": sorted(p.name for p in files),
    }
    return write_json(out_dir / "manifest.json", payload)
