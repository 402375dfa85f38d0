"""
Unit Tests for Datasets, Artifact Writers and the Validation Report
"""

import json

import numpy as np
import pytest

from ...core.exceptions import OutputError
from ...output.datasets import (
    FIGURE_SCHEMAS,
    analysis_payload,
    build_figure_datasets,
    format_number,
    round_sig,
    write_csv,
    write_json,
    write_manifest,
)
from ...output.report import ValidationSummary, evaluate, render_json, render_text
from ...physics.dhva import analyze_oscillations, sweep
from ...physics.fd_solver import ConvergenceStudy, OracleReport, OracleRow
from ...physics.spectrum import validate_config
from ..conftest import REFERENCE_INV_B_RANGE


class TestFormatting:
    @pytest.mark.parametrize("value, text", [
        (0.0, "0.00000000000e+00"),
        (-0.0, "0.00000000000e+00"),
        (1.17e-19, "1.17000000000e-19"),
        (-3.7731e-44, "-3.77310000000e-44"),
        (10000, "1.00000000000e+04"),
    ])
    def test_format_number(self, value, text):
        assert format_number(value) == text

    def test_round_sig(self):
        assert round_sig(1.0 / 3.0) == 0.333333333333


class TestFigureDatasets:
    """Sweep rows merged with one-sided jump rows"""

    @pytest.fixture
    def datasets(self, rb_cfg, scales):
        result = sweep(*REFERENCE_INV_B_RANGE, 1000, rb_cfg, scales)
        return build_figure_datasets(result, analyze_oscillations(result, rb_cfg, scales))

    def test_schemas(self, datasets):
        assert list(datasets) == ["figure1", "figure1b", "figure2", "figure3"]
        for name, dataset in datasets.items():
            assert dataset.columns == FIGURE_SCHEMAS[name]
            assert dataset.columns[0] == "inv_b_Teff_inv"

    def test_rows_sorted_with_jump_rows(self, datasets):
        rows = datasets["figure1"].rows
        assert len(rows) == 1000 + 2 * 9
        inv_b = np.array([row[0] for row in rows])
        assert np.all(np.diff(inv_b) >= 0)

    def test_population_resets_at_boundaries(self, datasets, rb_cfg, scales):
        period = scales.rho_flux / rb_cfg.natoms
        rows = datasets["figure1"].rows
        pairs = [(a, b) for a, b in zip(rows, rows[1:]) if a[0] == b[0]]
        assert len(pairs) == 9
        for (x, full), (_, empty) in pairs:
            # left limit holds a complete level D = N/k, right limit an empty one
            assert full == pytest.approx(rb_cfg.natoms / round(x / period), rel=1e-12)
            assert empty == 0.0

    def test_magnetization_swing(self, datasets, rb_cfg, scales):
        values = [row[1] for row in datasets["figure3"].rows]
        swing = max(values) - min(values)
        assert swing == pytest.approx(2 * rb_cfg.natoms * scales.mu_b_eff, rel=1e-9)
        assert swing == pytest.approx(3.76e-44, rel=1e-2)

    def test_boundary_sample_not_duplicated(self, rb_cfg, scales):
        start = scales.rho_flux / rb_cfg.natoms
        result = sweep(start * 2, start * 5, 4, rb_cfg, scales)
        datasets = build_figure_datasets(result, analyze_oscillations(result, rb_cfg, scales))
        inv_b = [row[0] for row in datasets["figure1"].rows]
        # samples sit on levels 2..5; jumps 3..5 add only their left rows
        assert len(inv_b) == 4 + 3


class TestWriters:
    def test_csv(self, out_dir):
        path = write_csv(out_dir / "t.csv", ("a", "b"), [(1, 0.5), (2, -0.25)])
        assert path.read_text() == "a,b\n1,5.00000000000e-01\n2,-2.50000000000e-01\n"

    def test_json_rounded(self, out_dir):
        path = write_json(out_dir / "t.json", {"x": 1.0 / 3.0, "nested": [2.0 / 3.0, 1]})
        data = json.loads(path.read_text())
        assert data == {"x": 0.333333333333, "nested": [0.666666666667, 1]}

    def test_write_failure(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        with pytest.raises(OutputError) as excinfo:
            write_csv(blocker / "t.csv", ("a",), [(1,)])
        assert excinfo.value.exit_code == 3

    def test_manifest(self, out_dir):
        path = write_manifest(out_dir, "sweep", {"cloud": {"natoms": 10}},
                              [out_dir / "b.csv", out_dir / "a.csv"], "1.0.0")
        data = json.loads(path.read_text())
        assert data["files"] == ["a.csv", "b.csv"]
        assert data["command"] == "sweep"
        assert "generated_at" in data

    def test_analysis_payload_keys(self, rb_cfg, scales):
        result = sweep(*REFERENCE_INV_B_RANGE, 200, rb_cfg, scales)
        payload = analysis_payload(analyze_oscillations(result, rb_cfg, scales),
                                   scales.rho_flux, 4.085e4, 40.93)
        for key in ("jumps", "period", "jump_amplitude", "onsager_area", "d_coefficient",
                    "min_field_formula", "min_field_paper_printed"):
            assert key in payload


class TestValidationReport:
    """Hard-check evaluation and rendering, without running the solver"""

    @pytest.fixture
    def summary(self, rb_cfg, scales):
        oracle = OracleReport(
            rows=[OracleRow(0, -1, 0, 1e-9 * scales.hbar_omega, 0.0, 1e-9),
                  OracleRow(0, -1, 1, 1.0000002 * scales.hbar_omega, scales.hbar_omega, 2e-7)],
            discrepancies=[(0, -1, 3e-6)],
            hbar_omega=scales.hbar_omega,
        )
        convergence = ConvergenceStudy(spacings=[4e-10, 2e-10, 1e-10],
                                       errors=[1.6e-5, 4e-6, 1e-6], ratios=[4.0, 4.0], order=2.0)
        return ValidationSummary(
            config=validate_config(rb_cfg),
            oracle=oracle,
            convergence=convergence,
            b_eff=rb_cfg.b_eff,
            printed_min_field=40.93,
        )

    def test_passes(self, summary):
        assert evaluate(summary).passed
        text = render_text(summary)
        assert "Result: PASS" in text
        assert "1.169e-15" in text
        assert "4.0930e+01" in text
        assert "[PASS] field_strength" in text

    def test_order_out_of_range_fails(self, summary):
        summary.convergence.order = 1.0
        assert not evaluate(summary).passed
        assert "Result: FAIL" in render_text(summary)

    def test_oracle_error_fails(self, summary):
        summary.oracle.rows.append(OracleRow(1, 1, 3, 1.0, 1.1, 1e-3))
        evaluate(summary)
        assert any("eigenvalue error" in f for f in summary.failures)

    def test_json(self, summary):
        data = render_json(evaluate(summary))
        assert data["passed"] is True
        assert data["min_field_paper_printed"] == 40.93
        assert data["d_coefficient"] == pytest.approx(1.17e-15, rel=5e-3)
        assert len(data["fd_oracle"]) == 2
        assert data["convergence"]["order"] == 2.0
