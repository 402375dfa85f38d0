"""
Output Module - figure datasets, JSON artifacts and the validation report
"""

from .datasets import FigureDataset, build_figure_datasets, format_number, write_csv, write_json
from .report import ValidationSummary, evaluate, render_text

__all__ = [
    "FigureDataset", "build_figure_datasets", "format_number", "write_csv", "write_json",
    "ValidationSummary", "evaluate", "render_text",
]
