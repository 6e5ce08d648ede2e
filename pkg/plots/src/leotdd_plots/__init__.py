"""Plotting companion for the LEO TDD/FDD simulator's CSV outputs."""

from .data import SchemaError, read_cdf, read_sweep
from .figures import PlotSpec, build_cdf_figure, build_sweep_figure, save_figure

__all__ = [
    "SchemaError",
    "read_cdf",
    "read_sweep",
    "PlotSpec",
    "build_cdf_figure",
    "build_sweep_figure",
    "save_figure",
]
