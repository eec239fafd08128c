"""Errorbar figures for smsemoa benchmark sweep CSVs."""

from .render import (
    SchemaError,
    SeriesPoint,
    SeriesTable,
    load_series_table,
    render_sweep_figure,
)

__all__ = [
    "SchemaError",
    "SeriesPoint",
    "SeriesTable",
    "load_series_table",
    "render_sweep_figure",
]
