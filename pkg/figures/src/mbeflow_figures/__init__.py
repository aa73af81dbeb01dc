"""Figure rendering for solver diagnostics CSV and snapshot files."""

from .readers import SchemaError, Snapshot, Table, read_snapshot, read_table
from .render import KINDS, FigureSpec, RenderResult, fit_loglog_slope, render

__all__ = [
    "KINDS",
    "FigureSpec",
    "RenderResult",
    "SchemaError",
    "Snapshot",
    "Table",
    "fit_loglog_slope",
    "read_snapshot",
    "read_table",
    "render",
]
