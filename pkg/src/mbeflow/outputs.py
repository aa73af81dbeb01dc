"""On-disk formats: diagnostics CSV, result tables, and binary snapshots.

Floats are written with 17 significant digits so parsing them back is
bitwise exact; lines end with LF on every platform.  Snapshots use a small
binary layout: magic "MBEF", then format version, dims, and J as unsigned
32-bit little-endian integers, L as a little-endian float64, then the
J^dims node values as little-endian float64 in row-major order.
"""

from __future__ import annotations

import csv
import dataclasses
import struct
from pathlib import Path

import numpy as np

from .diagnostics import DiagnosticsRecord
from .errors import ConfigurationError
from .grid import Field, make_grid

__all__ = [
    "DIAGNOSTICS_HEADER",
    "format_float",
    "write_diagnostics_csv",
    "read_diagnostics_csv",
    "write_table_csv",
    "write_snapshot",
    "read_snapshot",
    "SNAPSHOT_MAGIC",
    "SNAPSHOT_VERSION",
]

DIAGNOSTICS_HEADER = "t,energy,roughness,mean_u,max_grad"
SNAPSHOT_MAGIC = b"MBEF"
SNAPSHOT_VERSION = 1
_HEADER_STRUCT = struct.Struct("<4sIIId")


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def write_diagnostics_csv(records, path) -> None:
    lines = [DIAGNOSTICS_HEADER]
    for r in records:
        lines.append(
            ",".join(
                format_float(v) for v in (r.t, r.energy, r.roughness, r.mean_u, r.max_grad)
            )
        )
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def read_diagnostics_csv(path) -> list[DiagnosticsRecord]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != DIAGNOSTICS_HEADER.split(","):
            raise ConfigurationError(
                f"{path}: expected header '{DIAGNOSTICS_HEADER}', got {header}"
            )
        records = []
        for row in reader:
            if len(row) != 5:
                raise ConfigurationError(f"{path}: malformed row {row}")
            records.append(DiagnosticsRecord(*(float(v) for v in row)))
    return records


def _flatten_row(row) -> dict:
    out = {}
    for field in dataclasses.fields(row):
        value = getattr(row, field.name)
        if field.name == "window":
            out["window_min"], out["window_max"] = value
        else:
            out[field.name] = value
    return out


def write_table_csv(rows, path) -> None:
    """Write a table of result dataclasses (one kind per file).

    Columns follow the dataclass fields; a `window` pair is flattened into
    window_min/window_max, and missing values render as empty cells.
    """
    rows = list(rows)
    if not rows:
        raise ConfigurationError("refusing to write an empty table")
    flat = [_flatten_row(r) for r in rows]
    header = list(flat[0].keys())
    lines = [",".join(header)]
    for entry in flat:
        cells = []
        for key in header:
            value = entry[key]
            if value is None:
                cells.append("")
            elif isinstance(value, float):
                cells.append(format_float(value))
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def write_snapshot(field: Field, path) -> None:
    grid = field.grid
    header = _HEADER_STRUCT.pack(
        SNAPSHOT_MAGIC, SNAPSHOT_VERSION, grid.dims, grid.J, grid.L
    )
    payload = np.ascontiguousarray(field.values, dtype="<f8").tobytes()
    Path(path).write_bytes(header + payload)


def read_snapshot(path) -> Field:
    blob = Path(path).read_bytes()
    if len(blob) < _HEADER_STRUCT.size:
        raise ConfigurationError(f"{path}: truncated snapshot header")
    magic, version, dims, J, L = _HEADER_STRUCT.unpack_from(blob)
    if magic != SNAPSHOT_MAGIC:
        raise ConfigurationError(f"{path}: bad magic {magic!r}")
    if version != SNAPSHOT_VERSION:
        raise ConfigurationError(f"{path}: unsupported snapshot version {version}")
    grid = make_grid(dims, J, L)
    expected = _HEADER_STRUCT.size + 8 * J**dims
    if len(blob) != expected:
        raise ConfigurationError(
            f"{path}: payload size {len(blob)} does not match header ({expected} expected)"
        )
    values = np.frombuffer(blob, dtype="<f8", offset=_HEADER_STRUCT.size).astype(
        np.float64
    )
    if not np.isfinite(values).all():
        raise ConfigurationError(f"{path}: snapshot contains non-finite values")
    return Field(grid, values.reshape(grid.shape))
