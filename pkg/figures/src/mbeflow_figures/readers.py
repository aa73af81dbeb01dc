"""Readers for the solver's diagnostics CSV and binary snapshot files.

These parse the documented file formats directly, so figures render from
artifacts alone: the solver package is never imported.  Snapshot layout is
magic "MBEF", format version, dims, and J as unsigned 32-bit little-endian
integers, L as a little-endian float64, then the J^dims node values as
little-endian float64 in row-major order.
"""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["SchemaError", "Table", "Snapshot", "read_table", "read_snapshot"]

_SNAPSHOT_HEADER = struct.Struct("<4sIIId")
_SNAPSHOT_MAGIC = b"MBEF"
_SNAPSHOT_VERSION = 1


class SchemaError(ValueError):
    """An input file does not match the documented format."""


@dataclass(frozen=True)
class Table:
    """Columns of a headered numeric CSV, keyed by header name."""

    path: str
    columns: dict

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            have = ", ".join(self.columns)
            raise SchemaError(f"{self.path}: no column '{name}' (columns: {have})")
        return self.columns[name]


@dataclass(frozen=True)
class Snapshot:
    """A field snapshot: J nodes per axis on the periodic box (0, 2L)."""

    dims: int
    J: int
    L: float
    values: np.ndarray

    def node_coordinates(self) -> np.ndarray:
        # Node i sits at (i+1)h with h = 2L/J; same float the solver samples.
        return (2.0 * self.L) * np.arange(1, self.J + 1) / self.J


def read_table(path) -> Table:
    path = str(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or any(not name.strip() for name in header):
            raise SchemaError(f"{path}: missing or empty CSV header")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise SchemaError(
                    f"{path}:{lineno}: expected {len(header)} cells, got {len(row)}"
                )
            try:
                rows.append([float(cell) for cell in row])
            except ValueError:
                raise SchemaError(f"{path}:{lineno}: non-numeric cell in {row}") from None
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    data = np.asarray(rows, dtype=np.float64)
    return Table(path, {name: data[:, i] for i, name in enumerate(header)})


def read_snapshot(path) -> Snapshot:
    path = str(path)
    blob = Path(path).read_bytes()
    if len(blob) < _SNAPSHOT_HEADER.size:
        raise SchemaError(f"{path}: truncated snapshot header")
    magic, version, dims, J, L = _SNAPSHOT_HEADER.unpack_from(blob)
    if magic != _SNAPSHOT_MAGIC:
        raise SchemaError(f"{path}: bad magic {magic!r}")
    if version != _SNAPSHOT_VERSION:
        raise SchemaError(f"{path}: unsupported snapshot version {version}")
    if dims not in (1, 2) or J < 1 or not (L > 0.0):
        raise SchemaError(f"{path}: invalid header (dims={dims}, J={J}, L={L})")
    expected = _SNAPSHOT_HEADER.size + 8 * J**dims
    if len(blob) != expected:
        raise SchemaError(
            f"{path}: payload size {len(blob)} does not match header ({expected} expected)"
        )
    values = np.frombuffer(blob, dtype="<f8", offset=_SNAPSHOT_HEADER.size).astype(
        np.float64
    )
    if not np.isfinite(values).all():
        raise SchemaError(f"{path}: snapshot contains non-finite values")
    shape = (J,) * dims
    return Snapshot(dims, J, float(L), values.reshape(shape))
