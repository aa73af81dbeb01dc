"""File-format readers against hand-packed fixtures."""

import struct

import numpy as np
import pytest

from mbeflow_figures import SchemaError, read_snapshot, read_table

HEADER = struct.Struct("<4sIIId")


def pack_snapshot(values, L, magic=b"MBEF", version=1):
    values = np.asarray(values, dtype="<f8")
    dims = values.ndim
    return HEADER.pack(magic, version, dims, values.shape[0], L) + values.tobytes()


def write_csv(path, text):
    path.write_text(text)
    return str(path)


def test_table_round_trip(tmp_path):
    path = write_csv(tmp_path / "d.csv", "t,energy,roughness\n1,10,0.5\n2,8,0.75\n")
    table = read_table(path)
    np.testing.assert_array_equal(table.column("t"), [1.0, 2.0])
    np.testing.assert_array_equal(table.column("energy"), [10.0, 8.0])
    np.testing.assert_array_equal(table.column("roughness"), [0.5, 0.75])


def test_table_missing_column_lists_names(tmp_path):
    path = write_csv(tmp_path / "d.csv", "t,energy\n1,10\n")
    with pytest.raises(SchemaError, match="no column 'roughness'.*t, energy"):
        read_table(path).column("roughness")


@pytest.mark.parametrize(
    "text, match",
    [
        ("t,energy\n", "no data rows"),
        ("", "missing or empty CSV header"),
        ("t,,energy\n1,2,3\n", "missing or empty CSV header"),
        ("t,energy\n1,2,3\n", "expected 2 cells, got 3"),
        ("t,energy\n1,watch\n", "non-numeric cell"),
    ],
)
def test_table_schema_rejects(tmp_path, text, match):
    path = write_csv(tmp_path / "bad.csv", text)
    with pytest.raises(SchemaError, match=match):
        read_table(path)


def test_table_reports_line_numbers(tmp_path):
    path = write_csv(tmp_path / "bad.csv", "t,energy\n1,2\n3\n")
    with pytest.raises(SchemaError, match="bad.csv:3"):
        read_table(path)


@pytest.mark.parametrize("shape", [(6,), (4, 4)])
def test_snapshot_round_trip(tmp_path, shape):
    rng = np.random.default_rng(0)
    values = rng.standard_normal(shape)
    path = tmp_path / "s.mbef"
    path.write_bytes(pack_snapshot(values, 3.0))
    snap = read_snapshot(path)
    assert snap.dims == len(shape)
    assert snap.J == shape[0]
    assert snap.L == 3.0
    np.testing.assert_array_equal(snap.values, values)


def test_snapshot_node_coordinates(tmp_path):
    path = tmp_path / "s.mbef"
    path.write_bytes(pack_snapshot(np.zeros(4), np.pi))
    snap = read_snapshot(path)
    expected = (2.0 * np.pi) * np.arange(1, 5) / 4
    np.testing.assert_array_equal(snap.node_coordinates(), expected)


def test_snapshot_corruption_rejected(tmp_path):
    values = np.ones(4)
    good = pack_snapshot(values, 2.0)

    cases = {
        "bad magic": (pack_snapshot(values, 2.0, magic=b"XBEF"), "bad magic"),
        "bad version": (pack_snapshot(values, 2.0, version=9), "unsupported snapshot version"),
        "bad dims": (HEADER.pack(b"MBEF", 1, 3, 4, 2.0) + values.tobytes(), "invalid header"),
        "short payload": (good[:-8], "payload size"),
        "long payload": (good + b"\0" * 8, "payload size"),
        "truncated header": (good[:10], "truncated snapshot header"),
    }
    for name, (blob, match) in cases.items():
        path = tmp_path / "bad.mbef"
        path.write_bytes(blob)
        with pytest.raises(SchemaError, match=match):
            read_snapshot(path)


def test_snapshot_non_finite_rejected(tmp_path):
    values = np.ones(4)
    values[2] = np.nan
    path = tmp_path / "bad.mbef"
    path.write_bytes(pack_snapshot(values, 2.0))
    with pytest.raises(SchemaError, match="non-finite"):
        read_snapshot(path)
