"""Rendering behavior on synthetic inputs."""

import numpy as np
import pytest

from mbeflow_figures import FigureSpec, SchemaError, fit_loglog_slope, render
from mbeflow_figures.cli import main

from test_readers import pack_snapshot


@pytest.fixture
def diag_csv(tmp_path):
    # Exact power laws: energy t^{-1/3}, roughness t^{1/3}.
    t = np.geomspace(1.0, 100.0, 40)
    lines = ["t,energy,roughness,mean_u,max_grad"]
    for ti in t:
        row = (ti, ti ** (-1.0 / 3.0), ti ** (1.0 / 3.0), 0.0, 1.0)
        lines.append(",".join(format(v, ".17g") for v in row))
    path = tmp_path / "diagnostics.csv"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture
def profile_snapshot(tmp_path):
    x = 12.0 * np.arange(1, 65) / 64
    path = tmp_path / "final_state.mbef"
    path.write_bytes(pack_snapshot(np.sin(np.pi * x / 6.0), 6.0))
    return str(path)


@pytest.fixture
def density_snapshot(tmp_path):
    x = 2.0 * np.pi * np.arange(1, 33) / 32
    values = np.sin(x)[:, None] * np.sin(x)[None, :]
    path = tmp_path / "density.mbef"
    path.write_bytes(pack_snapshot(values, np.pi))
    return str(path)


def test_energy_svg_smoke(tmp_path, diag_csv):
    out = tmp_path / "energy.svg"
    result = render(FigureSpec("energy", (diag_csv,), str(out)))
    assert result.fitted_slope is None
    blob = out.read_bytes()
    assert blob.startswith(b"<?xml")
    assert len(blob) > 1000


def test_vector_output_is_reproducible(tmp_path, diag_csv):
    blobs = []
    for name in ("a.svg", "b.svg"):
        out = tmp_path / name
        render(FigureSpec("powerlaw", (diag_csv,), str(out), reference_slope=-1.0 / 3.0))
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_powerlaw_fit_on_exact_series(tmp_path, diag_csv):
    out = tmp_path / "p.svg"
    result = render(FigureSpec("powerlaw", (diag_csv,), str(out), reference_slope=-1.0 / 3.0))
    assert result.fitted_slope == pytest.approx(-1.0 / 3.0, abs=1e-12)
    roughness = render(
        FigureSpec("powerlaw", (diag_csv,), str(out), column="roughness")
    )
    assert roughness.fitted_slope == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_powerlaw_window_limits_fit(tmp_path):
    # Slope -1/2 inside [10, 100], garbage outside it.
    t = np.geomspace(1.0, 1000.0, 60)
    y = t ** (-0.5)
    y[(t < 10.0) | (t > 100.0)] = 7.0
    lines = ["t,energy"] + [f"{a:.17g},{b:.17g}" for a, b in zip(t, y)]
    path = tmp_path / "d.csv"
    path.write_text("\n".join(lines) + "\n")
    result = render(
        FigureSpec("powerlaw", (str(path),), str(tmp_path / "p.svg"), window=(10.0, 100.0))
    )
    assert result.fitted_slope == pytest.approx(-0.5, abs=1e-12)


def test_fit_loglog_slope_needs_two_positive_points():
    with pytest.raises(SchemaError, match="at least two points"):
        fit_loglog_slope(np.array([0.0, -1.0, 2.0]), np.array([1.0, 1.0, 1.0]))


def test_profile_smoke_and_dimension_check(tmp_path, profile_snapshot, density_snapshot):
    out = tmp_path / "profile.svg"
    render(FigureSpec("profile", (profile_snapshot,), str(out)))
    assert out.read_bytes().startswith(b"<?xml")
    with pytest.raises(SchemaError, match="need a 1D snapshot"):
        render(FigureSpec("profile", (density_snapshot,), str(out)))


def test_contour_smoke_and_dimension_check(tmp_path, profile_snapshot, density_snapshot):
    out = tmp_path / "contour.svg"
    render(FigureSpec("contour", (density_snapshot,), str(out)))
    assert out.read_bytes().startswith(b"<?xml")
    with pytest.raises(SchemaError, match="need a 2D snapshot"):
        render(FigureSpec("contour", (profile_snapshot,), str(out)))
    with pytest.raises(SchemaError, match="exactly one snapshot"):
        render(FigureSpec("contour", (density_snapshot, density_snapshot), str(out)))


def test_spec_validation():
    with pytest.raises(SchemaError, match="unknown figure kind"):
        FigureSpec("surface", ("a.csv",), "out.svg")
    with pytest.raises(SchemaError, match="at least one input"):
        FigureSpec("energy", (), "out.svg")
    with pytest.raises(SchemaError, match="t_min < t_max"):
        FigureSpec("energy", ("a.csv",), "out.svg", window=(5.0, 5.0))


def test_missing_column_names_file(tmp_path, diag_csv):
    with pytest.raises(SchemaError, match="no column 'entropy'"):
        render(FigureSpec("energy", (diag_csv,), str(tmp_path / "o.svg"), column="entropy"))


def test_cli_powerlaw_prints_fit(tmp_path, diag_csv, capsys):
    out = tmp_path / "p.svg"
    code = main([
        "--kind", "powerlaw", "--in", diag_csv, "--out", str(out),
        "--slope", "-0.3333333333333333",
    ])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "fitted slope: -0.333333" in stdout
    assert out.exists()


def test_cli_schema_error_exits_2(tmp_path, profile_snapshot, capsys):
    code = main([
        "--kind", "contour", "--in", profile_snapshot, "--out", str(tmp_path / "c.svg"),
    ])
    assert code == 2
    assert "need a 2D snapshot" in capsys.readouterr().err


def test_cli_missing_input_exits_4(tmp_path, capsys):
    code = main([
        "--kind", "energy", "--in", str(tmp_path / "absent.csv"),
        "--out", str(tmp_path / "o.svg"),
    ])
    assert code == 4
    assert "error:" in capsys.readouterr().err
