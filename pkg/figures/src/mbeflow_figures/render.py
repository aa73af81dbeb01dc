"""Figure rendering for solver artifacts.

Four kinds: `energy` (diagnostic column vs time), `powerlaw` (the same in
log-log with a fitted slope and an optional dashed guide line), `profile`
(1D height and slope panels from a snapshot), and `contour` (level lines of
a 2D snapshot, typically a free-energy density).  Output format follows the
file extension; with a vector format, identical inputs give byte-identical
files.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .readers import SchemaError, read_snapshot, read_table

__all__ = ["KINDS", "FigureSpec", "RenderResult", "fit_loglog_slope", "render"]

KINDS = ("energy", "powerlaw", "profile", "contour")

# Fixed salt so SVG element ids, and with them whole files, are reproducible.
_SVG_HASHSALT = "mbeflow-figures"


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple
    out: str
    window: tuple | None = None
    reference_slope: float | None = None
    column: str = "energy"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(
                f"unknown figure kind '{self.kind}' (expected one of: {', '.join(KINDS)})"
            )
        if not self.inputs:
            raise SchemaError("at least one input file is required")
        if self.window is not None and not self.window[0] < self.window[1]:
            raise SchemaError(f"window {self.window} must satisfy t_min < t_max")


@dataclass(frozen=True)
class RenderResult:
    out: str
    fitted_slope: float | None = None


def _windowed(t: np.ndarray, y: np.ndarray, window) -> tuple[np.ndarray, np.ndarray]:
    if window is None:
        return t, y
    mask = (t >= window[0]) & (t <= window[1])
    return t[mask], y[mask]


def fit_loglog_slope(t: np.ndarray, y: np.ndarray, window=None) -> float:
    """Least-squares slope of log y against log t, optionally windowed."""
    t, y = _windowed(np.asarray(t, float), np.asarray(y, float), window)
    keep = (t > 0.0) & (y > 0.0)
    t, y = t[keep], y[keep]
    if t.size < 2:
        raise SchemaError("power-law fit needs at least two points with t > 0 and y > 0")
    slope, _ = np.polyfit(np.log(t), np.log(y), 1)
    return float(slope)


def _series(spec: FigureSpec, path) -> tuple[np.ndarray, np.ndarray]:
    table = read_table(path)
    return table.column("t"), table.column(spec.column)


def _render_energy(spec: FigureSpec, fig) -> None:
    ax = fig.subplots()
    for path in spec.inputs:
        t, y = _windowed(*_series(spec, path), spec.window)
        ax.plot(t, y, label=Path(path).stem)
    ax.set_xlabel("t")
    ax.set_ylabel(spec.column)
    if len(spec.inputs) > 1:
        ax.legend()


def _render_powerlaw(spec: FigureSpec, fig) -> float:
    ax = fig.subplots()
    fitted = None
    for path in spec.inputs:
        t, y = _windowed(*_series(spec, path), spec.window)
        ax.loglog(t, y, label=Path(path).stem)
        if fitted is None:
            fitted = fit_loglog_slope(t, y)
            if spec.reference_slope is not None:
                # Dashed guide through the geometric midpoint of the first
                # series, offset upward so it reads as a parallel reference.
                keep = (t > 0.0) & (y > 0.0)
                tm = np.exp(np.mean(np.log(t[keep])))
                ym = np.exp(np.mean(np.log(y[keep])))
                guide = 1.5 * ym * (t[keep] / tm) ** spec.reference_slope
                ax.loglog(
                    t[keep], guide, "k--",
                    label=f"slope {spec.reference_slope:g}",
                )
    ax.set_xlabel("t")
    ax.set_ylabel(spec.column)
    ax.set_title(f"fitted slope {fitted:.4f}")
    ax.legend()
    return fitted


def _render_profile(spec: FigureSpec, fig) -> None:
    top, bottom = fig.subplots(2, 1, sharex=True)
    for path in spec.inputs:
        snap = read_snapshot(path)
        if snap.dims != 1:
            raise SchemaError(f"{path}: profile figures need a 1D snapshot, got {snap.dims}D")
        x = snap.node_coordinates()
        u = snap.values
        h = 2.0 * snap.L / snap.J
        slope = (np.roll(u, -1) - np.roll(u, 1)) / (2.0 * h)
        label = Path(path).stem
        top.plot(x, u, label=label)
        bottom.plot(x, slope, label=label)
    top.set_ylabel("u")
    bottom.set_ylabel("du/dx")
    bottom.set_xlabel("x")
    bottom.axhline(1.0, color="k", linestyle=":", linewidth=0.8)
    bottom.axhline(-1.0, color="k", linestyle=":", linewidth=0.8)
    if len(spec.inputs) > 1:
        top.legend()


def _render_contour(spec: FigureSpec, fig) -> None:
    if len(spec.inputs) != 1:
        raise SchemaError(f"contour figures take exactly one snapshot, got {len(spec.inputs)}")
    snap = read_snapshot(spec.inputs[0])
    if snap.dims != 2:
        raise SchemaError(
            f"{spec.inputs[0]}: contour figures need a 2D snapshot, got {snap.dims}D"
        )
    ax = fig.subplots()
    coords = snap.node_coordinates()
    # values[i, j] is f(x_i, y_j); contour wants the first index along y.
    cs = ax.contour(coords, coords, snap.values.T, levels=10)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.colorbar(cs, ax=ax)


def _metadata(out: str) -> dict | None:
    suffix = Path(out).suffix.lower()
    if suffix == ".svg":
        return {"Date": None}
    if suffix == ".pdf":
        return {"CreationDate": None}
    return None


def render(spec: FigureSpec) -> RenderResult:
    """Render one figure to `spec.out`; returns the fit for powerlaw kinds."""
    plt.rcParams["svg.hashsalt"] = _SVG_HASHSALT
    fig = plt.figure(figsize=(6.4, 4.8))
    fitted = None
    try:
        if spec.kind == "energy":
            _render_energy(spec, fig)
        elif spec.kind == "powerlaw":
            fitted = _render_powerlaw(spec, fig)
        elif spec.kind == "profile":
            _render_profile(spec, fig)
        else:
            _render_contour(spec, fig)
        fig.savefig(spec.out, metadata=_metadata(spec.out))
    finally:
        plt.close(fig)
    return RenderResult(spec.out, fitted)
