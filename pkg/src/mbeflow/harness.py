"""Experiment drivers: convergence studies, relaxation and coarsening runs,
and power-law fitting of diagnostic series.

Convergence errors compare a run against a finer reference computed on a
nested grid (J_ref a multiple of every test J); the reference is restricted
to the coarse grid by index subsampling, which is exact because coarse
nodes are a subset of fine nodes.  Coarsening runs log diagnostics on a
geometric time grid so that log-log fits weight every decade equally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .diagnostics import DiagnosticsRecord, free_energy_density
from .errors import ConfigurationError, FitError
from .grid import Field, Grid, discrete_l2_norm, make_grid, sample_function
from .ics import relaxation_ic, slope_benchmark_ic
from .rng import uniform_values
from .splitting import MemorySink, RunConfig, evolve
from .stencil import DEFAULT_SAFETY

__all__ = [
    "Problem",
    "ReferenceSpec",
    "ConvergenceRow",
    "PowerLawFit",
    "Example2Result",
    "accuracy_problem",
    "relaxation_problem",
    "EXAMPLE1_MENU",
    "restrict_to_coarse",
    "error_vs_reference",
    "run_problem",
    "convergence_study",
    "temporal_order_study",
    "c0_from_anchor",
    "fit_power_law",
    "geometric_sample_times",
    "run_example1",
    "run_example2",
]


@dataclass(frozen=True)
class Problem:
    """A concrete initial-value problem on a periodic box."""

    dims: int
    L: float
    delta: float
    final_time: float
    ic: Callable
    name: str


def accuracy_problem(delta: float = 0.1, final_time: float = 1.0) -> Problem:
    """Smooth two-mode benchmark on (0, 2pi)^2 used for order checks."""
    return Problem(2, float(np.pi), delta, final_time, slope_benchmark_ic, "accuracy")


def relaxation_problem(delta: float, final_time: float) -> Problem:
    """Three-mode 1D profile on (0, 12) relaxing toward unit slopes."""
    return Problem(1, 6.0, delta, final_time, relaxation_ic, "relaxation")


# delta -> (J, tau, T) for the 1D relaxation sweep; tau is always delta/10.
EXAMPLE1_MENU = {
    1.0: (128, 0.1, 100.0),
    0.1: (128, 0.01, 200.0),
    0.01: (256, 0.001, 500.0),
    0.001: (512, 0.0001, 1000.0),
}


@dataclass(frozen=True)
class ReferenceSpec:
    J: int
    tau: float


@dataclass(frozen=True)
class ConvergenceRow:
    J: int
    tau: float
    error: float
    ratio: float | None
    order: float | None


@dataclass(frozen=True)
class PowerLawFit:
    slope: float
    intercept: float
    window: tuple[float, float]
    residual: float


@dataclass(frozen=True)
class Example2Result:
    records: list
    field_snapshots: list
    density_snapshots: list
    final: Field


def restrict_to_coarse(fine: Field, coarse_grid: Grid) -> Field:
    """Subsample a nested fine field onto the coarse grid.

    Requires the fine J to be a multiple of the coarse J; coarse index i
    maps to fine index (i + 1)*stride - 1 so that node coordinates match.
    """
    fg = fine.grid
    if fg.dims != coarse_grid.dims or fg.L != coarse_grid.L:
        raise ConfigurationError("restriction requires the same domain")
    if fg.J % coarse_grid.J != 0:
        raise ConfigurationError(
            f"grids do not nest: fine J={fg.J} is not a multiple of coarse J={coarse_grid.J}"
        )
    stride = fg.J // coarse_grid.J
    sl = slice(stride - 1, None, stride)
    values = fine.values[sl] if fg.dims == 1 else fine.values[sl, sl]
    return Field(coarse_grid, values.copy())


def error_vs_reference(coarse: Field, fine: Field) -> float:
    """Discrete L2 distance between a run and a nested reference run."""
    restricted = restrict_to_coarse(fine, coarse.grid)
    return discrete_l2_norm(Field(coarse.grid, coarse.values - restricted.values))


def run_problem(
    problem: Problem,
    J: int,
    tau: float,
    *,
    safety: float = DEFAULT_SAFETY,
    sink=None,
    diag_every: int = 0,
    diag_times: Sequence[float] = (),
    snapshot_times: Sequence[float] = (),
) -> Field:
    grid = make_grid(problem.dims, J, problem.L)
    u0 = sample_function(grid, problem.ic)
    cfg = RunConfig(
        delta=problem.delta,
        tau=tau,
        T=problem.final_time,
        safety=safety,
        diag_every=diag_every,
        snapshot_times=tuple(snapshot_times),
        diag_times=tuple(diag_times),
    )
    return evolve(u0, cfg, sink if sink is not None else MemorySink())


def c0_from_anchor(tau_at: float, J_at: int, L: float) -> float:
    """Proportionality constant for the tau = C0*h^2 refinement path."""
    h = 2.0 * L / J_at
    return tau_at / (h * h)


def _order_rows(pairs: Sequence[tuple[int, float, float]]) -> list[ConvergenceRow]:
    rows: list[ConvergenceRow] = []
    for i, (J, tau, err) in enumerate(pairs):
        if i == 0:
            rows.append(ConvergenceRow(J, tau, err, None, None))
        else:
            ratio = pairs[i - 1][2] / err
            rows.append(ConvergenceRow(J, tau, err, ratio, math.log2(ratio)))
    return rows


def convergence_study(
    problem: Problem,
    J_list: Sequence[int],
    C0: float,
    reference_spec: ReferenceSpec,
    *,
    safety: float = DEFAULT_SAFETY,
) -> list[ConvergenceRow]:
    """Refine space and time together (tau = C0*h^2) against a nested reference."""
    J_list = list(J_list)
    if sorted(J_list) != J_list or len(set(J_list)) != len(J_list):
        raise ConfigurationError(f"J_list must be strictly ascending, got {J_list}")
    if reference_spec.J < 2 * max(J_list):
        raise ConfigurationError(
            f"reference J={reference_spec.J} must be at least twice max(J_list)={max(J_list)}"
        )
    taus = [C0 * (2.0 * problem.L / J) ** 2 for J in J_list]
    if reference_spec.tau > min(taus) / 8.0:
        raise ConfigurationError(
            f"reference tau={reference_spec.tau} must be at most min(tau)/8={min(taus) / 8.0}"
        )
    for J in J_list:
        if reference_spec.J % J != 0:
            raise ConfigurationError(
                f"grids do not nest: reference J={reference_spec.J} is not a multiple of {J}"
            )

    reference = run_problem(problem, reference_spec.J, reference_spec.tau, safety=safety)
    pairs = []
    for J, tau in zip(J_list, taus):
        final = run_problem(problem, J, tau, safety=safety)
        pairs.append((J, tau, error_vs_reference(final, reference)))
    return _order_rows(pairs)


def temporal_order_study(
    problem: Problem,
    J: int,
    tau_list: Sequence[float],
    tau_ref: float,
    *,
    safety: float = DEFAULT_SAFETY,
) -> list[ConvergenceRow]:
    """Refine tau alone on a fixed grid against a small-tau reference run."""
    tau_list = list(tau_list)
    if sorted(tau_list, reverse=True) != tau_list:
        raise ConfigurationError(f"tau_list must be strictly descending, got {tau_list}")
    if tau_ref > min(tau_list) / 8.0:
        raise ConfigurationError(
            f"reference tau={tau_ref} must be at most min(tau)/8={min(tau_list) / 8.0}"
        )
    reference = run_problem(problem, J, tau_ref, safety=safety)
    pairs = []
    for tau in tau_list:
        final = run_problem(problem, J, tau, safety=safety)
        diff = Field(final.grid, final.values - reference.values)
        pairs.append((J, tau, discrete_l2_norm(diff)))
    return _order_rows(pairs)


def fit_power_law(series, window: tuple[float, float]) -> PowerLawFit:
    """Least-squares slope of log(value) against log(t) strictly inside window."""
    arr = np.asarray(list(series), dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FitError("series must be (t, value) pairs")
    t_min, t_max = float(window[0]), float(window[1])
    if not t_min < t_max:
        raise FitError(f"empty window ({t_min}, {t_max})")
    ts, vs = arr[:, 0], arr[:, 1]
    inside = (ts > t_min) & (ts < t_max)
    if int(inside.sum()) < 8:
        raise FitError(
            f"need at least 8 samples strictly inside ({t_min}, {t_max}), "
            f"got {int(inside.sum())}"
        )
    ts, vs = ts[inside], vs[inside]
    bad = vs <= 0.0
    if bad.any():
        i = int(np.argmax(bad))
        raise FitError(f"non-positive value {vs[i]} at t={ts[i]} inside the fit window")
    log_t, log_v = np.log(ts), np.log(vs)
    slope, intercept = np.polyfit(log_t, log_v, 1)
    resid = log_v - (slope * log_t + intercept)
    return PowerLawFit(
        slope=float(slope),
        intercept=float(intercept),
        window=(t_min, t_max),
        residual=float(np.sqrt(np.mean(resid * resid))),
    )


def geometric_sample_times(t0: float, T: float, samples_per_decade: int = 31) -> tuple[float, ...]:
    """Times t0 * 10^(k/samples_per_decade) up to T (T excluded; it is always logged)."""
    if not 0.0 < t0 < T:
        raise ConfigurationError(f"need 0 < t0 < T, got t0={t0}, T={T}")
    n = int(math.floor(math.log10(T / t0) * samples_per_decade)) + 1
    times = t0 * 10.0 ** (np.arange(n) / samples_per_decade)
    return tuple(float(t) for t in times if t < T)


def run_example1(
    delta: float,
    J: int | None = None,
    tau: float | None = None,
    T: float | None = None,
    *,
    safety: float = DEFAULT_SAFETY,
    diag_every: int | None = None,
) -> tuple[Field, list[DiagnosticsRecord]]:
    """One 1D relaxation run; unspecified parameters come from EXAMPLE1_MENU."""
    menu = EXAMPLE1_MENU.get(delta)
    if menu is not None:
        J = J if J is not None else menu[0]
        tau = tau if tau is not None else menu[1]
        T = T if T is not None else menu[2]
    if J is None or T is None:
        raise ConfigurationError(
            f"delta={delta} has no preset run; J and T must be given explicitly"
        )
    tau = tau if tau is not None else delta / 10.0
    if diag_every is None:
        diag_every = max(1, round(T / tau / 2000.0))
    problem = relaxation_problem(delta, T)
    sink = MemorySink()
    final = run_problem(problem, J, tau, safety=safety, sink=sink, diag_every=diag_every)
    return final, sink.records


def run_example2(
    J: int = 512,
    L: float = 50.0,
    delta: float = 0.1,
    tau: float = 0.01,
    T: float = 400.0,
    seed: int = 0,
    *,
    snapshot_times: Sequence[float] = (),
    t0: float = 1.0,
    samples_per_decade: int = 31,
    safety: float = DEFAULT_SAFETY,
    rng: str = "splitmix64",
) -> Example2Result:
    """2D coarsening from seeded uniform noise in [-0.001, 0.001].

    Diagnostics are logged on a geometric time grid; snapshots keep both the
    height field and its free-energy density (whose level sets trace the
    pattern of facets).
    """
    grid = make_grid(2, J, L)
    values = uniform_values(rng, seed, J * J, -0.001, 0.001).reshape(J, J)
    u0 = Field(grid, values)
    cfg = RunConfig(
        delta=delta,
        tau=tau,
        T=T,
        safety=safety,
        diag_every=0,
        snapshot_times=tuple(snapshot_times),
        diag_times=geometric_sample_times(t0, T, samples_per_decade),
    )
    sink = MemorySink()
    final = evolve(u0, cfg, sink)
    density = [(t, free_energy_density(f, delta)) for t, f in sink.snapshots]
    return Example2Result(sink.records, sink.snapshots, density, final)
