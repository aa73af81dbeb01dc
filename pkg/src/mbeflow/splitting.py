"""Strang composition of the linear and nonlinear substeps, and time marching.

One step of size tau is L(tau/2) N(tau) L(tau/2): a half-step of the exact
spectral propagator, the subcycled explicit nonlinear substep, and another
half-step.  Half-steps of adjacent steps are never fused, so a run can be
stopped and resumed at any step boundary without changing the trajectory.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .diagnostics import DiagnosticsRecord, make_record
from .errors import BlowUpError, ConfigurationError
from .grid import Field
from .spectral import SpectralPropagator, build_propagator, linear_substep
from .stencil import DEFAULT_SAFETY, nonlinear_substep

__all__ = ["RunConfig", "MemorySink", "strang_step", "evolve"]

# T/tau is treated as a whole number of steps within this relative window;
# otherwise the final step is shortened to land exactly on T.
_INTEGER_STEP_RTOL = 1e-9


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one time-marched run.

    diag_every = 0 disables the periodic cadence; records are still emitted
    at t = 0 and t = T, and at any explicit diag_times (each mapped to the
    nearest step boundary), as are snapshot_times.
    """

    delta: float
    tau: float
    T: float
    safety: float = DEFAULT_SAFETY
    diag_every: int = 1
    snapshot_times: tuple[float, ...] = ()
    diag_times: tuple[float, ...] = ()

    def __post_init__(self):
        if not (self.delta > 0.0 and np.isfinite(self.delta)):
            raise ConfigurationError(f"delta must be positive, got {self.delta}")
        if not (self.tau > 0.0 and np.isfinite(self.tau)):
            raise ConfigurationError(f"tau must be positive, got {self.tau}")
        if not (self.T > 0.0 and np.isfinite(self.T)):
            raise ConfigurationError(f"T must be positive, got {self.T}")
        if not 0.0 < self.safety <= 1.0:
            raise ConfigurationError(f"safety must lie in (0, 1], got {self.safety}")
        if self.diag_every < 0:
            raise ConfigurationError(f"diag_every must be >= 0, got {self.diag_every}")
        object.__setattr__(self, "snapshot_times", tuple(self.snapshot_times))
        object.__setattr__(self, "diag_times", tuple(self.diag_times))
        slack = 1e-9 * max(1.0, self.T)
        for s in self.snapshot_times + self.diag_times:
            if not (-slack <= s <= self.T + slack):
                raise ConfigurationError(f"sample time {s} lies outside [0, T={self.T}]")


class MemorySink:
    """Collects diagnostics records and field snapshots in memory."""

    def __init__(self):
        self.records: list[DiagnosticsRecord] = []
        self.snapshots: list[tuple[float, Field]] = []

    def record(self, rec: DiagnosticsRecord) -> None:
        self.records.append(rec)

    def snapshot(self, field: Field, t: float) -> None:
        self.snapshots.append((t, field.copy()))


def strang_step(field: Field, cfg: RunConfig, half_propagator: SpectralPropagator) -> Field:
    """One splitting step L(tau/2) N(tau) L(tau/2).

    `half_propagator` must be built for time cfg.tau/2 with cfg.delta.
    """
    u = linear_substep(field, half_propagator)
    u, _ = nonlinear_substep(u, cfg.tau, cfg.safety)
    return linear_substep(u, half_propagator)


def _step_sizes(cfg: RunConfig) -> list[float]:
    ratio = cfg.T / cfg.tau
    n = round(ratio)
    if n > 0 and abs(ratio - n) <= _INTEGER_STEP_RTOL * max(1.0, ratio):
        return [cfg.tau] * n
    n_full = int(ratio)
    tail = cfg.T - n_full * cfg.tau
    return [cfg.tau] * n_full + [tail]


def _boundary_indices(times, tau: float, n_steps: int) -> dict[int, float]:
    out: dict[int, float] = {}
    for s in times:
        idx = min(max(round(s / tau), 0), n_steps)
        out.setdefault(idx, s)
    return out


def evolve(field: Field, cfg: RunConfig, sink) -> Field:
    """March from t = 0 to t = T, emitting diagnostics and snapshots to sink.

    The sink needs record(rec) and snapshot(field, t) methods.  Blow-up
    errors are re-raised with the splitting step index and time attached.
    """
    sizes = _step_sizes(cfg)
    n_steps = len(sizes)
    diag_at = {0, n_steps}
    if cfg.diag_every > 0:
        diag_at.update(range(0, n_steps + 1, cfg.diag_every))
    diag_at.update(_boundary_indices(cfg.diag_times, cfg.tau, n_steps))
    snap_at = _boundary_indices(cfg.snapshot_times, cfg.tau, n_steps)

    def boundary_time(i: int) -> float:
        return cfg.T if i == n_steps else i * cfg.tau

    u = field
    if 0 in diag_at:
        sink.record(make_record(u, cfg.delta, 0.0))
    if 0 in snap_at:
        sink.snapshot(u, 0.0)

    for i, dt in enumerate(sizes):
        step_cfg = cfg if dt == cfg.tau else replace(cfg, tau=dt)
        half = build_propagator(u.grid, cfg.delta, dt / 2.0)
        try:
            u = strang_step(u, step_cfg, half)
        except BlowUpError as err:
            t = boundary_time(i)
            raise BlowUpError(
                f"{err} during splitting step {i + 1} starting at t={t:.6g}",
                stage=err.stage,
                node=err.node,
                step=i + 1,
                time=t,
            ) from err
        done = i + 1
        if done in diag_at:
            sink.record(make_record(u, cfg.delta, boundary_time(done)))
        if done in snap_at:
            sink.snapshot(u, boundary_time(done))
    return u
