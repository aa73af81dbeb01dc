"""Fourth-order conservative discretisation of the slope-selecting flux.

The nonlinear subproblem u_t = div((grad u . grad u) grad u) is advanced
with a 25-point scheme: the flux divergence at node (j, k) combines flux
values at eight offset points (j +/- 1, j +/- 2 in x; k +/- 1, k +/- 2 in
y) with weights (-1, 8, -8, 1)/12h, and the gradient entering each flux is
itself sampled to fourth order at the offset point.  Derivatives along the
offset axis use one-sided five-node stencils; derivatives transverse to it
use the centred four-node stencil.  In 1D the flux reduces to (u_x)^3.

Explicit time integration uses the three-stage strong-stability-preserving
Runge-Kutta scheme.  A frozen-coefficient von Neumann argument bounds the
stable step by dt <= 3h^2/(16A) where A is the largest squared gradient
sample anywhere on the grid; `nonlinear_substep` recomputes A before every
internal step and subcycles until it has covered the requested time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BlowUpError, ConfigurationError, RunawayError
from .grid import Field

__all__ = [
    "flux",
    "GradientSamples",
    "gradient_samples",
    "nonlinear_rhs",
    "frozen_coefficient_A",
    "stable_dt",
    "stable_dt_bound",
    "ssp_rk3_step",
    "nonlinear_substep",
    "SubcycleReport",
    "amplification_symbol",
    "A_FLOOR",
    "DEFAULT_SAFETY",
    "MAX_SUBCYCLE_STEPS",
]

A_FLOOR = 1e-12
DEFAULT_SAFETY = 0.9
MAX_SUBCYCLE_STEPS = 10_000_000

OFFSETS = (2, 1, -1, -2)

# First-derivative sample at the offset point j + l, built from the window
# (u_{j-2}, ..., u_{j+2}); every table entry is implicitly divided by 12h.
BIASED_FIRST_DERIVATIVE = {
    2: (3.0, -16.0, 36.0, -48.0, 25.0),
    1: (-1.0, 6.0, -18.0, 10.0, 3.0),
    -1: (-3.0, -10.0, 18.0, -6.0, 1.0),
    -2: (-25.0, 48.0, -36.0, 16.0, -3.0),
}

# First derivative at the window centre (used transverse to the offset axis).
CENTERED_FIRST_DERIVATIVE = (1.0, -8.0, 0.0, 8.0, -1.0)

# Conservative divergence weights over flux samples at offsets +2, +1, -1, -2.
DIVERGENCE_WEIGHTS = {2: -1.0, 1: 8.0, -1: -8.0, -2: 1.0}


def flux(p, q=None):
    """Slope-selecting flux: (p^2 + q^2)*(p, q) in 2D, p^3 in 1D (q omitted)."""
    if q is None:
        return p * p * p
    s = p * p + q * q
    return s * p, s * q


def apply_first_derivative(window, coefficients, h: float):
    """Combine a 5-sample window (ascending offsets -2..+2) into a derivative."""
    acc = coefficients[0] * window[0]
    for c, w in zip(coefficients[1:], window[1:]):
        acc = acc + c * w
    return acc / (12.0 * h)


@dataclass(frozen=True)
class GradientSamples:
    """Gradient samples at one node's offset points, keyed by offset.

    `ux_at_x_offsets[l]` holds u_x at (j + l, k); in 2D `uy_at_x_offsets`
    pairs it with u_y there, and the *_at_y_offsets maps hold the analogous
    samples at (j, k + l).  1D fields populate only `ux_at_x_offsets`.
    """

    ux_at_x_offsets: dict
    uy_at_x_offsets: dict | None = None
    ux_at_y_offsets: dict | None = None
    uy_at_y_offsets: dict | None = None


def gradient_samples(field: Field, j: int, k: int | None = None) -> GradientSamples:
    """Gradient samples feeding the flux divergence at one node.

    Indices are 0-based into the storage array and wrap periodically.
    """
    grid = field.grid
    h = grid.h
    J = grid.J
    v = field.values

    if grid.dims == 1:
        window = [v[(j + m) % J] for m in range(-2, 3)]
        ux = {
            l: float(apply_first_derivative(window, BIASED_FIRST_DERIVATIVE[l], h))
            for l in OFFSETS
        }
        return GradientSamples(ux_at_x_offsets=ux)

    if k is None:
        raise ConfigurationError("2D gradient samples need both indices")

    def at(a, b):
        return v[(j + a) % J, (k + b) % J]

    ux_x, uy_x, ux_y, uy_y = {}, {}, {}, {}
    for l in OFFSETS:
        x_window = [at(m, 0) for m in range(-2, 3)]
        ux_x[l] = float(apply_first_derivative(x_window, BIASED_FIRST_DERIVATIVE[l], h))
        y_at_shifted = [at(l, m) for m in range(-2, 3)]
        uy_x[l] = float(apply_first_derivative(y_at_shifted, CENTERED_FIRST_DERIVATIVE, h))
        x_at_shifted = [at(m, l) for m in range(-2, 3)]
        ux_y[l] = float(apply_first_derivative(x_at_shifted, CENTERED_FIRST_DERIVATIVE, h))
        y_window = [at(0, m) for m in range(-2, 3)]
        uy_y[l] = float(apply_first_derivative(y_window, BIASED_FIRST_DERIVATIVE[l], h))
    return GradientSamples(ux_x, uy_x, ux_y, uy_y)


def _padded(values: np.ndarray) -> np.ndarray:
    return np.pad(values, 2, mode="wrap")


def nonlinear_rhs(field: Field) -> Field:
    """Discrete div((grad u . grad u) grad u) at every node."""
    grid = field.grid
    out = np.empty(grid.shape, dtype=np.float64)
    up = _padded(field.values)
    if grid.dims == 1:
        _kernels.rhs_1d(up, grid.h, out)
    else:
        _kernels.rhs_2d(up, grid.h, out)
    return Field(grid, out)


def _axis_derivative_fields(values: np.ndarray, h: float, axis: int) -> tuple[dict, dict]:
    """Whole-grid biased and centred derivative samples along one axis.

    Returns (biased[l], centred[l]) arrays where entry [l] is the derivative
    sample at offset l along `axis`; the centred samples are evaluated at the
    point shifted by l along `axis` and differentiate the other axis.
    """
    def shifted(a, b=0):
        if values.ndim == 1:
            return np.roll(values, -a)
        return np.roll(values, (-a, -b), axis=(0, 1))

    biased, centred = {}, {}
    for l in OFFSETS:
        if axis == 0:
            window = [shifted(m) for m in range(-2, 3)]
            biased[l] = apply_first_derivative(window, BIASED_FIRST_DERIVATIVE[l], h)
            if values.ndim == 2:
                transverse = [shifted(l, m) for m in range(-2, 3)]
                centred[l] = apply_first_derivative(
                    transverse, CENTERED_FIRST_DERIVATIVE, h
                )
        else:
            window = [shifted(0, m) for m in range(-2, 3)]
            biased[l] = apply_first_derivative(window, BIASED_FIRST_DERIVATIVE[l], h)
            transverse = [shifted(m, l) for m in range(-2, 3)]
            centred[l] = apply_first_derivative(transverse, CENTERED_FIRST_DERIVATIVE, h)
    return biased, centred


def _nonlinear_rhs_reference(field: Field) -> Field:
    """Plain-numpy evaluation of the flux divergence, used to cross-check kernels."""
    grid = field.grid
    h = grid.h
    v = field.values
    if grid.dims == 1:
        ux, _ = _axis_derivative_fields(v, h, axis=0)
        acc = sum(DIVERGENCE_WEIGHTS[l] * flux(ux[l]) for l in OFFSETS)
        return Field(grid, acc / (12.0 * h))

    ux, uy = _axis_derivative_fields(v, h, axis=0)
    fx = {l: flux(ux[l], uy[l])[0] for l in OFFSETS}
    vy, vx = _axis_derivative_fields(v, h, axis=1)
    gy = {l: flux(vx[l], vy[l])[1] for l in OFFSETS}
    acc = sum(DIVERGENCE_WEIGHTS[l] * fx[l] for l in OFFSETS)
    acc = acc + sum(DIVERGENCE_WEIGHTS[l] * gy[l] for l in OFFSETS)
    return Field(grid, acc / (12.0 * h))


def frozen_coefficient_A(field: Field) -> float:
    """Largest squared gradient sample over all nodes and offset points."""
    grid = field.grid
    up = _padded(field.values)
    if grid.dims == 1:
        return float(_kernels.grad_sq_max_1d(up, grid.h))
    return float(_kernels.grad_sq_max_2d(up, grid.h))


def stable_dt_bound(A: float, h: float, safety: float) -> float:
    """Frozen-coefficient step bound safety*3h^2/(16 max(A, floor))."""
    if not 0.0 < safety <= 1.0:
        raise ConfigurationError(f"safety must lie in (0, 1], got {safety}")
    return safety * 3.0 * h * h / (16.0 * max(A, A_FLOOR))


def stable_dt(field: Field, h: float, safety: float = DEFAULT_SAFETY) -> float:
    """Stable explicit step for the current field."""
    return stable_dt_bound(frozen_coefficient_A(field), h, safety)


def _check_finite(values: np.ndarray, stage: str, dt: float) -> None:
    if np.isfinite(values).all():
        return
    node = tuple(int(i) for i in np.argwhere(~np.isfinite(values))[0])
    raise BlowUpError(
        f"non-finite value at node {node} after {stage} (dt={dt:.3e})",
        stage=stage,
        node=node,
    )


def ssp_rk3_step(field: Field, dt: float, rhs=None) -> Field:
    """One strong-stability-preserving third-order Runge-Kutta step."""
    if not (dt > 0.0 and np.isfinite(dt)):
        raise ConfigurationError(f"dt must be positive and finite, got {dt}")
    r = nonlinear_rhs if rhs is None else rhs
    grid = field.grid
    u = field.values

    s1 = u + dt * r(field).values
    _check_finite(s1, "stage-1", dt)
    s2 = 0.75 * u + 0.25 * (s1 + dt * r(Field(grid, s1)).values)
    _check_finite(s2, "stage-2", dt)
    out = (1.0 / 3.0) * u + (2.0 / 3.0) * (s2 + dt * r(Field(grid, s2)).values)
    _check_finite(out, "stage-3", dt)
    return Field(grid, out)


@dataclass(frozen=True)
class SubcycleReport:
    """Bookkeeping for one subcycled nonlinear substep."""

    requested_time: float
    steps_taken: int
    dt_used: float
    A_max_seen: float


def nonlinear_substep(
    field: Field,
    tau: float,
    safety: float = DEFAULT_SAFETY,
    *,
    max_steps: int = MAX_SUBCYCLE_STEPS,
) -> tuple[Field, SubcycleReport]:
    """Advance the nonlinear subproblem by tau, subcycling under the bound.

    The frozen coefficient A is recomputed before every internal step; the
    final step is shortened so the accumulated time equals tau exactly.
    `dt_used` reports the largest internal step.
    """
    if not (tau > 0.0 and np.isfinite(tau)):
        raise ConfigurationError(f"tau must be positive and finite, got {tau}")
    # A blown-up upstream stage (e.g. an overflowing linear half-step) must
    # surface as a blow-up here, not as a zero step bound further down.
    _check_finite(field.values, "substep-input", tau)
    grid = field.grid
    h = grid.h
    current = field
    remaining = float(tau)
    steps = 0
    dt_used = 0.0
    a_max = 0.0
    while remaining > 0.0:
        if steps >= max_steps:
            raise RunawayError(
                f"nonlinear substep exceeded {max_steps} internal steps "
                f"({remaining:.3e} of {tau:.3e} still to cover)"
            )
        A = frozen_coefficient_A(current)
        dt = stable_dt_bound(A, h, safety)
        last = dt >= remaining
        if last:
            dt = remaining
        current = ssp_rk3_step(current, dt)
        steps += 1
        a_max = max(a_max, A)
        dt_used = max(dt_used, dt)
        remaining = 0.0 if last else remaining - dt
    return current, SubcycleReport(float(tau), steps, dt_used, a_max)


def amplification_symbol(theta1, theta2, r):
    """Frozen-coefficient von Neumann symbol at phase angles theta = sigma*h.

    rho = 1 - (r/3)*[(1-cos t1)(7-cos t1) + (1-cos t2)(7-cos t2)] with
    r = A*dt/h^2; |rho| <= 1 over all angles exactly when r <= 3/16.
    """
    c1 = np.cos(theta1)
    c2 = np.cos(theta2)
    return 1.0 - (r / 3.0) * ((1.0 - c1) * (7.0 - c1) + (1.0 - c2) * (7.0 - c2))
