"""Exact pseudo-spectral integration of the linear subproblem.

The stiff linear part u_t = -lap(u) - delta*lap^2(u) diagonalises in the
Fourier basis of the periodic box: mode (p, q) evolves by exp(lambda_pq*t)
with lambda_pq = x - delta*x^2 and x = pi^2(p^2 + q^2)/L^2.  The largest
multiplier is bounded by exp(t/(4*delta)), attained near x = 1/(2*delta),
so the substep amplifies any field by at most that factor in L2.

Real-input transforms (rfft) carry the computation; a full complex path is
kept for cross-checking and asserts that the imaginary residue is at
roundoff scale before discarding it.

This module also hosts the spectral differentiation used by diagnostics.
First derivatives zero the unpaired Nyquist mode (the standard choice that
keeps real fields real); the Laplacian keeps the full -(pi*N/L)^2 weight
there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError, GridMismatchError, SpectralResidueError
from .grid import Field, Grid

__all__ = [
    "lambda_mode",
    "SpectralPropagator",
    "build_propagator",
    "linear_substep",
    "spectral_gradient",
    "spectral_laplacian",
]

_RESIDUE_TOLERANCE = 1e-10


def lambda_mode(grid: Grid, delta: float, p: int, q: int = 0) -> float:
    """Growth rate of Fourier mode (p, q): x - delta*x^2, x = pi^2(p^2+q^2)/L^2."""
    x = np.pi**2 * (p * p + q * q) / grid.L**2
    return float(x - delta * x * x)


@dataclass(frozen=True)
class SpectralPropagator:
    """Per-mode multipliers exp(lambda*t) in the rfft layout of its grid."""

    grid: Grid
    delta: float
    t: float
    multipliers: np.ndarray

    @property
    def amplification_bound(self) -> float:
        """L2 growth bound exp(t/(4*delta)) for this propagator."""
        return float(np.exp(self.t / (4.0 * self.delta)))


def _wavenumbers(grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """(full-axis, real-axis) wavenumbers pi*p/L in transform ordering."""
    two_pi = 2.0 * np.pi
    kx = two_pi * np.fft.fftfreq(grid.J, d=grid.h)
    ky = two_pi * np.fft.rfftfreq(grid.J, d=grid.h)
    return kx, ky


def _mode_rates(grid: Grid, delta: float) -> np.ndarray:
    kx, ky = _wavenumbers(grid)
    if grid.dims == 1:
        x = ky * ky
    else:
        x = kx[:, None] ** 2 + ky[None, :] ** 2
    return x - delta * x * x


@lru_cache(maxsize=128)
def _cached_propagator(grid: Grid, delta: float, t: float) -> SpectralPropagator:
    multipliers = np.exp(t * _mode_rates(grid, delta))
    multipliers.flags.writeable = False
    return SpectralPropagator(grid, delta, t, multipliers)


def build_propagator(grid: Grid, delta: float, t: float) -> SpectralPropagator:
    """Propagator for time t; cached by (grid, delta, t)."""
    if not (delta > 0.0 and np.isfinite(delta)):
        raise ConfigurationError(f"delta must be positive and finite, got {delta}")
    if t < 0.0 or not np.isfinite(t):
        raise ConfigurationError(f"propagation time must be non-negative, got {t}")
    return _cached_propagator(grid, float(delta), float(t))


def linear_substep(field: Field, propagator: SpectralPropagator, *, use_real_transform: bool = True) -> Field:
    """Advance the linear subproblem exactly by the propagator's time.

    The mean (mode 0) carries multiplier exp(0) = 1 and is conserved.  With
    use_real_transform=False the full complex transform is used instead and
    the imaginary residue is checked against a roundoff-scale tolerance.
    """
    if field.grid != propagator.grid:
        raise GridMismatchError(
            f"field grid {field.grid} does not match propagator grid {propagator.grid}"
        )
    grid = field.grid
    if use_real_transform:
        if grid.dims == 1:
            out = np.fft.irfft(np.fft.rfft(field.values) * propagator.multipliers, n=grid.J)
        else:
            out = np.fft.irfft2(
                np.fft.rfft2(field.values) * propagator.multipliers, s=grid.shape
            )
        return Field(grid, out)

    rates = _full_mode_rates(grid, propagator.delta)
    spectrum = np.fft.fftn(field.values) * np.exp(propagator.t * rates)
    out = np.fft.ifftn(spectrum)
    scale = max(float(np.max(np.abs(out.real))), 1e-30)
    residue = float(np.max(np.abs(out.imag))) / scale
    if residue > _RESIDUE_TOLERANCE:
        raise SpectralResidueError(
            f"imaginary residue {residue:.3e} exceeds {_RESIDUE_TOLERANCE:.0e}"
        )
    return Field(grid, out.real.copy())


def _full_mode_rates(grid: Grid, delta: float) -> np.ndarray:
    two_pi = 2.0 * np.pi
    k = two_pi * np.fft.fftfreq(grid.J, d=grid.h)
    if grid.dims == 1:
        x = k * k
    else:
        x = k[:, None] ** 2 + k[None, :] ** 2
    return x - delta * x * x


def spectral_gradient(field: Field) -> tuple[Field, ...]:
    """Nodal first derivatives along each axis, differentiated spectrally."""
    grid = field.grid
    kx, ky = _wavenumbers(grid)
    if grid.dims == 1:
        k = ky.copy()
        k[-1] = 0.0  # unpaired Nyquist mode
        spectrum = np.fft.rfft(field.values)
        return (Field(grid, np.fft.irfft(spectrum * (1j * k), n=grid.J)),)

    kx = kx.copy()
    kx[grid.J // 2] = 0.0
    ky = ky.copy()
    ky[-1] = 0.0
    spectrum = np.fft.rfft2(field.values)
    ux = np.fft.irfft2(spectrum * (1j * kx[:, None]), s=grid.shape)
    uy = np.fft.irfft2(spectrum * (1j * ky[None, :]), s=grid.shape)
    return (Field(grid, ux), Field(grid, uy))


def spectral_laplacian(field: Field) -> Field:
    """Nodal Laplacian with the full -(k^2) weight at every mode."""
    grid = field.grid
    kx, ky = _wavenumbers(grid)
    if grid.dims == 1:
        k2 = ky * ky
        spectrum = np.fft.rfft(field.values)
        return Field(grid, np.fft.irfft(spectrum * (-k2), n=grid.J))

    k2 = kx[:, None] ** 2 + ky[None, :] ** 2
    spectrum = np.fft.rfft2(field.values)
    return Field(grid, np.fft.irfft2(spectrum * (-k2), s=grid.shape))
