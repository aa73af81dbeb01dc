"""Closed-form initial conditions shared by the presets and the harness."""

from __future__ import annotations

import numpy as np

__all__ = ["slope_benchmark_ic", "relaxation_ic"]


def slope_benchmark_ic(x, y):
    """Two-mode 2D benchmark profile 0.1(sin3x sin2y + sin5x sin5y)."""
    return 0.1 * (np.sin(3.0 * x) * np.sin(2.0 * y) + np.sin(5.0 * x) * np.sin(5.0 * y))


def relaxation_ic(x):
    """Three-mode 1D profile 0.1(sin(pi x/2) + sin(2 pi x/3) + sin(pi x))."""
    return 0.1 * (
        np.sin(np.pi * x / 2.0) + np.sin(2.0 * np.pi * x / 3.0) + np.sin(np.pi * x)
    )
