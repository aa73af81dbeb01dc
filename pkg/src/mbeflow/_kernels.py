"""Compiled stencil kernels.

All kernels run single threaded with a fixed per-node arithmetic order, so
results are bitwise reproducible run to run.  Inputs are ghost-padded by
two cells (periodic wrap) so the inner loops index directly without modular
arithmetic; coefficients mirror the tables in stencil.py.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def rhs_2d(up: np.ndarray, h: float, out: np.ndarray) -> None:
    n0 = out.shape[0]
    n1 = out.shape[1]
    c = 1.0 / (12.0 * h)
    for j in range(n0):
        J = j + 2
        for k in range(n1):
            K = k + 2

            ux_p2 = (25.0 * up[J + 2, K] - 48.0 * up[J + 1, K] + 36.0 * up[J, K]
                     - 16.0 * up[J - 1, K] + 3.0 * up[J - 2, K]) * c
            ux_p1 = (3.0 * up[J + 2, K] + 10.0 * up[J + 1, K] - 18.0 * up[J, K]
                     + 6.0 * up[J - 1, K] - up[J - 2, K]) * c
            ux_m1 = (up[J + 2, K] - 6.0 * up[J + 1, K] + 18.0 * up[J, K]
                     - 10.0 * up[J - 1, K] - 3.0 * up[J - 2, K]) * c
            ux_m2 = (-3.0 * up[J + 2, K] + 16.0 * up[J + 1, K] - 36.0 * up[J, K]
                     + 48.0 * up[J - 1, K] - 25.0 * up[J - 2, K]) * c

            uy_p2 = (-up[J + 2, K + 2] + 8.0 * up[J + 2, K + 1]
                     - 8.0 * up[J + 2, K - 1] + up[J + 2, K - 2]) * c
            uy_p1 = (-up[J + 1, K + 2] + 8.0 * up[J + 1, K + 1]
                     - 8.0 * up[J + 1, K - 1] + up[J + 1, K - 2]) * c
            uy_m1 = (-up[J - 1, K + 2] + 8.0 * up[J - 1, K + 1]
                     - 8.0 * up[J - 1, K - 1] + up[J - 1, K - 2]) * c
            uy_m2 = (-up[J - 2, K + 2] + 8.0 * up[J - 2, K + 1]
                     - 8.0 * up[J - 2, K - 1] + up[J - 2, K - 2]) * c

            f_p2 = (ux_p2 * ux_p2 + uy_p2 * uy_p2) * ux_p2
            f_p1 = (ux_p1 * ux_p1 + uy_p1 * uy_p1) * ux_p1
            f_m1 = (ux_m1 * ux_m1 + uy_m1 * uy_m1) * ux_m1
            f_m2 = (ux_m2 * ux_m2 + uy_m2 * uy_m2) * ux_m2

            vy_p2 = (25.0 * up[J, K + 2] - 48.0 * up[J, K + 1] + 36.0 * up[J, K]
                     - 16.0 * up[J, K - 1] + 3.0 * up[J, K - 2]) * c
            vy_p1 = (3.0 * up[J, K + 2] + 10.0 * up[J, K + 1] - 18.0 * up[J, K]
                     + 6.0 * up[J, K - 1] - up[J, K - 2]) * c
            vy_m1 = (up[J, K + 2] - 6.0 * up[J, K + 1] + 18.0 * up[J, K]
                     - 10.0 * up[J, K - 1] - 3.0 * up[J, K - 2]) * c
            vy_m2 = (-3.0 * up[J, K + 2] + 16.0 * up[J, K + 1] - 36.0 * up[J, K]
                     + 48.0 * up[J, K - 1] - 25.0 * up[J, K - 2]) * c

            vx_p2 = (-up[J + 2, K + 2] + 8.0 * up[J + 1, K + 2]
                     - 8.0 * up[J - 1, K + 2] + up[J - 2, K + 2]) * c
            vx_p1 = (-up[J + 2, K + 1] + 8.0 * up[J + 1, K + 1]
                     - 8.0 * up[J - 1, K + 1] + up[J - 2, K + 1]) * c
            vx_m1 = (-up[J + 2, K - 1] + 8.0 * up[J + 1, K - 1]
                     - 8.0 * up[J - 1, K - 1] + up[J - 2, K - 1]) * c
            vx_m2 = (-up[J + 2, K - 2] + 8.0 * up[J + 1, K - 2]
                     - 8.0 * up[J - 1, K - 2] + up[J - 2, K - 2]) * c

            g_p2 = (vx_p2 * vx_p2 + vy_p2 * vy_p2) * vy_p2
            g_p1 = (vx_p1 * vx_p1 + vy_p1 * vy_p1) * vy_p1
            g_m1 = (vx_m1 * vx_m1 + vy_m1 * vy_m1) * vy_m1
            g_m2 = (vx_m2 * vx_m2 + vy_m2 * vy_m2) * vy_m2

            out[j, k] = (-f_p2 + 8.0 * f_p1 - 8.0 * f_m1 + f_m2) * c \
                        + (-g_p2 + 8.0 * g_p1 - 8.0 * g_m1 + g_m2) * c


@njit(cache=True)
def grad_sq_max_2d(up: np.ndarray, h: float) -> float:
    n0 = up.shape[0] - 4
    n1 = up.shape[1] - 4
    c = 1.0 / (12.0 * h)
    best = 0.0
    for j in range(n0):
        J = j + 2
        for k in range(n1):
            K = k + 2

            ux_p2 = (25.0 * up[J + 2, K] - 48.0 * up[J + 1, K] + 36.0 * up[J, K]
                     - 16.0 * up[J - 1, K] + 3.0 * up[J - 2, K]) * c
            ux_p1 = (3.0 * up[J + 2, K] + 10.0 * up[J + 1, K] - 18.0 * up[J, K]
                     + 6.0 * up[J - 1, K] - up[J - 2, K]) * c
            ux_m1 = (up[J + 2, K] - 6.0 * up[J + 1, K] + 18.0 * up[J, K]
                     - 10.0 * up[J - 1, K] - 3.0 * up[J - 2, K]) * c
            ux_m2 = (-3.0 * up[J + 2, K] + 16.0 * up[J + 1, K] - 36.0 * up[J, K]
                     + 48.0 * up[J - 1, K] - 25.0 * up[J - 2, K]) * c

            uy_p2 = (-up[J + 2, K + 2] + 8.0 * up[J + 2, K + 1]
                     - 8.0 * up[J + 2, K - 1] + up[J + 2, K - 2]) * c
            uy_p1 = (-up[J + 1, K + 2] + 8.0 * up[J + 1, K + 1]
                     - 8.0 * up[J + 1, K - 1] + up[J + 1, K - 2]) * c
            uy_m1 = (-up[J - 1, K + 2] + 8.0 * up[J - 1, K + 1]
                     - 8.0 * up[J - 1, K - 1] + up[J - 1, K - 2]) * c
            uy_m2 = (-up[J - 2, K + 2] + 8.0 * up[J - 2, K + 1]
                     - 8.0 * up[J - 2, K - 1] + up[J - 2, K - 2]) * c

            vy_p2 = (25.0 * up[J, K + 2] - 48.0 * up[J, K + 1] + 36.0 * up[J, K]
                     - 16.0 * up[J, K - 1] + 3.0 * up[J, K - 2]) * c
            vy_p1 = (3.0 * up[J, K + 2] + 10.0 * up[J, K + 1] - 18.0 * up[J, K]
                     + 6.0 * up[J, K - 1] - up[J, K - 2]) * c
            vy_m1 = (up[J, K + 2] - 6.0 * up[J, K + 1] + 18.0 * up[J, K]
                     - 10.0 * up[J, K - 1] - 3.0 * up[J, K - 2]) * c
            vy_m2 = (-3.0 * up[J, K + 2] + 16.0 * up[J, K + 1] - 36.0 * up[J, K]
                     + 48.0 * up[J, K - 1] - 25.0 * up[J, K - 2]) * c

            vx_p2 = (-up[J + 2, K + 2] + 8.0 * up[J + 1, K + 2]
                     - 8.0 * up[J - 1, K + 2] + up[J - 2, K + 2]) * c
            vx_p1 = (-up[J + 2, K + 1] + 8.0 * up[J + 1, K + 1]
                     - 8.0 * up[J - 1, K + 1] + up[J - 2, K + 1]) * c
            vx_m1 = (-up[J + 2, K - 1] + 8.0 * up[J + 1, K - 1]
                     - 8.0 * up[J - 1, K - 1] + up[J - 2, K - 1]) * c
            vx_m2 = (-up[J + 2, K - 2] + 8.0 * up[J + 1, K - 2]
                     - 8.0 * up[J - 1, K - 2] + up[J - 2, K - 2]) * c

            g = ux_p2 * ux_p2 + uy_p2 * uy_p2
            if g > best:
                best = g
            g = ux_p1 * ux_p1 + uy_p1 * uy_p1
            if g > best:
                best = g
            g = ux_m1 * ux_m1 + uy_m1 * uy_m1
            if g > best:
                best = g
            g = ux_m2 * ux_m2 + uy_m2 * uy_m2
            if g > best:
                best = g
            g = vx_p2 * vx_p2 + vy_p2 * vy_p2
            if g > best:
                best = g
            g = vx_p1 * vx_p1 + vy_p1 * vy_p1
            if g > best:
                best = g
            g = vx_m1 * vx_m1 + vy_m1 * vy_m1
            if g > best:
                best = g
            g = vx_m2 * vx_m2 + vy_m2 * vy_m2
            if g > best:
                best = g
    return best


@njit(cache=True)
def rhs_1d(up: np.ndarray, h: float, out: np.ndarray) -> None:
    n = out.shape[0]
    c = 1.0 / (12.0 * h)
    for j in range(n):
        J = j + 2
        ux_p2 = (25.0 * up[J + 2] - 48.0 * up[J + 1] + 36.0 * up[J]
                 - 16.0 * up[J - 1] + 3.0 * up[J - 2]) * c
        ux_p1 = (3.0 * up[J + 2] + 10.0 * up[J + 1] - 18.0 * up[J]
                 + 6.0 * up[J - 1] - up[J - 2]) * c
        ux_m1 = (up[J + 2] - 6.0 * up[J + 1] + 18.0 * up[J]
                 - 10.0 * up[J - 1] - 3.0 * up[J - 2]) * c
        ux_m2 = (-3.0 * up[J + 2] + 16.0 * up[J + 1] - 36.0 * up[J]
                 + 48.0 * up[J - 1] - 25.0 * up[J - 2]) * c

        f_p2 = ux_p2 * ux_p2 * ux_p2
        f_p1 = ux_p1 * ux_p1 * ux_p1
        f_m1 = ux_m1 * ux_m1 * ux_m1
        f_m2 = ux_m2 * ux_m2 * ux_m2

        out[j] = (-f_p2 + 8.0 * f_p1 - 8.0 * f_m1 + f_m2) * c


@njit(cache=True)
def grad_sq_max_1d(up: np.ndarray, h: float) -> float:
    n = up.shape[0] - 4
    c = 1.0 / (12.0 * h)
    best = 0.0
    for j in range(n):
        J = j + 2
        ux_p2 = (25.0 * up[J + 2] - 48.0 * up[J + 1] + 36.0 * up[J]
                 - 16.0 * up[J - 1] + 3.0 * up[J - 2]) * c
        ux_p1 = (3.0 * up[J + 2] + 10.0 * up[J + 1] - 18.0 * up[J]
                 + 6.0 * up[J - 1] - up[J - 2]) * c
        ux_m1 = (up[J + 2] - 6.0 * up[J + 1] + 18.0 * up[J]
                 - 10.0 * up[J - 1] - 3.0 * up[J - 2]) * c
        ux_m2 = (-3.0 * up[J + 2] + 16.0 * up[J + 1] - 36.0 * up[J]
                 + 48.0 * up[J - 1] - 25.0 * up[J - 2]) * c

        g = ux_p2 * ux_p2
        if g > best:
            best = g
        g = ux_p1 * ux_p1
        if g > best:
            best = g
        g = ux_m1 * ux_m1
        if g > best:
            best = g
        g = ux_m2 * ux_m2
        if g > best:
            best = g
    return best
