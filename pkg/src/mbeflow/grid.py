"""Uniform periodic grids, nodal fields, and discrete norms.

The domain is (0, 2L)^dims with J nodes per dimension and spacing h = 2L/J.
Nodes sit at x_j = j*h for j = 1..J; the node at 2L stands in for the node
at 0 by periodicity.  Storage is 0-based, so array index i holds the value
at (i + 1)*h.  Two-dimensional fields are stored row-major with the x index
on axis 0 and the y index on axis 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError, SamplingError

__all__ = [
    "Grid",
    "Field",
    "make_grid",
    "sample_function",
    "discrete_l2_norm",
    "mean",
]


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on (0, 2L)^dims."""

    dims: int
    J: int
    L: float

    def __post_init__(self):
        if self.dims not in (1, 2):
            raise ConfigurationError(f"dims must be 1 or 2, got {self.dims}")
        if self.J < 4 or self.J % 2 != 0:
            raise ConfigurationError(f"J must be even and at least 4, got {self.J}")
        if not (self.L > 0.0 and np.isfinite(self.L)):
            raise ConfigurationError(f"L must be positive and finite, got {self.L}")

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.J

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.J,) * self.dims

    @property
    def volume(self) -> float:
        """Measure of the periodic box, (2L)^dims."""
        return (2.0 * self.L) ** self.dims

    def axis_coordinates(self) -> np.ndarray:
        """Node coordinates along one axis; index i sits at (i + 1)*h.

        Computed as (2L*(i + 1))/J so that coordinates of nested grids agree
        bitwise when J doubles.
        """
        return (2.0 * self.L) * np.arange(1, self.J + 1, dtype=np.float64) / self.J


@dataclass(frozen=True)
class Field:
    """Real nodal values attached to a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != self.grid.shape:
            raise ConfigurationError(
                f"field shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        object.__setattr__(self, "values", values)

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy())


def make_grid(dims: int, J: int, L: float) -> Grid:
    """Validate and build a grid; see Grid for the node convention."""
    return Grid(dims, int(J), float(L))


def sample_function(grid: Grid, f: Callable) -> Field:
    """Evaluate f at every node.

    f receives coordinate arrays (x for 1D, x and y for 2D) and is expected
    to broadcast; plain scalar callables are handled through np.vectorize.
    """
    x = grid.axis_coordinates()
    try:
        if grid.dims == 1:
            values = np.asarray(f(x), dtype=np.float64)
        else:
            values = np.asarray(f(x[:, None], x[None, :]), dtype=np.float64)
        values = np.broadcast_to(values, grid.shape).copy()
    except (TypeError, ValueError):
        vf = np.vectorize(f, otypes=[np.float64])
        if grid.dims == 1:
            values = vf(x)
        else:
            values = vf(x[:, None], x[None, :])

    bad = ~np.isfinite(values)
    if bad.any():
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        coords = tuple(float(x[i]) for i in idx)
        raise SamplingError(
            f"sampled function is not finite at node {tuple(i + 1 for i in idx)} "
            f"(coordinates {coords})"
        )
    return Field(grid, values)


def discrete_l2_norm(field: Field) -> float:
    """Discrete L2 norm sqrt(h^dims * sum(u^2)).

    The reduction uses numpy's pairwise summation, a fixed deterministic
    tree order, so repeated calls on the same data are bitwise identical.
    """
    h = field.grid.h
    return float(np.sqrt(h**field.grid.dims * np.sum(field.values * field.values)))


def mean(field: Field) -> float:
    """Arithmetic mean of the nodal values."""
    return float(np.mean(field.values))
