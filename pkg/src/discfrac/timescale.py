"""The time scale (hZ)_a restricted to [a, b] and its delta calculus.

Grid points are always ``a + i*h`` computed from the integer index, never
by accumulation, so gamma arguments built from them land on exact
integers whenever ``a/h`` is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, RegressivityError
from .special import h_falling_factorial

_SNAP = 1e-9


@dataclass(frozen=True)
class Grid:
    """Points ``a, a+h, ..., b`` with ``b = a + (n_points-1) h``."""

    a: float
    h: float
    n_points: int

    def __post_init__(self):
        if not self.h > 0:
            raise DomainError("graininess h must be positive")
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise DomainError("a grid needs at least 3 points")

    @classmethod
    def from_interval(cls, a: float, b: float, h: float) -> "Grid":
        k = (b - a) / h
        n = round(k)
        if abs(k - n) > _SNAP * max(1.0, abs(k)):
            raise DomainError(f"(b-a)/h = {k} is not an integer")
        return cls(float(a), float(h), int(n) + 1)

    @property
    def b(self) -> float:
        return self.point(self.n_points - 1)

    def point(self, i: int) -> float:
        if not 0 <= i < self.n_points:
            raise IndexError(f"grid index {i} out of range")
        return self.a + i * self.h

    @property
    def points(self) -> np.ndarray:
        return self.a + np.arange(self.n_points) * self.h

    def index(self, t: float) -> int:
        """Index of grid point ``t``; DomainError if ``t`` is off the grid."""
        k = (t - self.a) / self.h
        i = round(k)
        if abs(k - i) > _SNAP * max(1.0, abs(k)) or not 0 <= i < self.n_points:
            raise DomainError(f"{t!r} is not a point of the grid")
        return int(i)

    def sigma(self, t: float) -> float:
        return t + self.h

    def rho(self, t: float) -> float:
        return t - self.h

    def mu(self, t: float) -> float:
        return self.h

    def kappa(self) -> "Grid":
        """T^kappa: the grid without its last point."""
        return Grid(self.a, self.h, self.n_points - 1)

    def kappa2(self) -> "Grid":
        """T^{kappa^2}: the grid without its last two points.

        May have fewer than 3 points, so it is returned as an index range.
        """
        return range(self.n_points - 2)


@dataclass(frozen=True)
class GridFunction:
    """Values on consecutive grid points starting at index ``offset``.

    ``shift`` records a nu*h displacement of the domain for the shifted
    presentation of the fractional sums; the operators in this package use
    the re-indexed form where it is zero.
    """

    grid: Grid
    values: np.ndarray
    offset: int = 0
    shift: float = 0.0

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if v.ndim != 1:
            raise DomainError("values must be one-dimensional")
        if self.offset < 0 or self.offset + len(v) > self.grid.n_points:
            raise DomainError("values do not fit on the grid")

    @classmethod
    def from_callable(cls, grid: Grid, f: Callable[[float], float]) -> "GridFunction":
        return cls(grid, np.array([f(t) for t in grid.points]))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def points(self) -> np.ndarray:
        return self.grid.a + (self.offset + np.arange(len(self.values))) * self.grid.h + self.shift

    def at_index(self, i: int) -> float:
        j = i - self.offset
        if not 0 <= j < len(self.values):
            raise IndexError(f"grid index {i} outside the function's domain")
        return float(self.values[j])

    def __call__(self, t: float) -> float:
        return self.at_index(self.grid.index(t - self.shift))

    def restrict(self, stop: int) -> "GridFunction":
        """Values with grid indices in ``[offset, stop)``."""
        return GridFunction(self.grid, self.values[: stop - self.offset], self.offset, self.shift)


def delta_derivative(f: GridFunction, i: int) -> float:
    """``(f(t+h) - f(t))/h`` at grid index ``i``."""
    return (f.at_index(i + 1) - f.at_index(i)) / f.grid.h


def delta_derivative_values(f: GridFunction) -> GridFunction:
    """f^Delta on every point of f's domain except the last."""
    return GridFunction(f.grid, np.diff(f.values) / f.grid.h, f.offset, f.shift)


def h_integral(f: GridFunction, start: float, stop: float) -> float:
    """Delta integral over [start, stop): ``sum h f(t)`` for t from start to rho(stop)."""
    g = f.grid
    i, j = g.index(start), g.index(stop)
    if i == j:
        return 0.0
    if i > j:
        return -h_integral(f, stop, start)
    return g.h * float(np.sum([f.at_index(k) for k in range(i, j)]))


def generalized_polynomial(k: int, t: float, s: float, grid: Grid) -> float:
    """h_k(t, s) = (t-s)_h^(k) / k! on (hZ)_a."""
    if k < 0 or int(k) != k:
        raise DomainError("k must be a non-negative integer")
    grid.index(t)
    grid.index(s)
    return h_falling_factorial(t - s, k, grid.h) / math.factorial(k)


def poly_real(k: int, t: float, s: float) -> float:
    """h_k(t, s) on the real line: (t-s)^k / k!."""
    return (t - s) ** k / math.factorial(k)


def poly_q(k: int, t: float, s: float, q: float) -> float:
    """h_k(t, s) on q^Z: prod_{v<k} (t - q^v s) / (1 + q + ... + q^v)."""
    out = 1.0
    for v in range(k):
        out *= (t - q**v * s) / sum(q**m for m in range(v + 1))
    return out


def exp_ts(z: float, t: float, s: float, grid: Grid) -> float:
    """e_z(t, s) = (1 + h z)^((t-s)/h) for constant z."""
    base = 1.0 + grid.h * z
    if abs(base) < 1e-14:
        raise RegressivityError("1 + h z = 0: z is not regressive")
    n = grid.index(t) - grid.index(s)
    return base ** n
