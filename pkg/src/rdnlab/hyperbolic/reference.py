"""
Finite-volume reference solvers.

First-order upwind for the color equation and Godunov for Burgers, both on
uniform cells with CFL 0.9. They only serve as independent oracles for the
characteristic solvers, so cell values are compared at cell centers.
"""

import math
from typing import Callable, Tuple

import numpy as np
from numpy.typing import NDArray

from ..core.errors import ArgumentError

FloatArray = NDArray[np.float64]

DEFAULT_CFL = 0.9


def cell_centers(n_cells: int, interval: Tuple[float, float] = (0.0, 1.0)) -> FloatArray:
    lo, hi = interval
    dx = (hi - lo) / n_cells
    return lo + dx * (np.arange(n_cells) + 0.5)


def _time_steps(t: float, dt_max: float) -> Tuple[int, float]:
    n = max(1, math.ceil(t / dt_max))
    return n, t / n


def upwind_color(
    u0: Callable[[FloatArray], FloatArray],
    speed: Callable[[FloatArray], FloatArray],
    t: float,
    n_cells: int = 2**14,
    cfl: float = DEFAULT_CFL,
) -> Tuple[FloatArray, FloatArray]:
    """u_t + c u_x = 0 on (0, 1), c > 0, inflow u(0, t) = u0(0). Returns (centers, values)."""
    if n_cells < 2 or not 0.0 < cfl <= 1.0:
        raise ArgumentError(f"need n_cells >= 2 and cfl in (0, 1], got {n_cells}, {cfl}")
    x = cell_centers(n_cells)
    dx = 1.0 / n_cells
    c = np.asarray(speed(x), dtype=float)
    if np.min(c) <= 0.0:
        raise ArgumentError("upwind scheme needs a positive speed")
    u = np.asarray(u0(x), dtype=float).copy()
    inflow = float(np.asarray(u0(np.array(0.0))))
    n, dt = _time_steps(t, cfl * dx / float(np.max(c)))
    nu = c * dt / dx
    for _ in range(n):
        upstream = np.concatenate(([inflow], u[:-1]))
        u = u - nu * (u - upstream)
    return x, u


def godunov_flux(left: FloatArray, right: FloatArray) -> FloatArray:
    """Exact Riemann flux for f(u) = u^2 / 2."""
    return np.maximum(0.5 * np.maximum(left, 0.0) ** 2, 0.5 * np.minimum(right, 0.0) ** 2)


def godunov_burgers(
    u0: Callable[[FloatArray], FloatArray],
    t: float,
    window: Tuple[float, float],
    n_cells: int = 2**14,
    cfl: float = DEFAULT_CFL,
    inflow: float = 1.0,
) -> Tuple[FloatArray, FloatArray]:
    """Godunov scheme with a Dirichlet inflow cell and a zero-gradient outflow cell."""
    if n_cells < 2 or not 0.0 < cfl <= 1.0:
        raise ArgumentError(f"need n_cells >= 2 and cfl in (0, 1], got {n_cells}, {cfl}")
    lo, hi = window
    dx = (hi - lo) / n_cells
    x = cell_centers(n_cells, window)
    u = np.asarray(u0(x), dtype=float).copy()
    umax = max(float(np.max(np.abs(u))), abs(inflow), 1e-12)
    n, dt = _time_steps(t, cfl * dx / umax)
    ratio = dt / dx
    for _ in range(n):
        padded = np.concatenate(([inflow], u, [u[-1]]))
        flux = godunov_flux(padded[:-1], padded[1:])
        u = u - ratio * np.diff(flux)
    return x, u
