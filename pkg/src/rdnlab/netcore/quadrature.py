"""Norms of function differences on an interval."""

from typing import Callable, Literal, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ArgumentError

RealFunction = Callable[[ArrayLike], ArrayLike]
Interval = Tuple[float, float]
NormKind = Literal["l2", "l1", "sup"]

DEFAULT_N_QUAD = 2 ** 14


def sample(f: RealFunction, x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Evaluate f on an array, falling back to a pointwise loop for scalar-only callables."""
    values = np.asarray(f(x), dtype=float)
    if values.shape == x.shape:
        return values
    if values.ndim == 0:
        return np.array([float(np.asarray(f(float(xi)))) for xi in x])
    return values.reshape(x.shape)


def grid_norm(
    f: RealFunction,
    g: RealFunction,
    domain: Interval = (0.0, 1.0),
    kind: NormKind = "l2",
    n_quad: int = DEFAULT_N_QUAD,
) -> float:
    """Composite-trapezoid L2 (or L1) norm, or the nodal max, of f - g."""
    if n_quad < 2:
        raise ArgumentError(f"n_quad must be at least 2, got {n_quad}")
    x = np.linspace(domain[0], domain[1], n_quad)
    diff = sample(f, x) - sample(g, x)
    if kind == "sup":
        return float(np.max(np.abs(diff)))
    if kind == "l1":
        return float(np.trapezoid(np.abs(diff), x))
    if kind == "l2":
        return float(np.sqrt(np.trapezoid(diff * diff, x)))
    raise ArgumentError(f"unknown norm kind {kind!r}")


def step_interface(f: RealFunction, domain: Interval, tol: float = 1e-14) -> float:
    """Location where a non-increasing two-valued function drops from f(lo) to f(hi)."""
    lo, hi = float(domain[0]), float(domain[1])
    upper = float(np.asarray(f(lo)))
    lower = float(np.asarray(f(hi)))
    if upper == lower:
        raise ArgumentError("function has no jump on the domain")
    level = 0.5 * (upper + lower)
    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if (float(np.asarray(f(mid))) - level) * (upper - level) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def step_distance(
    f: RealFunction,
    g: RealFunction,
    domain: Interval = (0.0, 1.0),
    kind: NormKind = "l2",
    tol: float = 1e-14,
) -> float:
    """
    Exact distance between two single-jump step functions with equal states.

    The functions differ only between their interfaces, so the L1 distance
    is |jump| * gap and the L2 distance |jump| * sqrt(gap).
    """
    left = (float(np.asarray(f(domain[0]))), float(np.asarray(g(domain[0]))))
    right = (float(np.asarray(f(domain[1]))), float(np.asarray(g(domain[1]))))
    if abs(left[0] - left[1]) > 1e-9 or abs(right[0] - right[1]) > 1e-9:
        raise ArgumentError(f"step states differ: left {left}, right {right}")
    jump = abs(left[0] - right[0])
    gap = abs(step_interface(f, domain, tol) - step_interface(g, domain, tol))
    if kind == "l1":
        return jump * gap
    if kind == "l2":
        return jump * float(np.sqrt(gap))
    if kind == "sup":
        return jump if gap > 0.0 else 0.0
    raise ArgumentError(f"unknown norm kind {kind!r}")
