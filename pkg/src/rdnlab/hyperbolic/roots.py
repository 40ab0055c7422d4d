"""Bracketed bisection for characteristic feet."""

import math
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import BracketError

FloatArray = NDArray[np.float64]

ROOT_TOL = 1e-12
ACCEPT_RESIDUAL = 1e-12


def bisect_increasing(
    g: Callable[[FloatArray], FloatArray],
    lo: ArrayLike,
    hi: ArrayLike,
    tol: float = ROOT_TOL,
    what: str = "characteristic foot",
) -> FloatArray:
    """
    Vectorized root of a non-decreasing residual g on per-point brackets.

    Requires g(lo) <= 0 <= g(hi); an endpoint whose residual is within
    ACCEPT_RESIDUAL is returned as the root.
    """
    lo, hi = (np.array(v, dtype=float) for v in np.broadcast_arrays(np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)))
    lo0, hi0 = lo.copy(), hi.copy()
    g_lo = g(lo0)
    g_hi = g(hi0)
    bad = (g_lo > ACCEPT_RESIDUAL) | (g_hi < -ACCEPT_RESIDUAL)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise BracketError((float(lo0.flat[i]), float(hi0.flat[i])), (float(g_lo.flat[i]), float(g_hi.flat[i])), what)

    width = float(np.max(hi - lo)) if lo.size else 0.0
    steps = math.ceil(math.log2(width / tol)) if width > tol else 0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        below = g(mid) <= 0.0
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    root = 0.5 * (lo + hi)
    root = np.where(np.abs(g_hi) <= ACCEPT_RESIDUAL, hi0, root)
    return np.where(np.abs(g_lo) <= ACCEPT_RESIDUAL, lo0, root)


def bisect_scalar(g: Callable[[float], float], lo: float, hi: float, tol: float = ROOT_TOL, what: str = "root") -> float:
    """Pure-float counterpart of bisect_increasing for sequential integrators."""
    g_lo, g_hi = g(lo), g(hi)
    if abs(g_lo) <= ACCEPT_RESIDUAL:
        return lo
    if abs(g_hi) <= ACCEPT_RESIDUAL:
        return hi
    if g_lo > 0.0 or g_hi < 0.0:
        raise BracketError((lo, hi), (g_lo, g_hi), what)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if g(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
