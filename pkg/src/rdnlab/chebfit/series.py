"""
Chebyshev series on an interval [a, b].

Fits interpolate at Chebyshev-Lobatto points; evaluation and
differentiation go through numpy.polynomial.chebyshev (Clenshaw
recurrence and the standard derivative recurrence).
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ArgumentError, NumericalError, RateUndefinedError

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
Interval = Tuple[float, float]

COEFF_FLOOR = 1e-13
# a last significant coefficient this far above the floor means the series ended
TERMINATION_FACTOR = 1e3


@dataclass(frozen=True, eq=False)
class ChebyshevSeries:
    """sum_k coeffs[k] T_k((2x - a - b)/(b - a))."""

    coeffs: FloatArray
    interval: Interval = (0.0, 1.0)

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=float).reshape(-1)
        if coeffs.size == 0 or not np.all(np.isfinite(coeffs)):
            raise NumericalError("Chebyshev coefficients must be finite and non-empty")
        a, b = float(self.interval[0]), float(self.interval[1])
        if not b > a:
            raise ArgumentError(f"degenerate interval {self.interval}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "interval", (a, b))

    @property
    def degree(self) -> int:
        return int(self.coeffs.shape[0] - 1)

    def to_reference(self, x: ArrayLike) -> FloatArray:
        a, b = self.interval
        return (2.0 * np.asarray(x, dtype=float) - a - b) / (b - a)

    def __call__(self, x: ArrayLike) -> float | FloatArray:
        return cheb_eval(self, x)


def lobatto_points(degree: int, interval: Interval = (-1.0, 1.0)) -> FloatArray:
    """degree + 1 Chebyshev-Lobatto points mapped to ``interval``, ascending."""
    if degree == 0:
        return np.array([0.5 * (interval[0] + interval[1])])
    t = -np.cos(np.pi * np.arange(degree + 1) / degree)
    a, b = interval
    return a + 0.5 * (b - a) * (t + 1.0)


def cheb_fit(f: Callable[[FloatArray], ArrayLike], degree: int, interval: Interval = (0.0, 1.0)) -> ChebyshevSeries:
    """Interpolate f at degree + 1 Lobatto points."""
    if degree < 0:
        raise ArgumentError(f"degree must be non-negative, got {degree}")
    nodes = lobatto_points(degree, interval)
    values = np.asarray(f(nodes), dtype=float).reshape(-1)
    if values.shape[0] != nodes.shape[0]:
        values = np.array([float(np.asarray(f(float(x)))) for x in nodes])
    if not np.all(np.isfinite(values)):
        raise NumericalError(f"non-finite samples while fitting degree {degree} on {interval}")
    reference = lobatto_points(degree)
    return ChebyshevSeries(C.chebfit(reference, values, degree), interval)


def cheb_eval(s: ChebyshevSeries, x: ArrayLike) -> float | FloatArray:
    values = C.chebval(s.to_reference(x), s.coeffs)
    return float(values) if np.ndim(x) == 0 else np.asarray(values, dtype=float)


def cheb_deriv(s: ChebyshevSeries) -> ChebyshevSeries:
    """Series of d/dx on the same interval."""
    if s.degree == 0:
        return ChebyshevSeries(np.zeros(1), s.interval)
    a, b = s.interval
    return ChebyshevSeries(C.chebder(s.coeffs, scl=2.0 / (b - a)), s.interval)


def estimate_rho(s: ChebyshevSeries, floor: float = COEFF_FLOOR) -> float:
    """
    Bernstein-radius proxy exp(-slope) of log|c_m| against m.

    Only coefficients above ``floor`` (relative to the largest) enter the
    fit. A series that stops abruptly well above the floor is treated as
    a polynomial and reported as math.inf.
    """
    if s.degree < 8:
        raise ArgumentError(f"rate estimation needs degree >= 8, got {s.degree}")
    magnitude = np.abs(s.coeffs)
    scale = float(magnitude.max())
    if scale == 0.0:
        raise RateUndefinedError("all Chebyshev coefficients vanish")
    threshold = floor * scale
    significant = np.flatnonzero(magnitude > threshold)
    last = int(significant[-1])
    if last < s.degree and magnitude[last] > TERMINATION_FACTOR * threshold:
        return math.inf
    if significant.shape[0] < 2:
        raise RateUndefinedError("fewer than two coefficients above the floor")
    slope, _ = np.polyfit(significant.astype(float), np.log(magnitude[significant]), 1)
    rho = float(np.exp(-slope))
    logger.debug("estimate_rho: %d coefficients, rho=%.4f", significant.shape[0], rho)
    return rho
