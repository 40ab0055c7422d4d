"""
Burgers' equation u_t + (u^2/2)_x = 0 with the sine-ramp datum.

Characteristics x = xi + u0(xi) t cross from t1 = 4 gamma / pi on. The
shock path is integrated from the Rankine-Hugoniot law with RK4, tracing
both characteristic feet at every stage; the solution and the transport
map X(t, .) are then evaluated from the recorded path.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.base_problem import BaseProblem, Interval, Params
from ..core.errors import ArgumentError
from .color import TransportMapSample
from .profiles import BurgersRamp
from .roots import bisect_increasing, bisect_scalar

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

#: RK4 step bound for the shock ODE
SHOCK_STEP = 1e-3
T2_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class ShockPath:
    """RK4 records of x_S(t) with speeds and Lagrangian interval ends."""

    times: FloatArray
    positions: FloatArray
    speeds: FloatArray
    lower: FloatArray
    upper: FloatArray

    def position(self, t: ArrayLike) -> FloatArray:
        """Cubic Hermite interpolation using the recorded speeds."""
        t = np.asarray(t, dtype=float)
        i = np.clip(np.searchsorted(self.times, t, side="right") - 1, 0, len(self.times) - 2)
        h = self.times[i + 1] - self.times[i]
        s = (t - self.times[i]) / h
        s2, s3 = s * s, s * s * s
        return (
            (2 * s3 - 3 * s2 + 1) * self.positions[i]
            + (s3 - 2 * s2 + s) * h * self.speeds[i]
            + (-2 * s3 + 3 * s2) * self.positions[i + 1]
            + (s3 - s2) * h * self.speeds[i + 1]
        )


class BurgersProblem(BaseProblem):
    """Sine ramp from 1 to 0 around x0, evolved on [0, x0 + gamma + t_final/2 + margin]."""

    name = "burgers"

    def __init__(self, x0: float = 0.3, gamma: float = 0.2, t_final: float = 3.0, margin: float = 0.2):
        super().__init__(t_final)
        if margin < 0.0:
            raise ArgumentError(f"margin must be non-negative, got {margin}")
        self.ramp = BurgersRamp(x0, gamma)
        self.x0 = float(x0)
        self.gamma = float(gamma)
        self.length = self.x0 + self.gamma + 0.5 * self.t_final + margin

    @property
    def window(self) -> Interval:
        return (0.0, self.length)

    @property
    def t1(self) -> float:
        """Shock birth: 1 / max|u0'|."""
        return 4.0 * self.gamma / math.pi

    def default_mus(self) -> List[Params]:
        return [()]

    # -- characteristic geometry -------------------------------------------------

    def fold_points(self, t: float) -> Tuple[float, float]:
        """Lagrangian points where 1 + u0'(xi) t = 0 (both x0 at t = t1)."""
        if t < self.t1:
            raise ArgumentError(f"no fold before t1={self.t1:.6g}, got t={t}")
        theta = math.acos(min(1.0, self.t1 / t))
        offset = 2.0 * self.gamma / math.pi * theta
        return (self.x0 - offset, self.x0 + offset)

    def _residual(self, x: float, t: float) -> Callable[[float], float]:
        ramp = self.ramp
        return lambda xi: xi + ramp.scalar(xi) * t - x

    def left_foot(self, x: float, t: float) -> float:
        """Foot on the branch left of the fold, clamped to the fold point."""
        g = self._residual(x, t)
        fold = self.fold_points(t)[0]
        if g(fold) <= 0.0:
            return fold
        return bisect_scalar(g, x - t - 1.0, fold, what="left characteristic foot")

    def right_foot(self, x: float, t: float) -> float:
        g = self._residual(x, t)
        fold = self.fold_points(t)[1]
        if g(fold) >= 0.0:
            return fold
        return bisect_scalar(g, fold, x + 1.0, what="right characteristic foot")

    def _shock_rhs(self, t: float, x: float) -> Tuple[float, float, float]:
        lo = self.left_foot(x, t)
        hi = self.right_foot(x, t)
        return 0.5 * (self.ramp.scalar(lo) + self.ramp.scalar(hi)), lo, hi

    @cached_property
    def shock_path(self) -> ShockPath:
        return burgers_shock_path(self)

    def shock_position(self, t: float) -> float:
        """x_S(t); NaN before the shock exists."""
        if t < self.t1:
            return math.nan
        if t > self.t_final + 1e-12:
            raise ArgumentError(f"t={t} beyond t_final={self.t_final}")
        return float(self.shock_path.position(t))

    def lagrangian_interval(self, t: float) -> Optional[Interval]:
        """I(t): feet of the characteristics absorbed by the shock (None before t1)."""
        if t < self.t1:
            return None
        xs = self.shock_position(t)
        return (self.left_foot(xs, t), self.right_foot(xs, t))

    def lagrangian_half_width(self, t: float) -> float:
        """Half-width s of I(t) for the symmetric ramp: s = (t/2) sin(pi s / (2 gamma)) until t = 2 gamma."""
        if t < self.t1:
            return 0.0
        if t >= 2.0 * self.gamma:
            return 0.5 * t
        k = math.pi / (2.0 * self.gamma)
        lo = self.fold_points(t)[1] - self.x0
        return bisect_scalar(lambda s: s - 0.5 * t * math.sin(k * s), lo, self.gamma, what="half-width")

    @cached_property
    def t2(self) -> float:
        """First time I(t) covers the whole ramp, by bisection on t."""
        lo_ramp, hi_ramp = self.x0 - self.gamma, self.x0 + self.gamma

        def covers(t: float) -> bool:
            interval = self.lagrangian_interval(t)
            return interval is not None and interval[0] <= lo_ramp + 1e-12 and interval[1] >= hi_ramp - 1e-12

        lo, hi = self.t1, self.t_final
        if not covers(hi):
            raise ArgumentError(f"shock formation not complete by t_final={self.t_final}")
        while hi - lo > T2_TOL:
            mid = 0.5 * (lo + hi)
            if covers(mid):
                hi = mid
            else:
                lo = mid
        return hi

    # -- solution and maps -----------------------------------------------------

    def _check_time(self, t: float) -> None:
        if not 0.0 <= t <= self.t_final + 1e-12:
            raise ArgumentError(f"t={t} outside [0, {self.t_final}]")

    def solution(self, x: ArrayLike, t: float, mu: Params = ()) -> FloatArray:
        x = np.asarray(x, dtype=float)
        self._check_time(t)
        if t == 0.0:
            return self.ramp(x)
        lo = x - t - 1.0
        hi = x + 1.0
        if t >= self.t1:
            xs = self.shock_position(t)
            fold_a, fold_b = self.fold_points(t)
            left = x <= xs
            lo = np.where(left, lo, fold_b)
            hi = np.where(left, fold_a, hi)
        feet = bisect_increasing(lambda xi: xi + self.ramp(xi) * t - x, lo, hi)
        return self.ramp(feet)

    def characteristic_map(self, t: float, grid: Optional[ArrayLike] = None) -> TransportMapSample:
        """X(t, .): x + u0(x) t off I(t), the shock position on I(t)."""
        self._check_time(t)
        grid = np.linspace(0.0, self.length, 1025) if grid is None else np.asarray(grid, dtype=float)
        values = grid + self.ramp(grid) * t
        derivative = 1.0 + self.ramp.derivative(grid) * t
        interval = self.lagrangian_interval(t)
        if interval is not None:
            inside = (grid >= interval[0]) & (grid <= interval[1])
            values = np.where(inside, self.shock_position(t), values)
            derivative = np.where(inside, 0.0, derivative)
        return TransportMapSample(float(t), (), grid, values, derivative, strict=False)

    def y_map(self, x: ArrayLike, t: float) -> FloatArray:
        """Displacement Y(t, x) = X(t, x) - x."""
        x = np.asarray(x, dtype=float)
        sample = self.characteristic_map(t, x.reshape(-1))
        return (sample.values - sample.grid).reshape(x.shape)

    # -- diagnostics -------------------------------------------------------------

    def mass(self, values: ArrayLike) -> float:
        """Physical integral of a sampled column on the window grid."""
        values = np.asarray(values, dtype=float)
        grid = np.linspace(0.0, self.length, values.size)
        return float(np.trapezoid(values, grid))

    def expected_mass(self, t: float, n_quad: int = 2**14) -> float:
        """Integral of u0 plus the boundary flux balance (inflow 1/2, outflow 0)."""
        grid = np.linspace(0.0, self.length, n_quad)
        return float(np.trapezoid(self.ramp(grid), grid)) + 0.5 * t


def burgers_shock_path(problem: BurgersProblem, n_steps: Optional[int] = None) -> ShockPath:
    """Integrate x_S' = (u_L + u_R) / 2 from (t1, x0 + u0(x0) t1) to t_final with RK4."""
    t1 = problem.t1
    span = problem.t_final - t1
    if n_steps is None:
        n_steps = max(1, math.ceil(span / SHOCK_STEP))
    if n_steps < 1 or span / n_steps > SHOCK_STEP + 1e-15:
        raise ArgumentError(f"n_steps={n_steps} gives a shock step above {SHOCK_STEP}")
    h = span / n_steps

    times = t1 + h * np.arange(n_steps + 1)
    positions = np.empty(n_steps + 1)
    speeds = np.empty(n_steps + 1)
    lower = np.empty(n_steps + 1)
    upper = np.empty(n_steps + 1)

    x = problem.x0 + problem.ramp.scalar(problem.x0) * t1
    rhs = problem._shock_rhs
    for i in range(n_steps + 1):
        t = float(times[i])
        k1, lower[i], upper[i] = rhs(t, x)
        positions[i] = x
        speeds[i] = k1
        if i == n_steps:
            break
        k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1)[0]
        k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2)[0]
        k4 = rhs(t + h, x + h * k3)[0]
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    logger.debug("shock path: %d RK4 steps from t1=%.6f, x_S(t_final)=%.6f", n_steps, t1, positions[-1])
    return ShockPath(times, positions, speeds, lower, upper)


def burgers_characteristic_map(problem: BurgersProblem, t: float, grid: Optional[ArrayLike] = None) -> TransportMapSample:
    return problem.characteristic_map(t, grid)


def burgers_solution(problem: BurgersProblem, x: ArrayLike, t: float) -> FloatArray:
    return problem.solution(x, t)


def total_variation(values: ArrayLike) -> float:
    return float(np.sum(np.abs(np.diff(np.asarray(values, dtype=float)))))
