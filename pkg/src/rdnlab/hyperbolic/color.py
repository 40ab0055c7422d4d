"""
Color equation u_t + c(x; mu) u_x = 0 on (0, 1) with inflow at x = 0.

The solution is u0 evaluated at the backward characteristic foot; feet that
leave the domain through x = 0 pick up the inflow value u0(0).
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.base_problem import BaseProblem, Interval, Params
from ..core.errors import ArgumentError, MonotonicityError
from .characteristics import DEFAULT_MU, Direction, Speed, check_parameters, color_speed, rk4_flow
from .profiles import Profile, StepProfile

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

#: RK4 step bound relative to t_final
STEP_FRACTION = 1e-3
SPEED_CHECK_POINTS = 1001


@dataclass(frozen=True, eq=False)
class TransportMapSample:
    """Samples of x -> X(t, x) and its derivative on a grid."""

    t: float
    mu: Params
    grid: FloatArray
    values: FloatArray
    derivative: FloatArray
    strict: bool = True

    def __post_init__(self) -> None:
        steps = np.diff(self.values)
        bad = steps <= 0.0 if self.strict else steps < 0.0
        if np.any(bad):
            i = int(np.flatnonzero(bad)[0])
            raise MonotonicityError(
                float(self.grid[i]), float(self.grid[i + 1]), float(self.values[i]), float(self.values[i + 1])
            )


class ColorProblem(BaseProblem):
    """Variable-speed transport of a profile u0 with parameters mu."""

    name = "color"

    def __init__(
        self,
        t_final: float = 0.5,
        u0: Optional[Profile] = None,
        mu: Params = DEFAULT_MU,
        speed: Optional[Speed] = None,
    ):
        super().__init__(t_final)
        self.u0: Profile = u0 if u0 is not None else StepProfile(0.1)
        self._speed_override = speed
        self.mu: Params = tuple(mu) if speed is not None else check_parameters(mu)
        self.c0 = self.check_speed(self.mu)

    @property
    def window(self) -> Interval:
        return (0.0, 1.0)

    def speed(self, mu: Params = ()) -> Speed:
        if self._speed_override is not None:
            return self._speed_override
        params = self._params(mu)
        return lambda x: color_speed(x, params)

    def check_speed(self, mu: Params = ()) -> float:
        """Minimum of c on [0, 1]; raises when it is not positive."""
        c = np.asarray(self.speed(mu)(np.linspace(0.0, 1.0, SPEED_CHECK_POINTS)), dtype=float)
        c0 = float(np.min(c))
        if c0 <= 0.0:
            raise ArgumentError(f"speed must be positive on [0, 1], min is {c0:.6g} for mu={mu or self.mu}")
        return c0

    def n_steps(self, t: float) -> int:
        return max(1, math.ceil(abs(t) / (STEP_FRACTION * self.t_final) - 1e-9))

    def flow(self, x0: ArrayLike, t: float, mu: Params = (), direction: Direction = "forward") -> FloatArray:
        signed = t if direction == "forward" else -t
        return rk4_flow(self.speed(mu), x0, signed, self.n_steps(t))

    def solution(self, x: ArrayLike, t: float, mu: Params = ()) -> FloatArray:
        x = np.asarray(x, dtype=float)
        if t == 0.0:
            return np.asarray(self.u0(x), dtype=float)
        if isinstance(self.u0, StepProfile):
            front = float(self.front(t, mu))
            return np.where(x <= front, self.u0.left, self.u0.right)
        feet = self.flow(x, t, mu, "backward")
        inflow = float(self.u0(np.array(0.0)))
        return np.where(feet < 0.0, inflow, self.u0(feet))

    def front(self, t: float, mu: Params = ()) -> float:
        """Position at time t of the jump of a step datum."""
        if not isinstance(self.u0, StepProfile):
            raise ArgumentError("front tracking needs a step profile")
        return float(self.flow(np.array([self.u0.x_jump]), t, mu)[0])

    def transport(self, t: float, mu: Params = ()) -> Callable[[FloatArray], FloatArray]:
        """z -> X(t, z; mu)."""
        return lambda z: self.flow(z, t, mu)

    def lagrangian_window(self, t: float, mu: Params = ()) -> Interval:
        """Backward feet of the window ends: the domain of the transport map at time t."""
        ends = self.flow(np.array([0.0, 1.0]), t, mu, "backward")
        return (float(ends[0]), float(ends[1]))

    def transport_map(self, t: float, mu: Params = (), grid: Optional[ArrayLike] = None) -> TransportMapSample:
        """Sampled forward map with derivative c(X) / c(x) (autonomous flow)."""
        grid = np.linspace(0.0, 1.0, 1025) if grid is None else np.asarray(grid, dtype=float)
        values = self.flow(grid, t, mu)
        speed = self.speed(mu)
        derivative = np.asarray(speed(values), dtype=float) / np.asarray(speed(grid), dtype=float)
        return TransportMapSample(float(t), self._params(mu), grid, values, derivative)

    def default_mus(self) -> List[Params]:
        return [self.mu]

    def _params(self, mu: Params) -> Params:
        return tuple(mu) if mu else self.mu


class AdvectionProblem(ColorProblem):
    """Constant-speed advection of a jump at x = 0: the manifold of shifted steps."""

    name = "advection"

    def __init__(self, t_final: float = 1.0, u0: Optional[Profile] = None):
        super().__init__(
            t_final=t_final,
            u0=u0 if u0 is not None else StepProfile(0.0),
            mu=(),
            speed=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        )

    def front(self, t: float, mu: Params = ()) -> float:
        if not isinstance(self.u0, StepProfile):
            raise ArgumentError("front tracking needs a step profile")
        return self.u0.x_jump + t

    def default_mus(self) -> List[Params]:
        return [()]


def color_solution(x: ArrayLike, t: float, mu: Params = DEFAULT_MU, u0: Optional[Profile] = None) -> FloatArray:
    """u(x, t; mu) for a one-off evaluation."""
    return ColorProblem(t_final=max(float(t), STEP_FRACTION), u0=u0, mu=mu).solution(x, t, mu)
