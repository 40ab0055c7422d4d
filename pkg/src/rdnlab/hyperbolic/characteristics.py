"""
Characteristic curves of the color equation.

X'(s) = c(X; mu) is integrated with classical fixed-step RK4. The speed is
autonomous, so the forward flow is a semigroup and the backward flow is the
same scheme with the sign of c reversed.
"""

import math
from typing import Callable, Literal, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.base_problem import Params
from ..core.errors import ArgumentError

FloatArray = NDArray[np.float64]
Speed = Callable[[FloatArray], FloatArray]
Direction = Literal["forward", "backward"]

#: parameter box (mu1, mu2, mu3) of the variable-speed family
MU_BOX = ((0.25, 0.50), (2.0 * math.pi, 6.0 * math.pi), (math.pi, 1.1 * math.pi))
DEFAULT_MU: Params = (0.3, 2.0 * math.pi, math.pi)


def color_speed(x: ArrayLike, mu: Params = DEFAULT_MU) -> FloatArray:
    """c(x; mu) = 1.5 + mu1 sin(mu2 x) + 0.1 cos(mu3 x)."""
    mu1, mu2, mu3 = mu
    x = np.asarray(x, dtype=float)
    return 1.5 + mu1 * np.sin(mu2 * x) + 0.1 * np.cos(mu3 * x)


def check_parameters(mu: Params) -> Params:
    if len(mu) != 3:
        raise ArgumentError(f"color parameters need three entries, got {len(mu)}")
    for value, (lo, hi), name in zip(mu, MU_BOX, ("mu1", "mu2", "mu3")):
        if not lo - 1e-12 <= value <= hi + 1e-12:
            raise ArgumentError(f"{name}={value} outside [{lo}, {hi}]")
    return tuple(float(m) for m in mu)


def rk4_flow(speed: Speed, x0: ArrayLike, t: float, n_steps: int) -> FloatArray:
    """Flow of x' = speed(x) over signed time t with n_steps RK4 steps."""
    if n_steps < 1:
        raise ArgumentError(f"n_steps must be >= 1, got {n_steps}")
    x = np.array(x0, dtype=float)
    h = t / n_steps
    for _ in range(n_steps):
        k1 = speed(x)
        k2 = speed(x + 0.5 * h * k1)
        k3 = speed(x + 0.5 * h * k2)
        k4 = speed(x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return x


def integrate_characteristic(
    x0: ArrayLike,
    t: float,
    mu: Params = DEFAULT_MU,
    direction: Direction = "forward",
    n_steps: int = 1000,
    speed: Optional[Speed] = None,
) -> FloatArray:
    """
    Position of the characteristic through x0 after time t.

    ``speed`` replaces c(.; mu) (constant-speed advection uses it).
    """
    if t < 0.0:
        raise ArgumentError(f"t must be non-negative, got {t}")
    if direction not in ("forward", "backward"):
        raise ArgumentError(f"unknown direction {direction!r}")
    flow_speed: Speed = speed if speed is not None else (lambda x: color_speed(x, mu))
    signed = t if direction == "forward" else -t
    return rk4_flow(flow_speed, x0, signed, n_steps)
