"""
Initial-condition profiles.

Every profile is vectorized and knows how to express itself as a network:
steps and kinks exactly (threshold / ReLU units), smooth profiles as their
piecewise-linear interpolant on a grid.
"""

import math
from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ArgumentError
from ..netcore.network import ActivationKind, DeepNetwork, two_layer_network
from ..netcore.two_layer import build_full_two_layer, equidistant_grid

FloatArray = NDArray[np.float64]
Interval = Tuple[float, float]


class Profile(ABC):
    """A scalar initial datum u0."""

    #: largest s with a continuous s-th derivative, -1 for a jump (None if smooth)
    smoothness: int | None = None

    #: position of the jump or kink (None if smooth)
    singular_point: float | None = None

    @property
    def jump_order(self) -> int | None:
        """Order of the derivative that jumps at the singular point."""
        return None if self.smoothness is None else self.smoothness + 1

    @abstractmethod
    def __call__(self, x: ArrayLike) -> FloatArray:
        """Evaluate on an array of positions."""

    def to_network(self, interval: Interval = (0.0, 1.0), n_delta: int = 1025) -> DeepNetwork:
        grid = equidistant_grid(n_delta, interval)
        return build_full_two_layer(n_delta, self(grid), interval).network


class StepProfile(Profile):
    """left for x <= x_jump, right for x > x_jump."""

    smoothness = -1

    def __init__(self, x_jump: float, left: float = 1.0, right: float = 0.0):
        self.x_jump = float(x_jump)
        self.singular_point = self.x_jump
        self.left = float(left)
        self.right = float(right)

    def __call__(self, x: ArrayLike) -> FloatArray:
        x = np.asarray(x, dtype=float)
        return np.where(x <= self.x_jump, self.left, self.right)

    def to_network(self, interval: Interval = (0.0, 1.0), n_delta: int = 1025) -> DeepNetwork:
        return two_layer_network([1.0], [-self.x_jump], ActivationKind.THRESHOLD, [self.right - self.left], [self.left])

    def __repr__(self) -> str:
        return f"StepProfile(x_jump={self.x_jump}, left={self.left}, right={self.right})"


class KinkProfile(Profile):
    """Linear from 1 at x = 0 down to 0 at x_kink, constant 1 left of 0."""

    smoothness = 0

    def __init__(self, x_kink: float):
        if x_kink <= 0.0:
            raise ArgumentError(f"kink location must be positive, got {x_kink}")
        self.x_kink = float(x_kink)
        self.singular_point = self.x_kink

    def __call__(self, x: ArrayLike) -> FloatArray:
        return np.clip((self.x_kink - np.asarray(x, dtype=float)) / self.x_kink, 0.0, 1.0)

    def to_network(self, interval: Interval = (0.0, 1.0), n_delta: int = 1025) -> DeepNetwork:
        # (x_k - x)_+ - (-x)_+ clamps at x_k left of 0
        scale = 1.0 / self.x_kink
        return two_layer_network([-1.0, -1.0], [self.x_kink, 0.0], ActivationKind.RELU, [scale, -scale])

    def __repr__(self) -> str:
        return f"KinkProfile(x_kink={self.x_kink})"


class BumpProfile(Profile):
    """Gaussian bump exp(-((x - center)/width)^2)."""

    def __init__(self, center: float = 0.3, width: float = 0.08):
        self.center = float(center)
        self.width = float(width)

    def __call__(self, x: ArrayLike) -> FloatArray:
        z = (np.asarray(x, dtype=float) - self.center) / self.width
        return np.exp(-z * z)

    def __repr__(self) -> str:
        return f"BumpProfile(center={self.center}, width={self.width})"


class BurgersRamp(Profile):
    """1 left of the ramp, 0 right of it, half a sine period in between."""

    smoothness = 1

    def __init__(self, x0: float = 0.3, gamma: float = 0.2):
        if gamma <= 0.0:
            raise ArgumentError(f"ramp half-width must be positive, got {gamma}")
        self.x0 = float(x0)
        self.gamma = float(gamma)

    def __call__(self, x: ArrayLike) -> FloatArray:
        return burgers_u0(x, self.x0, self.gamma)

    def derivative(self, x: ArrayLike) -> FloatArray:
        x = np.asarray(x, dtype=float)
        inside = np.abs(x - self.x0) < self.gamma
        slope = -(math.pi / (4.0 * self.gamma)) * np.cos(math.pi * (x - self.x0) / (2.0 * self.gamma))
        return np.where(inside, slope, 0.0)

    def scalar(self, x: float) -> float:
        """Pure-float evaluation for sequential root finding."""
        if x <= self.x0 - self.gamma:
            return 1.0
        if x >= self.x0 + self.gamma:
            return 0.0
        return 0.5 - 0.5 * math.sin(math.pi * (x - self.x0) / (2.0 * self.gamma))

    def __repr__(self) -> str:
        return f"BurgersRamp(x0={self.x0}, gamma={self.gamma})"


def burgers_u0(x: ArrayLike, x0: float = 0.3, gamma: float = 0.2) -> FloatArray:
    """Non-increasing sine ramp from 1 to 0 over [x0 - gamma, x0 + gamma]."""
    x = np.asarray(x, dtype=float)
    ramp = 0.5 - 0.5 * np.sin(np.pi * np.clip(x - x0, -gamma, gamma) / (2.0 * gamma))
    return ramp


def singular_profile(s: int, location: float = 0.1) -> Profile:
    """Profile of smoothness s, its (s + 1)-th derivative jumping at ``location``."""
    if s == -1:
        return StepProfile(location)
    if s == 0:
        return KinkProfile(location)
    raise ArgumentError(f"singular profiles are available for s in {{-1, 0}}, got {s}")
