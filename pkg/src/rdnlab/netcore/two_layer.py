"""
Fixed-hidden-layer 2-layer networks for piecewise-linear full solutions.

The hidden layer is the same for every function on a given grid: unit
hinge functions phi_n(x) = relu((x - lo)/dx - (n - 2)) for n = 1..N_delta.
Only the outer weights w vary. The outer bias is fixed at zero.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ArgumentError, StructuralError
from .network import ActivationKind, DeepNetwork, eval_network, two_layer_network

Interval = Tuple[float, float]


def equidistant_grid(n_delta: int, interval: Interval = (0.0, 1.0)) -> NDArray[np.float64]:
    if n_delta < 2:
        raise ArgumentError(f"n_delta must be at least 2, got {n_delta}")
    return np.linspace(interval[0], interval[1], n_delta)


def hinge_hidden_layer(n_delta: int, interval: Interval = (0.0, 1.0)) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Hidden weights and biases of the fixed hinge layer."""
    lo, hi = interval
    dx = (hi - lo) / (n_delta - 1)
    weights = np.full(n_delta, 1.0 / dx)
    # hidden biases [1, 0, -1, ...] shifted by the window origin
    biases = 2.0 - np.arange(1, n_delta + 1, dtype=float) - lo / dx
    return weights, biases


def outer_weights_from_samples(samples: ArrayLike) -> NDArray[np.float64]:
    """Invert the hinge basis: w_1 = v_0, w_2 = v_1 - 2 v_0, then second differences."""
    values = np.asarray(samples, dtype=float)
    padded = np.concatenate(([0.0, 0.0], values))
    return np.diff(padded, n=2)


@dataclass(frozen=True, eq=False)
class FullTwoLayerSolution:
    """Continuous piecewise-linear function stored by its outer weights."""

    n_delta: int
    outer_weights: NDArray[np.float64]
    interval: Interval = (0.0, 1.0)

    def __post_init__(self) -> None:
        weights = np.array(self.outer_weights, dtype=float).reshape(-1)
        if self.n_delta < 2:
            raise ArgumentError(f"n_delta must be at least 2, got {self.n_delta}")
        if weights.shape[0] != self.n_delta:
            raise StructuralError(f"{weights.shape[0]} outer weights for n_delta={self.n_delta}")
        if not self.interval[1] > self.interval[0]:
            raise ArgumentError(f"degenerate interval {self.interval}")
        weights.setflags(write=False)
        object.__setattr__(self, "outer_weights", weights)
        object.__setattr__(self, "interval", (float(self.interval[0]), float(self.interval[1])))

    @property
    def dx(self) -> float:
        return (self.interval[1] - self.interval[0]) / (self.n_delta - 1)

    @property
    def grid(self) -> NDArray[np.float64]:
        return equidistant_grid(self.n_delta, self.interval)

    @cached_property
    def network(self) -> DeepNetwork:
        hidden_w, hidden_b = hinge_hidden_layer(self.n_delta, self.interval)
        return two_layer_network(hidden_w, hidden_b, ActivationKind.RELU, self.outer_weights)

    @cached_property
    def nodal_values(self) -> NDArray[np.float64]:
        """Values at the grid nodes (cumulative sums of the hinge slopes)."""
        return np.cumsum(np.cumsum(self.outer_weights))

    def __call__(self, x: ArrayLike) -> float | NDArray[np.float64]:
        return eval_network(self.network, x)


def build_full_two_layer(n_delta: int, samples: ArrayLike, interval: Interval = (0.0, 1.0)) -> FullTwoLayerSolution:
    """2-layer network reproducing the piecewise-linear interpolant of nodal samples."""
    if n_delta < 2:
        raise ArgumentError(f"n_delta must be at least 2, got {n_delta}")
    values = np.asarray(samples, dtype=float).reshape(-1)
    if values.shape[0] != n_delta:
        raise StructuralError(f"{values.shape[0]} samples for n_delta={n_delta}")
    return FullTwoLayerSolution(n_delta, outer_weights_from_samples(values), interval)
