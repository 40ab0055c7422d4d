"""Sampled monotonicity certificates for scalar networks."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ArgumentError, MonotonicityError, StructuralError
from ..netcore.network import DeepNetwork, eval_network
from ..netcore.two_layer import build_full_two_layer

MONOTONE_SLACK = 1e-10
DEFAULT_N_CHECK = 2049

Interval = Tuple[float, float]


@dataclass(frozen=True, eq=False)
class MonotoneNetwork:
    """A scalar network certified non-decreasing on ``domain``."""

    net: DeepNetwork
    domain: Interval
    monotone_certificate: float

    @property
    def width(self) -> float:
        return self.domain[1] - self.domain[0]

    def image(self) -> Interval:
        return float(eval_network(self.net, self.domain[0])), float(eval_network(self.net, self.domain[1]))

    def __call__(self, x: ArrayLike) -> float | NDArray[np.float64]:
        return eval_network(self.net, x)


def check_monotone(net: DeepNetwork, domain: Interval, n_check: int = DEFAULT_N_CHECK) -> MonotoneNetwork:
    """
    Certify f(x_i) <= f(x_{i+1}) + 1e-10 on n_check equidistant points.

    Raises MonotonicityError with the first violating pair.
    """
    if n_check < 2:
        raise ArgumentError(f"n_check must be at least 2, got {n_check}")
    if net.input_width != 1 or net.output_width != 1:
        raise StructuralError(f"monotone maps are scalar, got dims {net.dims}")
    lo, hi = float(domain[0]), float(domain[1])
    if not hi > lo:
        raise ArgumentError(f"degenerate domain {domain}")
    x = np.linspace(lo, hi, n_check)
    values = np.asarray(eval_network(net, x))
    steps = np.diff(values)
    bad = np.flatnonzero(steps < -MONOTONE_SLACK)
    if bad.size:
        i = int(bad[0])
        raise MonotonicityError(float(x[i]), float(x[i + 1]), float(values[i]), float(values[i + 1]))
    return MonotoneNetwork(net, (lo, hi), float(steps.min()))


def random_monotone_network(
    rng: np.random.Generator, pieces: int = 16, domain: Interval = (0.0, 1.0), min_slope: float = 0.05
) -> MonotoneNetwork:
    """
    Strictly increasing piecewise-linear 2-layer network from 0 to 1.

    Piece increments are drawn from [min_slope, 1] and normalized, so the
    image of ``domain`` is exactly [0, 1].
    """
    if pieces < 1:
        raise ArgumentError(f"pieces must be at least 1, got {pieces}")
    increments = rng.uniform(min_slope, 1.0, pieces)
    nodal = np.concatenate([[0.0], np.cumsum(increments)]) / increments.sum()
    solution = build_full_two_layer(pieces + 1, nodal, domain)
    return check_monotone(solution.network, domain)
