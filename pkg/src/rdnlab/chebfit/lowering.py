"""Lowering Chebyshev series to fixed-hidden-layer 2-layer networks."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.typing import ArrayLike, NDArray

from ..core.errors import StructuralError
from ..netcore.two_layer import FullTwoLayerSolution, build_full_two_layer, equidistant_grid, outer_weights_from_samples
from .series import ChebyshevSeries, cheb_eval

Interval = Tuple[float, float]


def cheb_to_two_layer(s: ChebyshevSeries, n_delta: int) -> FullTwoLayerSolution:
    """Piecewise-linear interpolant of the series on n_delta equidistant nodes."""
    grid = equidistant_grid(n_delta, s.interval)
    return build_full_two_layer(n_delta, np.asarray(cheb_eval(s, grid)), s.interval)


@dataclass(frozen=True, eq=False)
class ChebyshevTwoLayerBasis:
    """
    One lowered network per basis polynomial p_m = T_{m-1}.

    All members share the hinge hidden layer, so a series with coefficients
    gamma lowers to the network whose outer weights are ``weights @ gamma``.
    """

    weights: NDArray[np.float64]
    interval: Interval

    @classmethod
    def build(cls, n_terms: int, n_delta: int, interval: Interval = (0.0, 1.0)) -> "ChebyshevTwoLayerBasis":
        grid = equidistant_grid(n_delta, interval)
        a, b = interval
        vander = C.chebvander((2.0 * grid - a - b) / (b - a), n_terms - 1)
        weights = np.column_stack([outer_weights_from_samples(vander[:, m]) for m in range(n_terms)])
        return cls(weights, (float(a), float(b)))

    @property
    def n_delta(self) -> int:
        return int(self.weights.shape[0])

    @property
    def n_terms(self) -> int:
        return int(self.weights.shape[1])

    def member(self, m: int) -> FullTwoLayerSolution:
        """Lowered network of p_m (1-based like the basis index)."""
        return FullTwoLayerSolution(self.n_delta, self.weights[:, m - 1], self.interval)

    def combine(self, gamma: ArrayLike) -> FullTwoLayerSolution:
        gamma = np.asarray(gamma, dtype=float).reshape(-1)
        if gamma.shape[0] > self.n_terms:
            raise StructuralError(f"{gamma.shape[0]} coefficients for {self.n_terms} basis networks")
        return FullTwoLayerSolution(self.n_delta, self.weights[:, : gamma.shape[0]] @ gamma, self.interval)

    def lower(self, s: ChebyshevSeries) -> FullTwoLayerSolution:
        if s.interval != self.interval:
            raise StructuralError(f"series interval {s.interval} differs from basis interval {self.interval}")
        return self.combine(s.coeffs)
