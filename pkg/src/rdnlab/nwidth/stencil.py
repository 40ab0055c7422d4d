"""Scaled finite-difference stencils from the Vandermonde system."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..core.errors import ArgumentError, NumericalError

MAX_STENCIL_WIDTH = 12
RESIDUAL_TOL = 1e-8


def vandermonde_matrix(K: int) -> NDArray[np.float64]:
    """A[i, k] = k^i / i! for i, k = 0 .. K-1."""
    i = np.arange(K)[:, None]
    k = np.arange(K, dtype=float)[None, :]
    factorials = np.array([math.factorial(int(n)) for n in range(K)], dtype=float)[:, None]
    return k**i / factorials


@dataclass(frozen=True, eq=False)
class StencilCoefficients:
    """b with sum_k b_k (k-1)^(i-1) / (i-1)! = [i-1 == s1] for i = 1..K."""

    K: int
    s1: int
    b: NDArray[np.float64]

    @property
    def residual(self) -> float:
        rhs = np.zeros(self.K)
        rhs[self.s1] = 1.0
        return float(np.max(np.abs(vandermonde_matrix(self.K) @ self.b - rhs)))

    @property
    def abs_sum(self) -> float:
        return float(np.sum(np.abs(self.b)))

    def apply(self, samples: NDArray[np.float64]) -> NDArray[np.float64]:
        """Combine K samples stacked along the first axis."""
        return np.tensordot(self.b, np.asarray(samples, dtype=float), axes=1)


def vandermonde_stencil(K: int, s1: int) -> StencilCoefficients:
    """Stencil b with sum_k b_k p(tau + (k-1) dt) = dt^s1 p^(s1)(tau) for deg p < K."""
    if K > MAX_STENCIL_WIDTH:
        raise ArgumentError(f"stencil width K={K} exceeds {MAX_STENCIL_WIDTH} (Vandermonde conditioning)")
    if K < 1 or not 0 <= s1 < K:
        raise ArgumentError(f"need 0 <= s1 < K, got K={K}, s1={s1}")
    rhs = np.zeros(K)
    rhs[s1] = 1.0
    b = np.linalg.solve(vandermonde_matrix(K), rhs)
    stencil = StencilCoefficients(K, s1, b)
    if stencil.residual > RESIDUAL_TOL:
        raise NumericalError(f"stencil residual {stencil.residual:.3e} above {RESIDUAL_TOL}")
    return stencil
