"""
2N-balls of manifold members and their Gram-Schmidt orthogonalization.

phi_n = sum_k b_k u(., tau_n + (k-1) dt) combines K members with a
stencil. The singular feature of u moves along a path; each phi_n is then
concentrated in S_n = {|x - path(tau_n + (K-1) dt / 2)| <= radius}, and
pairwise disjoint S_n make the normalized Gram matrix nearly diagonal.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ArgumentError, DependenceError, DominanceError, ScheduleError, StructuralError
from .stencil import StencilCoefficients

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
Member = Callable[[FloatArray, float], FloatArray]
Path = Callable[[float], float]

DOMINANCE_SLACK = 1e-10
DEPENDENCE_TOL = 1e-12
MAX_DT = 0.5


def trapezoid_weights(grid: ArrayLike) -> FloatArray:
    grid = np.asarray(grid, dtype=float)
    dx = np.diff(grid)
    w = np.zeros_like(grid)
    w[:-1] += 0.5 * dx
    w[1:] += 0.5 * dx
    return w


@dataclass(frozen=True, eq=False)
class Ball2N:
    """2N grid-sampled functions with their member coefficients and regions."""

    functions: FloatArray
    coefficients: FloatArray
    taus: FloatArray
    regions: FloatArray
    grid: FloatArray
    weights: FloatArray
    dt: float
    stencil: Optional[StencilCoefficients] = None

    def __post_init__(self) -> None:
        count, points = self.functions.shape
        if count % 2:
            raise StructuralError(f"a 2N-ball needs an even function count, got {count}")
        if points != self.grid.size or points != self.weights.size:
            raise StructuralError("functions, grid and weights disagree in length")
        if self.coefficients.shape != self.taus.shape or self.coefficients.shape[0] != count:
            raise StructuralError("one coefficient per sample time and function is required")

    @property
    def n(self) -> int:
        return self.functions.shape[0] // 2

    def norms(self) -> FloatArray:
        return np.sqrt(np.einsum("ij,ij,j->i", self.functions, self.functions, self.weights))

    def gram(self) -> FloatArray:
        """Gram matrix of the normalized functions."""
        unit = self.functions / self.norms()[:, None]
        return (unit * self.weights) @ unit.T

    def off_diagonal_mass(self) -> FloatArray:
        g = np.abs(self.gram())
        return np.sum(g, axis=1) - np.diag(g)

    def is_dominant(self) -> bool:
        return bool(np.all(self.off_diagonal_mass() < 1.0 - DOMINANCE_SLACK))


@dataclass(frozen=True, eq=False)
class OrthogonalBall:
    """psi_n from Gram-Schmidt with phi_n = sum_{m<=n} theta_nm psi_m."""

    ball: Ball2N
    psi: FloatArray
    theta: FloatArray

    @property
    def n(self) -> int:
        return self.ball.n

    def psi_norms(self) -> FloatArray:
        return np.sqrt(np.einsum("ij,ij,j->i", self.psi, self.psi, self.ball.weights))

    def member_coefficients(self) -> FloatArray:
        """|coefficient| sums of each psi_n over manifold members."""
        inverse = np.linalg.inv(self.theta)
        return np.abs(inverse) @ np.sum(np.abs(self.ball.coefficients), axis=1)

    def max_normalized_inner(self) -> float:
        norms = self.psi_norms()
        g = np.abs((self.psi * self.ball.weights) @ self.psi.T) / np.outer(norms, norms)
        np.fill_diagonal(g, 0.0)
        return float(np.max(g))


def _check_regions(regions: FloatArray, dt: float) -> None:
    order = np.argsort(regions[:, 0])
    lo = regions[order, 0]
    hi = regions[order, 1]
    overlap = hi[:-1] - lo[1:]
    if np.any(overlap > 1e-12):
        i = int(np.argmax(overlap))
        raise ScheduleError(
            f"regions S_n overlap by {overlap[i]:.3e} near x={lo[i + 1]:.6g}",
            suggested_dt=0.5 * dt,
        )


def build_ball(
    u: Member,
    taus: Sequence[float],
    dt: float,
    stencil: StencilCoefficients,
    singularity_path: Path,
    region_radius: float,
    grid: ArrayLike,
    weights: Optional[ArrayLike] = None,
) -> Ball2N:
    """
    Sample phi_n = sum_k b_k u(x, tau_n + (k-1) dt) and check the ball.

    Raises:
    - ScheduleError if dt > 1/2 or two regions S_n overlap
    - DependenceError if some phi_n vanishes on the grid
    - DominanceError if the normalized Gram matrix is not strictly diagonally dominant
    """
    taus = np.asarray(taus, dtype=float)
    if taus.size == 0 or taus.size % 2:
        raise ArgumentError(f"need 2N sample start times, got {taus.size}")
    if not 0.0 < dt <= MAX_DT:
        raise ScheduleError(f"dt={dt} outside (0, {MAX_DT}]", suggested_dt=MAX_DT if dt > MAX_DT else None)
    grid = np.asarray(grid, dtype=float)
    weights = trapezoid_weights(grid) if weights is None else np.asarray(weights, dtype=float)

    span = (stencil.K - 1) * dt
    centers = np.array([singularity_path(float(t) + 0.5 * span) for t in taus])
    regions = np.column_stack((centers - region_radius, centers + region_radius))
    _check_regions(regions, dt)

    sample_times = taus[:, None] + dt * np.arange(stencil.K)[None, :]
    functions = np.empty((taus.size, grid.size))
    for n, times in enumerate(sample_times):
        functions[n] = stencil.apply(np.stack([u(grid, float(t)) for t in times]))
    coefficients = np.broadcast_to(stencil.b, sample_times.shape).copy()

    ball = Ball2N(functions, coefficients, sample_times, regions, grid, weights, float(dt), stencil)
    norms = ball.norms()
    if np.any(norms == 0.0):
        n = int(np.flatnonzero(norms == 0.0)[0])
        raise DependenceError(f"phi_{n + 1} vanishes on the grid (tau={taus[n]:.6g})")
    mass = ball.off_diagonal_mass()
    if np.any(mass >= 1.0 - DOMINANCE_SLACK):
        n = int(np.argmax(mass))
        raise DominanceError(
            f"Gram row {n + 1} not dominant: off-diagonal mass {mass[n]:.4f}",
            suggested_dt=0.5 * dt,
        )
    logger.debug("ball N=%d dt=%.4g: max off-diagonal mass %.3e", ball.n, dt, float(np.max(mass)))
    return ball


def gram_schmidt(ball: Ball2N) -> OrthogonalBall:
    """Modified Gram-Schmidt without normalization, recording the triangular factor."""
    count = ball.functions.shape[0]
    w = ball.weights
    psi = np.empty_like(ball.functions)
    theta = np.eye(count)
    sq_norms = np.empty(count)
    phi_norms = ball.norms()
    for n in range(count):
        v = ball.functions[n].copy()
        for m in range(n):
            coeff = float(np.dot(v * w, psi[m])) / sq_norms[m]
            if coeff != 0.0:
                v -= coeff * psi[m]
            theta[n, m] = coeff
        sq = float(np.dot(v * w, v))
        if np.sqrt(sq) < DEPENDENCE_TOL * phi_norms[n]:
            raise DependenceError(f"psi_{n + 1} is numerically zero: functions are linearly dependent")
        psi[n] = v
        sq_norms[n] = sq
    return OrthogonalBall(ball, psi, theta)


def a_np(coefficients: ArrayLike, p: float = 1.0) -> float:
    """
    Coefficient size A_{N,p} of a ball.

    - p = 1: max_n sum_k |a_nk|
    - p > 1: max_n (sum_k k^p |a_nk|^p)^(1/p) with k counted from 1
    """
    if p < 1.0:
        raise ArgumentError(f"p must be >= 1, got {p}")
    a = np.abs(np.atleast_2d(np.asarray(coefficients, dtype=float)))
    if p == 1.0:
        return float(np.max(np.sum(a, axis=1)))
    k = np.arange(1, a.shape[1] + 1, dtype=float)
    return float(np.max(np.sum((k * a) ** p, axis=1) ** (1.0 / p)))
