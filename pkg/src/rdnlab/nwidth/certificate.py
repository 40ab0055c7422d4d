"""
Lower-bound certificates for the N-width of sharply convective manifolds.

An orthogonalized 2N-ball with min ||psi_n|| ~ N^-alpha and bounded member
coefficients A'_{N,1} bounds the N-width from below by ~ N^-alpha. The
certificate checks both across a sweep of N. It is a surrogate: constants
are empirical and the report says so.
"""

import logging
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field

from ..core.base_problem import Params
from ..core.errors import ArgumentError
from ..hyperbolic.burgers import BurgersProblem
from ..hyperbolic.color import AdvectionProblem, ColorProblem
from ..netcore.two_layer import equidistant_grid
from .ball import Ball2N, OrthogonalBall, build_ball, gram_schmidt, trapezoid_weights
from .stencil import vandermonde_stencil

logger = logging.getLogger(__name__)

SURROGATE_LABEL = "lower-bound surrogate (empirical constants)"
DEFAULT_MIN_RATIO = 0.5
DEFAULT_A_BOUND = 100.0


class CertificateRow(BaseModel):
    """Certificate quantities for one ball size N."""

    N: int = Field(..., ge=1)
    min_psi_norm: float = Field(..., ge=0.0, description="min_n ||psi_n||")
    scaled_norm: float = Field(..., ge=0.0, description="min_n ||psi_n|| * N^alpha")
    A_N1: float = Field(..., ge=0.0, description="max_n member-coefficient sum of psi_n")
    dominant: bool = Field(..., description="Normalized Gram matrix strictly diagonally dominant")
    dt: float = Field(..., gt=0.0, description="Sample-time spacing used")


class CertificateReport(BaseModel):
    """Rows over N plus pass/fail flags against the configured constants."""

    manifold: str
    alpha_claim: float
    rows: List[CertificateRow]
    min_ratio: float = Field(DEFAULT_MIN_RATIO, description="Required min/max of scaled norms")
    a_bound: float = Field(DEFAULT_A_BOUND, description="Upper bound required of A'_{N,1}")
    label: str = SURROGATE_LABEL

    @property
    def scaled_ratio(self) -> float:
        scaled = [row.scaled_norm for row in self.rows]
        return min(scaled) / max(scaled) if max(scaled) > 0.0 else 0.0

    @property
    def bounded_below(self) -> bool:
        return self.scaled_ratio >= self.min_ratio

    @property
    def bounded_coefficients(self) -> bool:
        return all(row.A_N1 <= self.a_bound for row in self.rows)

    @property
    def passed(self) -> bool:
        return self.bounded_below and self.bounded_coefficients and all(row.dominant for row in self.rows)

    def summary_text(self) -> str:
        lines = [
            f"manifold: {self.manifold}",
            f"kind: {self.label}",
            f"alpha_claim: {self.alpha_claim:g}",
            f"N: {', '.join(str(row.N) for row in self.rows)}",
            f"scaled_norm min/max: {self.scaled_ratio:.6f} (required >= {self.min_ratio:g})",
            f"max A_N1: {max(row.A_N1 for row in self.rows):.6f} (required <= {self.a_bound:g})",
            f"all dominant: {all(row.dominant for row in self.rows)}",
            f"dt schedule: {', '.join(f'{row.N}:{row.dt:.6g}' for row in self.rows)}",
            f"result: {'PASS' if self.passed else 'FAIL'}",
        ]
        return "\n".join(lines) + "\n"


def certificate_row(ball: OrthogonalBall, alpha_claim: float) -> CertificateRow:
    min_norm = float(np.min(ball.psi_norms()))
    return CertificateRow(
        N=ball.n,
        min_psi_norm=min_norm,
        scaled_norm=min_norm * ball.n**alpha_claim,
        A_N1=float(np.max(ball.member_coefficients())),
        dominant=ball.ball.is_dominant(),
        dt=ball.ball.dt,
    )


def lower_bound_certificate(
    balls: Union[OrthogonalBall, Sequence[OrthogonalBall]],
    alpha_claim: float,
    manifold: str = "",
    min_ratio: float = DEFAULT_MIN_RATIO,
    a_bound: float = DEFAULT_A_BOUND,
) -> CertificateReport:
    """Certificate report over one or more orthogonalized balls (any order of N)."""
    if isinstance(balls, OrthogonalBall):
        balls = [balls]
    if not balls:
        raise ArgumentError("a certificate needs at least one ball")
    rows = sorted((certificate_row(b, alpha_claim) for b in balls), key=lambda row: row.N)
    report = CertificateReport(
        manifold=manifold, alpha_claim=alpha_claim, rows=rows, min_ratio=min_ratio, a_bound=a_bound
    )
    logger.info(
        "%s certificate alpha=%g: scaled ratio %.3f, %s",
        manifold or "ball",
        alpha_claim,
        report.scaled_ratio,
        "PASS" if report.passed else "FAIL",
    )
    return report


# -- ball factories --------------------------------------------------------------


def advection_ball(N: int, n_delta: Optional[int] = None, problem: Optional[AdvectionProblem] = None) -> Ball2N:
    """Strips u(t + dt) - u(t) of the shifted-step manifold, dt = 1/(2N + 2)."""
    problem = problem if problem is not None else AdvectionProblem()
    dt = 1.0 / (2 * N + 2)
    grid = equidistant_grid(max(n_delta or 0, 64 * N + 1))
    taus = dt * np.arange(2 * N)
    x_jump = problem.u0.singular_point or 0.0
    return build_ball(
        lambda x, t: problem.solution(x, t),
        taus,
        dt,
        vandermonde_stencil(2, 1),
        lambda t: x_jump + t,
        0.5 * dt,
        grid,
    )


def burgers_ball(N: int, problem: BurgersProblem, n_delta: int = 4096, t_start: float = 0.5) -> Ball2N:
    """
    Second differences in t of the displacement maps Y(t, .) after shock formation.

    Sampling starts at t_start (after t2) on x > x0 - t_start/2, where
    Y(t, x) = (x_S(t) - x)_+ and the kink travels with speed 1/2.
    """
    if t_start < problem.t2:
        raise ArgumentError(f"t_start={t_start} precedes full shock formation t2={problem.t2:.6g}")
    nu = 0.5 * (problem.t_final - t_start) / (6 * N)
    dt = 2.0 * nu
    taus = t_start + 3.0 * dt * np.arange(2 * N)
    grid = np.linspace(problem.x0 - 0.5 * t_start, problem.length, max(n_delta, 64 * N + 1))
    weights = trapezoid_weights(grid) / problem.length
    return build_ball(
        lambda x, t: problem.y_map(x, t),
        taus,
        dt,
        vandermonde_stencil(3, 2),
        problem.shock_position,
        nu,
        grid,
        weights,
    )


def color_ball(
    N: int,
    problem: ColorProblem,
    mu: Params = (),
    s1: Optional[int] = None,
    K: Optional[int] = None,
    n_delta: int = 2**14,
) -> Ball2N:
    """
    Stencil combinations of color solutions with a singular datum.

    Defaults follow s1 = 2s + 3 and K = s1 + 1 for a datum of smoothness s
    (s = -1 for a step, 0 for a kink).
    Start times are spaced by (c_max / c_min) (K - 1) dt so the regions
    around the moving singularity stay disjoint within [0, t_final].
    """
    profile = problem.u0
    if profile.singular_point is None or profile.jump_order is None:
        raise ArgumentError(f"{profile!r} has no singular point to track")
    s1 = 2 * profile.jump_order + 1 if s1 is None else s1
    K = s1 + 1 if K is None else K
    speed = np.asarray(problem.speed(mu)(np.linspace(0.0, 1.0, 1001)), dtype=float)
    c_min, c_max = float(np.min(speed)), float(np.max(speed))
    spacing = (c_max / c_min) * (K - 1) * (1.0 + 1e-6)
    dt = problem.t_final / (2 * N * spacing)
    taus = spacing * dt * np.arange(2 * N)
    x_star = profile.singular_point
    return build_ball(
        lambda x, t: problem.solution(x, t, mu),
        taus,
        dt,
        vandermonde_stencil(K, s1),
        lambda t: float(problem.flow(np.array([x_star]), t, mu)[0]),
        c_max * 0.5 * (K - 1) * dt,
        equidistant_grid(max(n_delta, 64 * N + 1)),
    )


def certify(
    factory: Callable[[int], Ball2N],
    ns: Sequence[int],
    alpha_claim: float,
    manifold: str,
    min_ratio: float = DEFAULT_MIN_RATIO,
    a_bound: float = DEFAULT_A_BOUND,
) -> CertificateReport:
    """Build, orthogonalize and certify a ball for each N."""
    balls = []
    for n in ns:
        balls.append(gram_schmidt(factory(n)))
        logger.debug("%s ball N=%d orthogonalized", manifold, n)
    return lower_bound_certificate(balls, alpha_claim, manifold, min_ratio, a_bound)


def singular_alpha(smoothness: int) -> float:
    """
    Ball-norm exponent for a datum of smoothness s.

    The (s + 1)-th derivative jumps, so a stencil combination is of size
    dt^(s + 1) on a region of width O(dt) and ||phi_n|| ~ dt^(s + 3/2).
    """
    if smoothness < -1:
        raise ArgumentError(f"smoothness must be at least -1, got {smoothness}")
    return smoothness + 1.5


#: N-width exponents certified per manifold, color keyed by datum
CLAIMED_ALPHA = {
    "advection": 0.5,
    "burgers": 1.5,
    "color-step": singular_alpha(-1),
    "color-kink": singular_alpha(0),
}
