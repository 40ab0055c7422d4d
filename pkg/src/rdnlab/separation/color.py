"""
MATS networks for the color equation with a step or kink datum.

For a budget of M degrees of freedom the forward transport X(t, .) is
fitted by M1 = ceil(M/2) Chebyshev terms on its Lagrangian window, lowered
to a 2-layer network through a shared basis, and inverted with
L_inv = M - M1 bisection steps. The head is the exact network of the
datum (threshold for a step, two ReLU units for a kink), shared by all (t, mu).
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from numpy.typing import ArrayLike

from ..chebfit.lowering import ChebyshevTwoLayerBasis
from ..chebfit.series import ChebyshevSeries, cheb_fit
from ..core.base_problem import Params
from ..core.errors import ArgumentError, MonotonicityError
from ..hyperbolic.color import ColorProblem
from ..hyperbolic.profiles import StepProfile
from ..invnet.bisection import BisectionInverseNetwork, bisection_inverse, build_inverse
from ..invnet.mats import FloatArray, MATSComposition
from ..invnet.monotone import check_monotone
from ..netcore.network import DeepNetwork, affine_network, compose_networks
from ..netcore.quadrature import grid_norm
from .fronts import front_error, step_front

logger = logging.getLogger(__name__)

DEFAULT_LOWERING_POINTS = 2**13
DEFAULT_ERROR_POINTS = 2**12 + 1


def split_budget(budget: int) -> Tuple[int, int]:
    """(Chebyshev terms, bisection steps) for a dof budget."""
    if budget < 2:
        raise ArgumentError(f"a color RDN needs a budget of at least 2, got {budget}")
    terms = math.ceil(budget / 2)
    return terms, budget - terms


@lru_cache(maxsize=64)
def reference_basis(n_terms: int, n_delta: int) -> ChebyshevTwoLayerBasis:
    return ChebyshevTwoLayerBasis.build(n_terms, n_delta, (-1.0, 1.0))


def lowered_transport(series: ChebyshevSeries, n_delta: int) -> DeepNetwork:
    """Reference-basis combination after the affine map of the window onto [-1, 1]."""
    a, b = series.interval
    to_reference = affine_network([[2.0 / (b - a)]], [-(a + b) / (b - a)])
    combined = reference_basis(series.coeffs.size, n_delta).combine(series.coeffs)
    return compose_networks(combined.network, to_reference)


@dataclass(frozen=True, eq=False)
class ColorRDN:
    """One (t, mu, M) member: head o transport-inverse."""

    t: float
    mu: Params
    budget: int
    series: ChebyshevSeries
    inverse: BisectionInverseNetwork
    mats: MATSComposition
    certified: bool

    @property
    def terms(self) -> int:
        return int(self.series.coeffs.size)

    @property
    def l_inv(self) -> int:
        return self.inverse.l_inv

    def __call__(self, x: ArrayLike) -> float | FloatArray:
        return self.mats(x)


def build_color_rdn(
    problem: ColorProblem,
    t: float,
    mu: Params,
    budget: int,
    n_delta: int = DEFAULT_LOWERING_POINTS,
) -> ColorRDN:
    """Fit, lower and invert the transport map at (t, mu)."""
    profile = problem.u0
    if profile.singular_point is None:
        raise ArgumentError(f"color RDNs need a step or kink datum, got {profile!r}")
    terms, l_inv = split_budget(budget)
    window = problem.lagrangian_window(t, mu)
    series = cheb_fit(problem.transport(t, mu), terms - 1, window)
    transport = lowered_transport(series, n_delta)
    certified = True
    try:
        inverse = build_inverse(check_monotone(transport, window), l_inv)
    except MonotonicityError as exc:
        certified = False
        logger.warning("transport fit at t=%.4g, mu=%s, M=%d is not monotone (%s); inverting uncertified", t, mu, budget, exc)
        inverse = bisection_inverse(transport, window, l_inv)
    return ColorRDN(float(t), tuple(mu), budget, series, inverse, MATSComposition(profile.to_network(), (inverse,)), certified)


def color_rdn_error(problem: ColorProblem, rdn: ColorRDN, n_quad: int = DEFAULT_ERROR_POINTS) -> float:
    """
    L2 distance to the exact solution.

    Steps are measured through the front positions, other data by trapezoid
    quadrature against the characteristic solution.
    """
    profile = problem.u0
    if not isinstance(profile, StepProfile):
        return grid_norm(rdn.mats, lambda x: problem.solution(x, rdn.t, rdn.mu), problem.window, "l2", n_quad)
    front_true = min(max(problem.front(rdn.t, rdn.mu), 0.0), 1.0)
    front_rdn = step_front(rdn.mats, problem.window, profile.left, profile.right)
    return front_error(front_true, front_rdn, profile.left - profile.right)
