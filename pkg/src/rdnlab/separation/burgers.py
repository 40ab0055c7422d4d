"""
Explicit MATS network for Burgers' equation.

With alpha = inf I(t) and |I| the length of I(t):

- T11(z) = z + |I| thr(z - alpha) opens a gap of length |I| at alpha
- T12(y) = y + t u0(y) moves Lagrangian points along characteristics
- T2(z) = z + |I| thr(z - alpha) maps the collapsed coordinate back to feet

and u = u0 o T2 o (T12 o T11)^-1, the inverse realized by bisection on
[-t_final, L]. Only w12 = t, w111 = w21 = |I| and w112 = w22 = -alpha vary
with t; the pairs are shared.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..core.base_problem import Interval
from ..core.errors import ArgumentError, MonotonicityError
from ..hyperbolic.burgers import BurgersProblem
from ..invnet.bisection import BisectionInverseNetwork, bisection_inverse, build_inverse
from ..invnet.mats import FloatArray, MATSComposition
from ..invnet.monotone import MonotoneNetwork, check_monotone
from ..netcore.network import ActivationKind, DeepNetwork, compose_networks, two_layer_network
from ..netcore.two_layer import FullTwoLayerSolution, build_full_two_layer, equidistant_grid, hinge_hidden_layer
from .fronts import front_error, step_front

logger = logging.getLogger(__name__)

DEFAULT_HEAD_POINTS = 2049
#: weight pairs (w111, w21) and (w112, w22) carry the same value
SHARED_WEIGHTS = 2
#: the head is one fixed network: a single reduced coefficient
HEAD_DOF = 1


def burgers_head(problem: BurgersProblem, n_points: int = DEFAULT_HEAD_POINTS) -> FullTwoLayerSolution:
    """Piecewise-linear u0 on [-t_final, L] (u0 = 1 left of the ramp)."""
    domain = (-problem.t_final, problem.length)
    return build_full_two_layer(n_points, problem.ramp(equidistant_grid(n_points, domain)), domain)


def gap_network(alpha: float, width: float) -> DeepNetwork:
    """z + width * thr(z - alpha)."""
    return two_layer_network(
        [1.0, 1.0], [0.0, -alpha], [ActivationKind.IDENTITY, ActivationKind.THRESHOLD], [1.0, width]
    )


def characteristic_network(head: FullTwoLayerSolution, t: float) -> DeepNetwork:
    """y + t u0(y) with u0 the head's hinge expansion."""
    hinge_w, hinge_b = hinge_hidden_layer(head.n_delta, head.interval)
    activations = [ActivationKind.IDENTITY] + [ActivationKind.RELU] * head.n_delta
    return two_layer_network(
        np.concatenate(([1.0], hinge_w.reshape(-1))),
        np.concatenate(([0.0], hinge_b.reshape(-1))),
        activations,
        np.concatenate(([1.0], t * head.outer_weights)),
    )


@dataclass(frozen=True, eq=False)
class BurgersRDN:
    """Networks of one time level and the assembled composition."""

    t: float
    alpha: float
    width: float
    head: FullTwoLayerSolution
    forward: DeepNetwork
    inverse: BisectionInverseNetwork
    regroup: MonotoneNetwork
    mats: MATSComposition
    certified: bool

    @property
    def l_inv(self) -> int:
        return self.inverse.l_inv

    @property
    def weights(self) -> Dict[str, float]:
        """Time-dependent weights of T12, T11 and T2."""
        return {"w12": self.t, "w111": self.width, "w112": -self.alpha, "w21": self.width, "w22": -self.alpha}

    def dof(self, count_inverse: bool = True) -> int:
        base = len(self.weights) - SHARED_WEIGHTS + HEAD_DOF
        return base + (self.l_inv if count_inverse else 0)

    def __call__(self, x: ArrayLike) -> float | FloatArray:
        return self.mats(x)


def lagrangian_gap(problem: BurgersProblem, t: float) -> tuple[float, float]:
    """(alpha, |I(t)|); an empty interval gives a zero gap at x0."""
    interval = problem.lagrangian_interval(t)
    if interval is None:
        return problem.x0, 0.0
    return interval[0], interval[1] - interval[0]


def build_burgers_rdn(
    problem: BurgersProblem,
    t: float,
    l_inv: int,
    head: Optional[FullTwoLayerSolution] = None,
) -> BurgersRDN:
    if not 0.0 <= t <= problem.t_final:
        raise ArgumentError(f"t={t} outside [0, {problem.t_final}]")
    head = head if head is not None else burgers_head(problem)
    alpha, width = lagrangian_gap(problem, t)
    domain: Interval = (-problem.t_final, problem.length)

    forward = compose_networks(characteristic_network(head, t), gap_network(alpha, width))
    certified = True
    try:
        inverse = build_inverse(check_monotone(forward, domain), l_inv)
    except MonotonicityError as exc:
        certified = False
        logger.warning("Burgers forward map at t=%.4g is not monotone on the grid (%s); inverting uncertified", t, exc)
        inverse = bisection_inverse(forward, domain, l_inv)
    regroup = check_monotone(gap_network(alpha, width), domain)
    mats = MATSComposition(head, (inverse, regroup))
    return BurgersRDN(float(t), alpha, width, head, forward, inverse, regroup, mats, certified)


def burgers_rdn_error(problem: BurgersProblem, rdn: BurgersRDN, kind: str = "l1") -> float:
    """Distance to the exact solution after shock formation (two-valued step)."""
    if rdn.t <= problem.t2:
        raise ArgumentError(f"RDN errors are measured after t2={problem.t2:.6g}, got t={rdn.t}")
    front_rdn = step_front(rdn.mats, problem.window, 1.0, 0.0)
    if kind not in ("l1", "l2"):
        raise ArgumentError(f"unknown norm kind {kind!r}")
    return front_error(problem.shock_position(rdn.t), front_rdn, 1.0, problem.length, "l1" if kind == "l1" else "l2")
