"""Exact MATS network for the shifted-step manifold: a threshold head after a shift."""

import numpy as np

from ..core.errors import ArgumentError
from ..hyperbolic.color import AdvectionProblem
from ..hyperbolic.profiles import StepProfile
from ..invnet.mats import MATSComposition
from ..invnet.monotone import check_monotone
from ..netcore.network import affine_network

#: time-dependent weights of the shift network
ADVECTION_DOF = 1


def advection_rdn(problem: AdvectionProblem, t: float) -> MATSComposition:
    """u(x, t) = u0(x - t): one time-dependent bias, head shared by all t."""
    profile = problem.u0
    if not isinstance(profile, StepProfile):
        raise ArgumentError("the exact advection network needs a step profile")
    shift = affine_network(np.ones((1, 1)), np.array([-float(t)]))
    return MATSComposition(profile.to_network(), (check_monotone(shift, problem.window),))
