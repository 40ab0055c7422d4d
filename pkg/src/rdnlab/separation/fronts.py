"""Exact distances between single-jump solutions and their network approximations."""

import math
from typing import Callable, Literal

import numpy as np

from ..core.base_problem import Interval
from ..core.errors import ArgumentError
from ..netcore.quadrature import step_interface

FRONT_TOL = 1e-13


def step_front(
    f: Callable[[float], object],
    domain: Interval,
    upper: float,
    lower: float,
    tol: float = FRONT_TOL,
) -> float:
    """
    Jump location of a non-increasing step from ``upper`` to ``lower``.

    Returns the domain end when the jump lies outside the domain.
    """
    lo, hi = domain
    level = 0.5 * (upper + lower)
    at_lo = float(np.asarray(f(lo)))
    at_hi = float(np.asarray(f(hi)))
    if (at_lo - level) * (upper - level) <= 0.0:
        return lo
    if (at_hi - level) * (upper - level) > 0.0:
        return hi
    return step_interface(f, domain, tol)


def front_error(
    front_true: float,
    front_approx: float,
    jump: float,
    length: float = 1.0,
    kind: Literal["l1", "l2"] = "l2",
) -> float:
    """Distance of two steps with equal states in unit-interval scaling."""
    gap = abs(front_true - front_approx) / length
    if kind == "l1":
        return abs(jump) * gap
    if kind == "l2":
        return abs(jump) * math.sqrt(gap)
    raise ArgumentError(f"unknown norm kind {kind!r}")
