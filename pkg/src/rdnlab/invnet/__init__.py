"""Bisection-inverse networks and MATS compositions."""

from .bisection import (
    BisectionInverseNetwork,
    bisection_inverse,
    bisection_oracle,
    build_bisection_step,
    build_inverse,
)
from .mats import MATSComposition, eval_mats, flatten_mats
from .monotone import MonotoneNetwork, check_monotone, random_monotone_network
