"""MATS/RDN constructions for the advection, color and Burgers manifolds."""

from .advection import ADVECTION_DOF, advection_rdn
from .burgers import BurgersRDN, build_burgers_rdn, burgers_head, burgers_rdn_error, lagrangian_gap
from .color import ColorRDN, build_color_rdn, color_rdn_error, split_budget
from .fronts import front_error, step_front
from .sweep import (
    EXPERIMENTS,
    AdvectionSeparation,
    BurgersSeparation,
    ColorSeparation,
    SeparationExperiment,
    SeparationResult,
    SeparationRow,
)
