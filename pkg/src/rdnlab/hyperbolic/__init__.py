"""Reference solution manifolds: color equation, constant-speed advection and Burgers."""

from .burgers import (
    BurgersProblem,
    ShockPath,
    burgers_characteristic_map,
    burgers_shock_path,
    burgers_solution,
    total_variation,
)
from .characteristics import DEFAULT_MU, MU_BOX, color_speed, integrate_characteristic, rk4_flow
from .color import AdvectionProblem, ColorProblem, TransportMapSample, color_solution
from .profiles import BumpProfile, BurgersRamp, KinkProfile, Profile, StepProfile, burgers_u0, singular_profile
from .reference import godunov_burgers, upwind_color
from .roots import bisect_increasing, bisect_scalar
from .snapshots import snapshot_grid, snapshot_schedule
