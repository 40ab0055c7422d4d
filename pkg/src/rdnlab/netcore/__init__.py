"""Network representation and evaluation."""

from .network import (
    ActivationKind,
    AffineLayer,
    DeepNetwork,
    affine_network,
    compose_networks,
    eval_network,
    identity_network,
    two_layer_network,
)
from .quadrature import DEFAULT_N_QUAD, grid_norm, step_distance, step_interface
from .two_layer import (
    FullTwoLayerSolution,
    build_full_two_layer,
    equidistant_grid,
    hinge_hidden_layer,
    outer_weights_from_samples,
)
