"""Chebyshev approximation of transport maps."""

from .lowering import ChebyshevTwoLayerBasis, cheb_to_two_layer
from .series import (
    ChebyshevSeries,
    cheb_deriv,
    cheb_eval,
    cheb_fit,
    estimate_rho,
    lobatto_points,
)
