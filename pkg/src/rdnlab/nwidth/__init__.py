"""Kolmogorov N-width bounds: stencils, 2N-balls, certificates and decay fits."""

from .ball import Ball2N, OrthogonalBall, a_np, build_ball, gram_schmidt, trapezoid_weights
from .certificate import (
    CLAIMED_ALPHA,
    CertificateReport,
    CertificateRow,
    advection_ball,
    burgers_ball,
    certify,
    color_ball,
    lower_bound_certificate,
    singular_alpha,
)
from .decay import DecayFit, fit_decay
from .stencil import StencilCoefficients, vandermonde_stencil
