"""
Test Chebyshev fits, rate estimates and lowering to 2-layer networks.
"""

import math

import numpy as np
import pytest

from rdnlab.chebfit import (
    ChebyshevSeries,
    ChebyshevTwoLayerBasis,
    cheb_deriv,
    cheb_eval,
    cheb_fit,
    cheb_to_two_layer,
    estimate_rho,
    lobatto_points,
)
from rdnlab.core.errors import ArgumentError, NumericalError, RateUndefinedError, StructuralError
from rdnlab.hyperbolic import DEFAULT_MU
from rdnlab.nwidth import fit_decay
from rdnlab.separation.sweep import FIT_FLOOR


class TestSeries:
    """Test fitting, evaluation and differentiation."""

    def test_lobatto_points(self):
        """Ascending, endpoints included, mapped to the interval."""
        nodes = lobatto_points(8, (2.0, 3.0))
        assert nodes[0] == pytest.approx(2.0)
        assert nodes[-1] == pytest.approx(3.0)
        assert np.all(np.diff(nodes) > 0.0)
        np.testing.assert_array_equal(lobatto_points(0), [0.0])

    def test_polynomial_fit_is_exact(self):
        """A cubic is reproduced by a degree-5 interpolant."""
        s = cheb_fit(lambda x: x**3 + x, 5, (-0.5, 2.0))
        x = np.linspace(-0.5, 2.0, 41)
        np.testing.assert_allclose(cheb_eval(s, x), x**3 + x, atol=1e-12)
        assert s(1.0) == pytest.approx(2.0)
        assert isinstance(s(1.0), float)

    def test_derivative(self):
        """d/dx of a fitted cubic on a mapped interval."""
        s = cheb_fit(lambda x: x**3, 6, (0.0, 2.0))
        x = np.linspace(0.0, 2.0, 21)
        np.testing.assert_allclose(cheb_deriv(s)(x), 3.0 * x**2, atol=1e-11)
        np.testing.assert_array_equal(cheb_deriv(ChebyshevSeries(np.array([4.0])))(x), np.zeros(21))

    def test_scalar_only_callables(self):
        """Callables that ignore array input are sampled point by point."""
        s = cheb_fit(lambda x: 2.0, 3)
        np.testing.assert_allclose(s.coeffs, [2.0, 0.0, 0.0, 0.0], atol=1e-15)

    def test_invalid_series(self):
        """Degenerate intervals, non-finite values and negative degrees are rejected."""
        with pytest.raises(ArgumentError):
            ChebyshevSeries(np.ones(3), (1.0, 1.0))
        with pytest.raises(NumericalError):
            ChebyshevSeries(np.array([1.0, np.nan]))
        with pytest.raises(NumericalError):
            cheb_fit(lambda x: np.full_like(x, np.inf), 4)
        with pytest.raises(ArgumentError):
            cheb_fit(np.sin, -1)


class TestRate:
    """Test the Bernstein-radius estimate."""

    def test_geometric_coefficients(self):
        """1/(2 - x) on [-1, 1] has radius 2 + sqrt(3)."""
        s = cheb_fit(lambda x: 1.0 / (2.0 - x), 40, (-1.0, 1.0))
        assert estimate_rho(s) == pytest.approx(2.0 + math.sqrt(3.0), rel=0.1)

    def test_polynomial_is_infinite(self):
        """A series that ends abruptly is a polynomial."""
        s = cheb_fit(lambda x: x**3, 12)
        assert estimate_rho(s) == math.inf

    def test_undefined(self):
        """Zero series have no rate; short series are refused."""
        with pytest.raises(RateUndefinedError):
            estimate_rho(ChebyshevSeries(np.zeros(10)))
        with pytest.raises(ArgumentError):
            estimate_rho(ChebyshevSeries(np.ones(5)))


class TestLowering:
    """Test lowering of series to fixed-hidden-layer networks."""

    def test_basis_combination_matches_nodes(self):
        """The lowered series matches the series at the grid nodes."""
        s = cheb_fit(np.exp, 5)
        basis = ChebyshevTwoLayerBasis.build(6, 129)
        lowered = basis.lower(s)
        grid = np.linspace(0.0, 1.0, 129)
        np.testing.assert_allclose(lowered(grid), s(grid), atol=1e-12)
        np.testing.assert_allclose(cheb_to_two_layer(s, 129)(grid), lowered(grid), atol=1e-12)

    def test_members(self):
        """The first member is the constant T_0 = 1."""
        basis = ChebyshevTwoLayerBasis.build(4, 33, (-1.0, 1.0))
        assert basis.n_terms == 4
        assert basis.n_delta == 33
        np.testing.assert_allclose(basis.member(1)(np.linspace(-1.0, 1.0, 9)), 1.0, atol=1e-12)
        np.testing.assert_allclose(basis.member(3).nodal_values, 2.0 * basis.member(3).grid ** 2 - 1.0, atol=1e-12)

    def test_structure_errors(self):
        """Too many coefficients or a different interval are rejected."""
        basis = ChebyshevTwoLayerBasis.build(3, 17)
        with pytest.raises(StructuralError):
            basis.combine(np.ones(4))
        with pytest.raises(StructuralError):
            basis.lower(ChebyshevSeries(np.ones(2), (0.0, 2.0)))


class TestTransportSeries:
    """Test Chebyshev approximation of color transport maps."""

    def test_exponential_decay(self, color):
        """Sup errors of the transport fit decay exponentially in the term count."""
        t = color.t_final
        transport = color.transport(t, DEFAULT_MU)
        window = color.lagrangian_window(t, DEFAULT_MU)
        z = np.linspace(window[0], window[1], 1001)
        exact = transport(z)
        curve = []
        for m in range(4, 41, 2):
            s = cheb_fit(transport, m - 1, window)
            curve.append((m, float(np.max(np.abs(s(z) - exact)))))
        fit = fit_decay(curve, "exponential", floor=FIT_FLOOR)
        assert fit.r_squared >= 0.95
        assert fit.base > 1.02

    def test_runge_radius(self):
        """1/(1 + 25 (2x - 1)^2) on [0, 1] has radius (1 + sqrt(26)) / 5."""
        s = cheb_fit(lambda x: 1.0 / (1.0 + 25.0 * (2.0 * x - 1.0) ** 2), 200)
        rho = estimate_rho(s)
        assert 0.98 <= rho <= 1.52
        assert rho == pytest.approx((1.0 + math.sqrt(26.0)) / 5.0, rel=0.1)

    def test_degree_ten_lowering(self):
        """A degree-10 series lowers on 4096 nodes with small value and slope errors."""
        s = cheb_fit(np.exp, 10)
        lowered = cheb_to_two_layer(s, 2**12)
        x = np.linspace(0.0, 1.0, 20001)
        assert np.max(np.abs(lowered(x) - s(x))) <= 1e-4
        nodes = lowered.grid
        slopes = np.diff(lowered(nodes)) / lowered.dx
        assert np.max(np.abs(slopes - cheb_deriv(s)(nodes[:-1]))) <= 1e-2
