"""
Test stencils, 2N-balls, Gram-Schmidt, decay fits and N-width certificates.
"""

import math

import numpy as np
import pytest

from rdnlab.core.errors import ArgumentError, DependenceError, DominanceError, ScheduleError
from rdnlab.hyperbolic import BumpProfile, ColorProblem, KinkProfile, StepProfile
from rdnlab.nwidth import (
    CLAIMED_ALPHA,
    Ball2N,
    a_np,
    advection_ball,
    build_ball,
    burgers_ball,
    certify,
    color_ball,
    fit_decay,
    gram_schmidt,
    lower_bound_certificate,
    singular_alpha,
    trapezoid_weights,
    vandermonde_stencil,
)


class TestStencil:
    """Test the Vandermonde stencil solve."""

    def test_first_difference(self):
        """K = 2, s1 = 1 is the forward difference."""
        np.testing.assert_allclose(vandermonde_stencil(2, 1).b, [-1.0, 1.0], atol=1e-14)

    def test_second_difference(self):
        """K = 3, s1 = 2 is the second difference."""
        np.testing.assert_allclose(vandermonde_stencil(3, 2).b, [1.0, -2.0, 1.0], atol=1e-13)

    def test_residual_and_reproduction(self):
        """sum b_k p(tau + k dt) = dt^s1 p^(s1)(tau) for polynomials of degree < K."""
        stencil = vandermonde_stencil(5, 3)
        assert stencil.residual <= 1e-8
        tau, dt = 0.3, 0.01
        samples = np.array([(tau + k * dt) ** 4 for k in range(5)])
        assert float(stencil.apply(samples)) == pytest.approx(dt**3 * 24.0 * tau, rel=1e-6)

    def test_arguments(self):
        """Width is capped and 0 <= s1 < K."""
        with pytest.raises(ArgumentError):
            vandermonde_stencil(13, 1)
        with pytest.raises(ArgumentError):
            vandermonde_stencil(3, 3)


class TestBall:
    """Test ball construction and orthogonalization."""

    def _strips(self, taus, dt=0.05, radius=0.02, u=None):
        grid = np.linspace(0.0, 1.0, 401)
        u = u if u is not None else (lambda x, t: (x <= t).astype(float))
        return build_ball(u, taus, dt, vandermonde_stencil(2, 1), lambda t: t, radius, grid)

    def test_disjoint_strips(self):
        """Moving-step differences are orthogonal strips."""
        ball = self._strips([0.1, 0.3, 0.5, 0.7])
        assert ball.n == 2
        np.testing.assert_allclose(ball.gram(), np.eye(4), atol=1e-12)
        assert ball.is_dominant()
        orthogonal = gram_schmidt(ball)
        np.testing.assert_allclose(orthogonal.theta, np.eye(4))
        np.testing.assert_allclose(orthogonal.member_coefficients(), 2.0)
        assert orthogonal.max_normalized_inner() == pytest.approx(0.0, abs=1e-12)

    def test_schedule_errors(self):
        """dt above 1/2 or overlapping regions suggest a smaller dt."""
        with pytest.raises(ScheduleError) as info:
            self._strips([0.1, 0.3], dt=0.6)
        assert info.value.suggested_dt == 0.5
        with pytest.raises(ScheduleError) as info:
            self._strips([0.1, 0.12], radius=0.05)
        assert info.value.suggested_dt == pytest.approx(0.025)

    def test_odd_count(self):
        """Balls hold 2N functions."""
        with pytest.raises(ArgumentError):
            self._strips([0.1, 0.3, 0.5])

    def test_vanishing_function(self):
        """A time-independent member gives phi = 0."""
        with pytest.raises(DependenceError):
            self._strips([0.1, 0.3], u=lambda x, t: np.ones_like(x))

    def test_not_dominant(self):
        """Identical phi_n have a full Gram matrix."""
        with pytest.raises(DominanceError) as info:
            self._strips([0.1, 0.3], u=lambda x, t: x * t)
        assert info.value.suggested_dt == pytest.approx(0.025)

    def test_gram_schmidt_dependence(self):
        """Repeated functions cannot be orthogonalized."""
        grid = np.linspace(0.0, 1.0, 5)
        functions = np.vstack([grid, grid])
        ball = Ball2N(functions, np.ones((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)), grid, trapezoid_weights(grid), 0.1)
        with pytest.raises(DependenceError):
            gram_schmidt(ball)

    def test_gram_schmidt_orthogonalizes(self, rng):
        """psi_n are mutually orthogonal and theta is unit lower triangular."""
        grid = np.linspace(0.0, 1.0, 50)
        ball = Ball2N(
            rng.standard_normal((4, 50)), np.ones((4, 1)), np.zeros((4, 1)), np.zeros((4, 2)), grid,
            trapezoid_weights(grid), 0.1,
        )
        orthogonal = gram_schmidt(ball)
        assert orthogonal.max_normalized_inner() < 1e-12
        np.testing.assert_allclose(np.diag(orthogonal.theta), 1.0)
        np.testing.assert_allclose(orthogonal.theta @ orthogonal.psi, ball.functions, atol=1e-12)

    def test_a_np(self):
        """p = 1 is the max row sum; p > 1 weights column k by k."""
        coefficients = [[1.0, -2.0], [0.5, 0.5]]
        assert a_np(coefficients) == pytest.approx(3.0)
        assert a_np(coefficients, 2.0) == pytest.approx(math.sqrt(17.0))
        with pytest.raises(ArgumentError):
            a_np(coefficients, 0.5)


class TestDecayFit:
    """Test algebraic and exponential rate fits."""

    def test_algebraic(self):
        """n^-1/2 is fitted exactly."""
        fit = fit_decay([(n, n**-0.5) for n in (2, 4, 8, 16, 32)])
        assert fit.rate == pytest.approx(-0.5)
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.predict(64) == pytest.approx(64**-0.5)

    def test_exponential(self):
        """2^-n has base 2."""
        fit = fit_decay([(n, 2.0**-n) for n in range(4, 12)], "exponential")
        assert fit.base == pytest.approx(2.0)

    def test_floor_and_window(self):
        """Plateau points below the floor are dropped; windows slice pairs."""
        curve = [(n, 10.0**-n) for n in range(1, 8)] + [(8, 1e-16), (9, 0.0)]
        fit = fit_decay(curve, "exponential", floor=1e-11)
        assert fit.points == 7
        assert fit.base == pytest.approx(10.0)
        assert fit_decay(curve, "exponential", window=(0, 5)).fit_range == (1.0, 5.0)

    def test_invalid(self):
        """Non-positive errors without a floor and short curves are rejected."""
        with pytest.raises(ArgumentError):
            fit_decay([(1, 1.0), (2, 0.5), (3, 0.0), (4, 0.1)])
        with pytest.raises(ArgumentError):
            fit_decay([(1, 1.0), (2, 0.5), (3, 0.2)])
        with pytest.raises(ArgumentError):
            fit_decay([(n, 1.0 / n) for n in range(1, 6)], "power")


class TestCertificates:
    """Test the N-width certificates per manifold."""

    def test_advection_passes(self, advection):
        """Shifted steps certify alpha = 1/2 over N = 4 .. 32."""
        report = certify(lambda n: advection_ball(n, problem=advection), [4, 8, 16, 32], 0.5, "advection")
        assert report.passed
        assert [row.N for row in report.rows] == [4, 8, 16, 32]
        assert all(row.A_N1 == pytest.approx(2.0) for row in report.rows)
        assert "PASS" in report.summary_text()
        assert "surrogate" in report.summary_text()

    def test_advection_ball_spacing(self):
        """dt = 1/(2N + 2) and 2N strips."""
        ball = advection_ball(4)
        assert ball.dt == pytest.approx(0.1)
        assert ball.functions.shape[0] == 8

    def test_overclaimed_rate_fails(self, advection):
        """Claiming alpha = 3/2 for advection fails the lower bound."""
        balls = [gram_schmidt(advection_ball(n, problem=advection)) for n in (4, 32)]
        report = lower_bound_certificate(balls, 1.5, "advection")
        assert not report.bounded_below
        assert not report.passed
        assert "FAIL" in report.summary_text()

    def test_report_arguments(self):
        """At least one ball is required."""
        with pytest.raises(ArgumentError):
            lower_bound_certificate([], 0.5)

    def test_singular_alpha(self):
        """alpha = s + 3/2: 1/2 for a step, 3/2 for a kink."""
        assert singular_alpha(-1) == 0.5
        assert singular_alpha(0) == 1.5
        assert CLAIMED_ALPHA["color-step"] == 0.5
        assert CLAIMED_ALPHA["color-kink"] == 1.5
        with pytest.raises(ArgumentError):
            singular_alpha(-2)

    def test_color_stencil_defaults(self):
        """Steps use first differences, kinks third differences."""
        step = color_ball(4, ColorProblem(u0=StepProfile(0.1)), n_delta=1025)
        kink = color_ball(4, ColorProblem(u0=KinkProfile(0.1)), n_delta=1025)
        assert (step.stencil.K, step.stencil.s1) == (2, 1)
        assert (kink.stencil.K, kink.stencil.s1) == (4, 3)

    def test_color_ball_norm_rates(self):
        """Ball norms decay like N^-1/2 for a step and N^-3/2 for a kink."""
        rates = {}
        for name, profile in (("step", StepProfile(0.1)), ("kink", KinkProfile(0.1))):
            problem = ColorProblem(u0=profile)
            coarse = np.median(color_ball(4, problem, n_delta=2**13).norms())
            fine = np.median(color_ball(16, problem, n_delta=2**13).norms())
            rates[name] = math.log(coarse / fine) / math.log(4.0)
        assert rates["step"] == pytest.approx(0.5, abs=0.2)
        assert rates["kink"] == pytest.approx(1.5, abs=0.3)

    def test_color_needs_singular_datum(self):
        """Smooth data have nothing to track."""
        with pytest.raises(ArgumentError):
            color_ball(4, ColorProblem(u0=BumpProfile()))

    def test_burgers_start_after_formation(self, burgers):
        """Sampling must start after the shock spans the ramp."""
        with pytest.raises(ArgumentError):
            burgers_ball(4, burgers, t_start=0.3)

    @pytest.mark.slow
    def test_burgers_passes(self, burgers):
        """Second differences of Y certify alpha = 3/2."""
        report = certify(lambda n: burgers_ball(n, burgers), [4, 8, 16, 32], 1.5, "burgers")
        assert report.passed

    @pytest.mark.slow
    def test_color_step_passes(self):
        """First differences of a transported step certify alpha = 1/2."""
        problem = ColorProblem(u0=StepProfile(0.1))
        report = certify(lambda n: color_ball(n, problem, n_delta=2**13), [4, 8, 16], 0.5, "color")
        assert report.passed
