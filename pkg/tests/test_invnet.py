"""
Test monotonicity certificates, bisection-inverse networks and MATS compositions.
"""

import numpy as np
import pytest

from rdnlab.core.errors import ArgumentError, MonotonicityError, StructuralError
from rdnlab.invnet import (
    MATSComposition,
    bisection_inverse,
    bisection_oracle,
    build_bisection_step,
    build_inverse,
    check_monotone,
    eval_mats,
    flatten_mats,
    random_monotone_network,
)
from rdnlab.invnet.bisection import ADAPTER_LAYERS
from rdnlab.netcore import ActivationKind, affine_network, build_full_two_layer, two_layer_network
from rdnlab.reduction import deep_reduce


def cubic_network(n_delta=257):
    """Piecewise-linear interpolant of x^3 + x on [-1, 1]."""
    grid = np.linspace(-1.0, 1.0, n_delta)
    return build_full_two_layer(n_delta, grid**3 + grid, (-1.0, 1.0)).network


class TestMonotone:
    """Test sampled monotonicity certificates."""

    def test_increasing_network_certified(self):
        """A strictly increasing network passes with a positive minimal step."""
        f = check_monotone(cubic_network(), (-1.0, 1.0))
        assert f.monotone_certificate > 0.0
        assert f.image() == pytest.approx((-2.0, 2.0))

    def test_violation_reports_pair(self):
        """A decreasing piece is reported with its sample pair."""
        hat = build_full_two_layer(3, [0.0, 1.0, 0.0]).network
        with pytest.raises(MonotonicityError) as info:
            check_monotone(hat, (0.0, 1.0), n_check=11)
        assert info.value.witness == pytest.approx((0.5, 0.6))
        assert info.value.values[0] > info.value.values[1]

    def test_flat_pieces_allowed(self):
        """Non-decreasing maps with plateaus are certified."""
        ramp = two_layer_network([1.0, 1.0], [0.0, -0.5], ActivationKind.RELU, [1.0, -1.0])
        assert check_monotone(ramp, (0.0, 1.0)).monotone_certificate == pytest.approx(0.0, abs=1e-15)

    def test_arguments(self):
        """Scalar networks, proper domains and at least two samples."""
        net = cubic_network()
        with pytest.raises(ArgumentError):
            check_monotone(net, (0.0, 1.0), n_check=1)
        with pytest.raises(ArgumentError):
            check_monotone(net, (1.0, 1.0))
        with pytest.raises(StructuralError):
            check_monotone(affine_network(np.ones((2, 1)), np.zeros(2)), (0.0, 1.0))

    def test_random_networks(self, rng):
        """Random monotone networks run from 0 to 1 on [0, 1]."""
        f = random_monotone_network(rng, pieces=8)
        assert f.image() == pytest.approx((0.0, 1.0), abs=1e-12)
        assert f.monotone_certificate > 0.0


class TestBisectionInverse:
    """Test the bisection-step construction and its inverse network."""

    def test_step_layer_count(self):
        """One step has L + 4 layers for an L-layer f."""
        f = check_monotone(cubic_network(), (-1.0, 1.0))
        assert build_bisection_step(f).depth == f.net.depth + 4

    def test_inverse_layer_count(self):
        """l_inv steps plus the two adapters."""
        f = check_monotone(cubic_network(), (-1.0, 1.0))
        for l_inv in (1, 4, 8, 12):
            inverse = build_inverse(f, l_inv)
            assert inverse.net.depth == (f.net.depth + 4) * l_inv + ADAPTER_LAYERS
            assert inverse.core_depth == inverse.step_depth * l_inv

    def test_width_halves_each_step(self):
        """b_k - a_k = 2^(-k) (b - a) to 1e-12."""
        f = check_monotone(cubic_network(), (-1.0, 1.0))
        inverse = build_inverse(f, 12)
        trace = inverse.trace(np.linspace(-2.0, 2.0, 33))
        widths = trace[:, :, 1] - trace[:, :, 0]
        expected = 2.0 * 2.0 ** -np.arange(13)
        np.testing.assert_allclose(widths, np.repeat(expected[:, None], 33, axis=1), atol=1e-12)

    def test_matches_oracle(self):
        """The network reproduces plain bisection with the same branch rule."""
        f = check_monotone(cubic_network(), (-1.0, 1.0))
        x = np.linspace(-2.0, 2.0, 257)
        for l_inv in (4, 8, 12):
            inverse = build_inverse(f, l_inv)
            np.testing.assert_allclose(inverse(x), bisection_oracle(f, f.domain, x, l_inv), atol=1e-9)

    def test_error_bound(self):
        """|f_flat(x) - f^-1(x)| <= |Omega| 2^(-l_inv)."""
        grid = np.linspace(-1.0, 1.0, 257)
        f = check_monotone(cubic_network(), (-1.0, 1.0))
        x = np.linspace(-1.9, 1.9, 301)
        exact = np.interp(x, grid**3 + grid, grid)
        for l_inv in (4, 8, 12):
            inverse = build_inverse(f, l_inv)
            assert np.max(np.abs(inverse(x) - exact)) <= inverse.error_bound + 1e-12

    def test_error_halves(self):
        """The worst inverse error halves per additional step."""
        f = check_monotone(cubic_network(), (-1.0, 1.0))
        grid = np.linspace(-1.0, 1.0, 257)
        x = np.linspace(-1.9, 1.9, 2001)
        exact = np.interp(x, grid**3 + grid, grid)
        errors = [np.max(np.abs(build_inverse(f, k)(x) - exact)) for k in (6, 7, 8, 9)]
        ratios = np.array(errors[1:]) / np.array(errors[:-1])
        assert np.all((ratios > 0.3) & (ratios < 0.7))

    def test_uncertified_inverse(self):
        """bisection_inverse accepts any scalar network."""
        hat = build_full_two_layer(3, [0.0, 1.0, 0.0]).network
        inverse = bisection_inverse(hat, (0.0, 1.0), 5)
        assert inverse.net.depth == (hat.depth + 4) * 5 + ADAPTER_LAYERS
        assert np.all(np.isfinite(inverse(np.linspace(0.0, 1.0, 11))))

    def test_arguments(self):
        """l_inv >= 1 and scalar networks only."""
        with pytest.raises(ArgumentError):
            bisection_inverse(cubic_network(), (-1.0, 1.0), 0)
        with pytest.raises(StructuralError):
            bisection_inverse(affine_network(np.ones((1, 2)), np.zeros(1)), (0.0, 1.0), 3)

    @pytest.mark.parametrize("l_inv", [4, 8, 12])
    def test_random_networks(self, rng, l_inv):
        """50 random monotone networks: oracle agreement and the 2^(-l_inv) bound."""
        nodes = np.linspace(0.0, 1.0, 17)
        for _ in range(50):
            f = random_monotone_network(rng, pieces=16)
            inverse = build_inverse(f, l_inv)
            x = rng.uniform(0.0, 1.0, 512)
            approx = inverse(x)
            assert np.max(np.abs(approx - bisection_oracle(f, f.domain, x, l_inv))) <= 1e-9
            exact = np.interp(x, f(nodes), nodes)
            assert np.max(np.abs(approx - exact)) <= 2.0**-l_inv + 1e-12


class TestMATS:
    """Test compositions of a head with monotone maps and inverses."""

    def _shift(self, s, domain=(0.0, 1.0)):
        return check_monotone(affine_network([[1.0]], [s]), domain)

    def test_composition_order(self):
        """Maps apply in listed order before the head."""
        head = two_layer_network([1.0], [-0.5], ActivationKind.THRESHOLD, [1.0])
        first = check_monotone(affine_network([[0.5]], [0.0]), (0.0, 1.0))
        second = check_monotone(affine_network([[1.0]], [0.25]), (0.0, 0.5))
        mats = MATSComposition(head, (first, second))
        x = np.linspace(0.0, 1.0, 101)
        np.testing.assert_allclose(eval_mats(mats, x), (0.5 * x + 0.25 > 0.5).astype(float))

    def test_range_must_fit_domain(self):
        """A map whose range leaves the next domain is rejected."""
        head = affine_network([[1.0]], [0.0])
        with pytest.raises(StructuralError):
            MATSComposition(head, (self._shift(0.5), self._shift(0.0)))

    def test_flatten(self):
        """The flattened network agrees with the composition."""
        grid = np.linspace(-1.0, 1.0, 257)
        f = check_monotone(cubic_network(), (-1.0, 1.0))
        inverse = build_inverse(f, 10)
        head = build_full_two_layer(9, np.linspace(0.0, 1.0, 9) ** 2, (-1.0, 1.0))
        mats = MATSComposition(head, (inverse,))
        x = np.linspace(-1.5, 1.5, 61)
        flat = flatten_mats(mats)
        np.testing.assert_allclose(flat(x), mats(x), atol=1e-12)
        assert flat.depth == inverse.net.depth + head.network.depth
        assert np.max(np.abs(mats(x) - head(np.interp(x, grid**3 + grid, grid)))) < 0.05

    def test_flatten_reduced_head(self, rng):
        """A reduced deep network head flattens to the same function."""
        f = check_monotone(cubic_network(), (-1.0, 1.0))
        inverse = build_inverse(f, 10)
        family = [build_full_two_layer(9, rng.standard_normal(9), (-1.0, 1.0)).network for _ in range(4)]
        head = deep_reduce(family, (1, 3, 1)).members[0]
        mats = MATSComposition(head, (inverse,))
        x = np.linspace(-1.5, 1.5, 61)
        flat = flatten_mats(mats)
        np.testing.assert_allclose(flat(x), mats(x), atol=1e-10)
        assert flat.depth == inverse.net.depth + 2
