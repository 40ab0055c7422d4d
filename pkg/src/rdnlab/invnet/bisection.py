"""
Bisection-inverse networks.

One bisection step g_f acts on the state [a, b, x]. For an L-layer scalar
network f the step has L + 4 layers:

    1          [a, b, x] -> [a, b, x, (a + b)/2]
    2 .. L+1   f applied on the last lane, identity on a, b, x
    L+2        w = threshold(f(mid) - x)
    L+3        s1 = relu(-c w + (b - a)/2),  s2 = relu(c w - c + (b - a)/2)
    L+4        [a + s1, b - s2, x]

with c = b - a of the initial domain. If f(mid) > x the state becomes
[a, mid], otherwise [mid, b]. Stacking l_inv steps between the input adapter
x -> [a, b, x] and the output adapter [a, b, x] -> (a + b)/2 gives an
approximate inverse with error at most (b - a) 2^-l_inv.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ArgumentError, StructuralError
from ..netcore.network import ActivationKind, AffineLayer, DeepNetwork, eval_network
from .monotone import MonotoneNetwork

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
Interval = Tuple[float, float]

ID = ActivationKind.IDENTITY
RELU = ActivationKind.RELU
THRESHOLD = ActivationKind.THRESHOLD

STATE_WIDTH = 3
ADAPTER_LAYERS = 2


def _passthrough(layer: AffineLayer, activations: Tuple[ActivationKind, ...]) -> AffineLayer:
    """Widen an f-layer so lanes a, b, x pass through unchanged."""
    rows, cols = layer.weights.shape
    weights = np.zeros((STATE_WIDTH + rows, STATE_WIDTH + cols))
    weights[:STATE_WIDTH, :STATE_WIDTH] = np.eye(STATE_WIDTH)
    weights[STATE_WIDTH:, STATE_WIDTH:] = layer.weights
    biases = np.concatenate((np.zeros(STATE_WIDTH), layer.biases))
    return AffineLayer(weights, biases, (ID,) * STATE_WIDTH + activations)


def bisection_step_layers(net: DeepNetwork, domain: Interval) -> Tuple[AffineLayer, ...]:
    """The L + 4 layers of one bisection step; the last layer has no activations."""
    if net.input_width != 1 or net.output_width != 1:
        raise StructuralError(f"bisection needs a scalar network, got dims {net.dims}")
    c = float(domain[1] - domain[0])
    if not c > 0.0:
        raise ArgumentError(f"degenerate domain {domain}")

    midpoint = AffineLayer(
        np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.5, 0.5, 0.0]]),
        np.zeros(4),
        (ID,) * 4,
    )
    f_layers = []
    for index, layer in enumerate(net.layers):
        last = index == net.depth - 1
        acts = (ID,) if last else layer.activations
        f_layers.append(_passthrough(layer, acts or ()))
    branch = AffineLayer(
        np.array([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, -1.0, 1.0],
        ]),
        np.zeros(4),
        (ID, ID, ID, THRESHOLD),
    )
    halves = AffineLayer(
        np.array([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [-0.5, 0.5, 0.0, -c],
            [-0.5, 0.5, 0.0, c],
        ]),
        np.array([0.0, 0.0, 0.0, 0.0, -c]),
        (ID, ID, ID, RELU, RELU),
    )
    update = AffineLayer(
        np.array([
            [1.0, 0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0, 0.0],
        ]),
        np.zeros(3),
    )
    return (midpoint, *f_layers, branch, halves, update)


def build_bisection_step(f: MonotoneNetwork) -> DeepNetwork:
    """g_f : [a, b, x] -> [a', b', x] with b' - a' = (b - a)/2."""
    return DeepNetwork(bisection_step_layers(f.net, f.domain))


@dataclass(frozen=True, eq=False)
class BisectionInverseNetwork:
    """Approximate inverse f_flat of a monotone scalar network."""

    net: DeepNetwork
    l_inv: int
    source: Union[MonotoneNetwork, DeepNetwork]
    domain: Interval
    step: DeepNetwork

    @property
    def error_bound(self) -> float:
        return (self.domain[1] - self.domain[0]) * 2.0 ** (-self.l_inv)

    @property
    def step_depth(self) -> int:
        return self.step.depth

    @property
    def core_depth(self) -> int:
        return self.step_depth * self.l_inv

    def image(self) -> Interval:
        """Range of x over which the inverse is meaningful: [f(a), f(b)]."""
        source = self.source.net if isinstance(self.source, MonotoneNetwork) else self.source
        return float(eval_network(source, self.domain[0])), float(eval_network(source, self.domain[1]))

    def trace(self, x: ArrayLike) -> FloatArray:
        """Intervals [a_k, b_k] after k = 0..l_inv steps, shape (l_inv + 1, points, 2)."""
        state = _input_adapter(self.domain).forward(np.asarray(x, float).reshape(-1, 1))
        history = [state[:, :2].copy()]
        for _ in range(self.l_inv):
            for layer in self.step.layers:
                state = layer.forward(state)
            history.append(state[:, :2].copy())
        return np.stack(history)

    def __call__(self, x: ArrayLike) -> float | FloatArray:
        return eval_network(self.net, x)


def _input_adapter(domain: Interval) -> AffineLayer:
    return AffineLayer(np.array([[0.0], [0.0], [1.0]]), np.array([domain[0], domain[1], 0.0]), (ID,) * 3)


def _output_adapter() -> AffineLayer:
    return AffineLayer(np.array([[0.5, 0.5, 0.0]]), np.zeros(1))


def bisection_inverse(net: DeepNetwork, domain: Interval, l_inv: int) -> BisectionInverseNetwork:
    """
    Stack l_inv bisection steps without requiring a monotonicity certificate.

    For non-monotone f the result is still a valid network, but the error
    bound only holds where f is increasing.
    """
    if l_inv < 1:
        raise ArgumentError(f"l_inv must be at least 1, got {l_inv}")
    step_layers = bisection_step_layers(net, domain)
    chained = step_layers[:-1] + (step_layers[-1].with_activations(ID),)
    layers: List[AffineLayer] = [_input_adapter(domain)]
    for _ in range(l_inv):
        layers.extend(chained)
    layers.append(_output_adapter())
    inverse = DeepNetwork(tuple(layers))
    logger.debug("bisection inverse: %d steps of %d layers on %s", l_inv, len(step_layers), domain)
    return BisectionInverseNetwork(inverse, l_inv, net, (float(domain[0]), float(domain[1])), DeepNetwork(step_layers))


def build_inverse(f: MonotoneNetwork, l_inv: int) -> BisectionInverseNetwork:
    """Approximate inverse of a certified monotone network."""
    inverse = bisection_inverse(f.net, f.domain, l_inv)
    return BisectionInverseNetwork(inverse.net, l_inv, f, f.domain, inverse.step)


def bisection_oracle(
    f: Callable[[FloatArray], ArrayLike], domain: Interval, x: ArrayLike, l_inv: int
) -> FloatArray:
    """Plain scalar bisection with the same branch rule, vectorized over x."""
    x = np.asarray(x, dtype=float).reshape(-1)
    a = np.full_like(x, float(domain[0]))
    b = np.full_like(x, float(domain[1]))
    for _ in range(l_inv):
        mid = 0.5 * a + 0.5 * b
        left = np.asarray(f(mid), dtype=float) > x
        b = np.where(left, mid, b)
        a = np.where(left, a, mid)
    return 0.5 * a + 0.5 * b
