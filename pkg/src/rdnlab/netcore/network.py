"""
Feed-forward networks with ReLU, threshold and identity activations.

A DeepNetwork is an ordered tuple of affine layers. Every layer except the
last carries one activation per output neuron; the last layer is a plain
affine map. Evaluation is vectorized over points and chunked so that very
wide hidden layers do not allocate huge intermediate arrays.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import StructuralError

FloatArray = NDArray[np.float64]

# Largest number of hidden values materialized at once during evaluation.
EVAL_CHUNK_ELEMENTS = 1 << 22


class ActivationKind(str, Enum):
    """Per-neuron activation functions."""

    RELU = "relu"
    THRESHOLD = "threshold"
    IDENTITY = "identity"

    def apply(self, z: ArrayLike) -> FloatArray:
        z = np.asarray(z, dtype=float)
        if self is ActivationKind.RELU:
            return np.maximum(z, 0.0)
        if self is ActivationKind.THRESHOLD:
            # strict: threshold(0) = 0
            return (z > 0.0).astype(float)
        return z.copy()


def _as_activations(
    activations: Union[None, ActivationKind, Sequence[ActivationKind]], width: int
) -> Optional[Tuple[ActivationKind, ...]]:
    if activations is None:
        return None
    if isinstance(activations, ActivationKind):
        return (activations,) * width
    return tuple(ActivationKind(a) for a in activations)


@dataclass(frozen=True, eq=False)
class AffineLayer:
    """A_l(z) = W z + b followed by per-neuron activations (absent on the last layer)."""

    weights: FloatArray
    biases: FloatArray
    activations: Optional[Tuple[ActivationKind, ...]] = None
    _masks: Tuple[FloatArray, FloatArray] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=float, ndmin=2)
        biases = np.array(self.biases, dtype=float, ndmin=1)
        if weights.ndim != 2 or biases.ndim != 1:
            raise StructuralError("weights must be a matrix and biases a vector")
        if biases.shape[0] != weights.shape[0]:
            raise StructuralError(
                f"bias length {biases.shape[0]} != weight rows {weights.shape[0]}"
            )
        activations = _as_activations(self.activations, weights.shape[0])
        if activations is not None and len(activations) != weights.shape[0]:
            raise StructuralError(
                f"{len(activations)} activations for {weights.shape[0]} neurons"
            )
        weights.setflags(write=False)
        biases.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "biases", biases)
        object.__setattr__(self, "activations", activations)
        if activations is not None:
            kinds = np.array([a.value for a in activations])
            relu = kinds == ActivationKind.RELU.value
            threshold = kinds == ActivationKind.THRESHOLD.value
        else:
            relu = threshold = np.zeros(weights.shape[0], dtype=bool)
        object.__setattr__(self, "_masks", (relu, threshold))

    @property
    def input_width(self) -> int:
        return int(self.weights.shape[1])

    @property
    def output_width(self) -> int:
        return int(self.weights.shape[0])

    def with_activations(
        self, activations: Union[None, ActivationKind, Sequence[ActivationKind]]
    ) -> "AffineLayer":
        return AffineLayer(self.weights, self.biases, _as_activations(activations, self.output_width))

    def forward(self, z: FloatArray) -> FloatArray:
        """Apply the layer to a (points, input_width) array."""
        out = z @ self.weights.T + self.biases
        if self.activations is None:
            return out
        relu, threshold = self._masks
        if relu.any():
            out[:, relu] = np.maximum(out[:, relu], 0.0)
        if threshold.any():
            out[:, threshold] = (out[:, threshold] > 0.0).astype(float)
        return out


@dataclass(frozen=True, eq=False)
class DeepNetwork:
    """
    Network x -> A_L o rho_{L-1} (A_{L-1} ... rho_1 (A_1 x)).

    Immutable after construction; safe to evaluate from many threads.
    """

    layers: Tuple[AffineLayer, ...]

    def __post_init__(self) -> None:
        layers = tuple(self.layers)
        if not layers:
            raise StructuralError("a network needs at least one layer")
        for index, (left, right) in enumerate(zip(layers, layers[1:])):
            if right.input_width != left.output_width:
                raise StructuralError(
                    f"layer {index + 2} expects width {right.input_width}, "
                    f"layer {index + 1} produces {left.output_width}"
                )
            if left.activations is None:
                raise StructuralError(f"hidden layer {index + 1} has no activations")
        if layers[-1].activations is not None:
            raise StructuralError("the final layer must not carry activations")
        object.__setattr__(self, "layers", layers)

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def dims(self) -> Tuple[int, ...]:
        return (self.layers[0].input_width,) + tuple(layer.output_width for layer in self.layers)

    @property
    def input_width(self) -> int:
        return self.layers[0].input_width

    @property
    def output_width(self) -> int:
        return self.layers[-1].output_width

    def __call__(self, x: ArrayLike) -> Union[float, FloatArray]:
        return eval_network(self, x)


def eval_network(net: DeepNetwork, x: ArrayLike) -> Union[float, FloatArray]:
    """
    Evaluate a network.

    A scalar input to a width-1 network returns a float. Arrays of points
    return an array; for input width > 1 pass shape (points, width).
    """
    z = np.asarray(x, dtype=float)
    scalar = z.ndim == 0
    if net.input_width == 1:
        points = z.reshape(-1, 1)
    else:
        points = np.atleast_2d(z)
        if points.shape[1] != net.input_width:
            raise StructuralError(
                f"network takes {net.input_width} inputs, got {points.shape[1]}"
            )
    widest = max(net.dims)
    chunk = max(1, EVAL_CHUNK_ELEMENTS // widest)
    outputs = []
    for start in range(0, points.shape[0], chunk):
        h = points[start:start + chunk]
        for layer in net.layers:
            h = layer.forward(h)
        outputs.append(h)
    out = np.concatenate(outputs, axis=0) if outputs else np.zeros((0, net.output_width))
    if net.output_width == 1:
        out = out[:, 0]
        return float(out[0]) if scalar else out
    return out[0] if scalar else out


def compose_networks(outer: DeepNetwork, inner: DeepNetwork) -> DeepNetwork:
    """Single network for outer o inner; the inner output layer gets identity activations."""
    if inner.output_width != outer.input_width:
        raise StructuralError(
            f"inner output width {inner.output_width} != outer input width {outer.input_width}"
        )
    bridge = inner.layers[-1].with_activations(ActivationKind.IDENTITY)
    return DeepNetwork(inner.layers[:-1] + (bridge,) + outer.layers)


def affine_network(weights: ArrayLike, biases: ArrayLike) -> DeepNetwork:
    """One-layer network x -> W x + b."""
    return DeepNetwork((AffineLayer(np.asarray(weights, float), np.asarray(biases, float)),))


def identity_network(width: int = 1) -> DeepNetwork:
    return affine_network(np.eye(width), np.zeros(width))


def two_layer_network(
    hidden_weights: ArrayLike,
    hidden_biases: ArrayLike,
    activations: Union[ActivationKind, Sequence[ActivationKind]],
    outer_weights: ArrayLike,
    outer_bias: ArrayLike = 0.0,
) -> DeepNetwork:
    """Scalar 2-layer network sum_n w_n rho_n(v_n x + b_n) + b_2."""
    w1 = np.asarray(hidden_weights, dtype=float).reshape(-1, 1)
    b1 = np.asarray(hidden_biases, dtype=float).reshape(-1)
    w2 = np.asarray(outer_weights, dtype=float).reshape(1, -1)
    b2 = np.asarray(outer_bias, dtype=float).reshape(-1)
    return DeepNetwork((AffineLayer(w1, b1, _as_activations(activations, w1.shape[0])), AffineLayer(w2, b2)))
