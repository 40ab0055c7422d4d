"""
Deep reduction of network families into reduced deep networks (RDNs).

Every member of a family shares depth, widths and activation assignment.
Layer l of member i is factorized as W_li ~ U_l G_li V_l^T where U_l spans
the stacked columns (weights and biases) of all members and V_l spans the
stacked rows. Only the small cores G_li (and c_li = U_l^T b_li) vary.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ArgumentError, StructuralError
from ..netcore.network import ActivationKind, AffineLayer, DeepNetwork
from .svd import svd

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

ORTHONORMAL_TOL = 1e-10


def leading_left_vectors(stack: FloatArray, rank: int) -> Tuple[FloatArray, FloatArray]:
    """First ``rank`` left singular vectors of ``stack`` and all its singular values.

    Thin stacks are completed with an orthonormal complement.
    """
    u, s, _ = svd(stack)
    if u.shape[1] >= rank:
        return u[:, :rank], s
    q, _ = np.linalg.qr(np.hstack([u, np.eye(stack.shape[0])]))
    return np.hstack([u, q[:, u.shape[1]:rank]]), s


def _check_orthonormal(basis: FloatArray, what: str) -> None:
    error = np.max(np.abs(basis.T @ basis - np.eye(basis.shape[1]))) if basis.size else 0.0
    if error > ORTHONORMAL_TOL:
        raise StructuralError(f"{what} columns are not orthonormal (error {error:.2e})")


@dataclass(frozen=True, eq=False)
class ReducedActivation:
    """xi(y) = projection @ rho(lift @ y)."""

    lift: FloatArray
    activations: Tuple[ActivationKind, ...]
    projection: FloatArray

    def __post_init__(self) -> None:
        _check_orthonormal(self.lift, "lift")
        _check_orthonormal(self.projection.T, "projection")
        if self.lift.shape[0] != self.projection.shape[1] or self.lift.shape[0] != len(self.activations):
            raise StructuralError("reduced activation widths do not chain")

    def __call__(self, y: FloatArray) -> FloatArray:
        hidden = y @ self.lift.T
        kinds = np.array([a.value for a in self.activations])
        relu = kinds == ActivationKind.RELU.value
        threshold = kinds == ActivationKind.THRESHOLD.value
        hidden[:, relu] = np.maximum(hidden[:, relu], 0.0)
        hidden[:, threshold] = (hidden[:, threshold] > 0.0).astype(float)
        return hidden @ self.projection.T


@dataclass(frozen=True, eq=False)
class ReducedDeepNetwork:
    """
    B_L o xi_{L-1} o B_{L-1} o ... o xi_1 o B_1 in reduced coordinates.

    ``input_basis`` maps the physical input to M_0 coordinates and
    ``output_basis`` lifts the final M_L coordinates back to the output.
    """

    reduced_weights: Tuple[FloatArray, ...]
    reduced_biases: Tuple[FloatArray, ...]
    reduced_activations: Tuple[ReducedActivation, ...]
    input_basis: FloatArray
    output_basis: FloatArray

    def __post_init__(self) -> None:
        weights = tuple(np.array(g, dtype=float, ndmin=2) for g in self.reduced_weights)
        biases = tuple(np.array(c, dtype=float).reshape(-1) for c in self.reduced_biases)
        if len(weights) != len(biases) or len(self.reduced_activations) != len(weights) - 1:
            raise StructuralError("reduced layers, biases and activations do not match")
        _check_orthonormal(self.input_basis, "input basis")
        _check_orthonormal(self.output_basis, "output basis")
        if weights[0].shape[1] != self.input_basis.shape[1]:
            raise StructuralError("first reduced weight does not match the input basis")
        if weights[-1].shape[0] != self.output_basis.shape[1]:
            raise StructuralError("last reduced weight does not match the output basis")
        for index, (gamma, bias) in enumerate(zip(weights, biases)):
            if bias.shape[0] != gamma.shape[0]:
                raise StructuralError(f"reduced bias {index + 1} has wrong length")
        for index, xi in enumerate(self.reduced_activations):
            if xi.lift.shape[1] != weights[index].shape[0] or xi.projection.shape[0] != weights[index + 1].shape[1]:
                raise StructuralError(f"reduced activation {index + 1} does not chain")
        object.__setattr__(self, "reduced_weights", weights)
        object.__setattr__(self, "reduced_biases", biases)

    @property
    def dims(self) -> Tuple[int, ...]:
        return (self.reduced_weights[0].shape[1],) + tuple(g.shape[0] for g in self.reduced_weights)

    def to_network(self) -> DeepNetwork:
        """Full-width DeepNetwork computing the same function (bases folded into the weights)."""
        depth = len(self.reduced_weights)
        layers = []
        feed = self.input_basis.T
        for index in range(depth):
            gamma, bias = self.reduced_weights[index], self.reduced_biases[index]
            if index < depth - 1:
                xi = self.reduced_activations[index]
                layers.append(AffineLayer(xi.lift @ gamma @ feed, xi.lift @ bias, xi.activations))
                feed = xi.projection
            else:
                layers.append(AffineLayer(self.output_basis @ gamma @ feed, self.output_basis @ bias))
        return DeepNetwork(tuple(layers))

    def __call__(self, x: ArrayLike) -> float | FloatArray:
        return eval_rdn(self, x)


@dataclass(frozen=True, eq=False)
class DeepReduction:
    """Shared factors of a family plus one reduced network per member."""

    members: Tuple[ReducedDeepNetwork, ...]
    column_bases: Tuple[FloatArray, ...]
    row_bases: Tuple[FloatArray, ...]
    layer_errors: Tuple[float, ...]
    discarded: Tuple[float, ...]


def _family_signature(net: DeepNetwork) -> Tuple[Tuple[int, ...], Tuple[Tuple[str, ...], ...]]:
    acts = tuple(tuple(a.value for a in layer.activations) if layer.activations else () for layer in net.layers)
    return net.dims, acts


def deep_reduce(family: Sequence[DeepNetwork], ranks: Sequence[int]) -> DeepReduction:
    """
    Factor a family of identically shaped networks.

    ranks has one entry per interface (input, hidden layers, output). The
    column basis of layer l comes from [W_l1 | ... | W_lS | b_l1 | ... | b_lS]
    and its row basis from [W_l1^T | ... | W_lS^T].
    """
    if not family:
        raise ArgumentError("empty network family")
    signature = _family_signature(family[0])
    for member in family[1:]:
        if _family_signature(member) != signature:
            raise StructuralError("family members differ in widths or activations")
    dims = family[0].dims
    ranks = tuple(int(r) for r in ranks)
    if len(ranks) != len(dims):
        raise StructuralError(f"{len(ranks)} ranks for {len(dims)} interfaces")
    for rank, width in zip(ranks, dims):
        if not 1 <= rank <= width:
            raise ArgumentError(f"rank {rank} outside [1, {width}]")

    depth = len(dims) - 1
    column_bases: List[FloatArray] = []
    row_bases: List[FloatArray] = []
    discarded: List[float] = []
    for index in range(depth):
        weights = [member.layers[index].weights for member in family]
        biases = [member.layers[index].biases.reshape(-1, 1) for member in family]
        col_basis, col_sv = leading_left_vectors(np.hstack(weights + biases), ranks[index + 1])
        row_basis, _ = leading_left_vectors(np.hstack([w.T for w in weights]), ranks[index])
        discarded.append(float(col_sv[ranks[index + 1]]) if col_sv.shape[0] > ranks[index + 1] else 0.0)
        column_bases.append(col_basis)
        row_bases.append(row_basis)

    members = []
    layer_errors = np.zeros(depth)
    for member in family:
        gammas, cs = [], []
        for index, layer in enumerate(member.layers):
            u, v = column_bases[index], row_bases[index]
            gamma = u.T @ layer.weights @ v
            gammas.append(gamma)
            cs.append(u.T @ layer.biases)
            residual = np.linalg.norm(layer.weights - u @ gamma @ v.T, 2)
            layer_errors[index] = max(layer_errors[index], residual)
        activations = tuple(
            ReducedActivation(column_bases[i], member.layers[i].activations or (), row_bases[i + 1].T)
            for i in range(depth - 1)
        )
        members.append(
            ReducedDeepNetwork(tuple(gammas), tuple(cs), activations, row_bases[0], column_bases[-1])
        )
    logger.debug("deep reduction of %d networks with ranks %s: layer errors %s", len(family), ranks, layer_errors)
    return DeepReduction(tuple(members), tuple(column_bases), tuple(row_bases), tuple(layer_errors), tuple(discarded))


def eval_rdn(rdn: ReducedDeepNetwork, x: ArrayLike) -> float | FloatArray:
    """Evaluate an RDN on a scalar or an array of points."""
    z = np.asarray(x, dtype=float)
    scalar = z.ndim == 0
    width = rdn.input_basis.shape[0]
    points = z.reshape(-1, 1) if width == 1 else np.atleast_2d(z)
    if points.shape[1] != width:
        raise StructuralError(f"RDN takes {width} inputs, got {points.shape[1]}")
    y = points @ rdn.input_basis
    for index, gamma in enumerate(rdn.reduced_weights):
        y = y @ gamma.T + rdn.reduced_biases[index]
        if index < len(rdn.reduced_activations):
            y = rdn.reduced_activations[index](y)
    out = y @ rdn.output_basis.T
    if out.shape[1] == 1:
        out = out[:, 0]
        return float(out[0]) if scalar else out
    return out[0] if scalar else out


def dof_count(rdn: Union[ReducedDeepNetwork, Sequence[int]], shared: int = 0) -> int:
    """sum_l M_l M_{l+1} minus the number of shared weights."""
    dims = rdn.dims if isinstance(rdn, ReducedDeepNetwork) else tuple(int(m) for m in rdn)
    total = sum(a * b for a, b in zip(dims, dims[1:]))
    if shared < 0 or shared > total:
        raise ArgumentError(f"shared={shared} outside [0, {total}]")
    return total - shared
