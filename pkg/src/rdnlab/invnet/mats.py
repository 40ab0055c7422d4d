"""MATS compositions: a profile network after a chain of monotone maps and inverses."""

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import StructuralError
from ..netcore.network import DeepNetwork, compose_networks, eval_network
from ..netcore.two_layer import FullTwoLayerSolution
from ..reduction.deep import ReducedDeepNetwork, eval_rdn
from .bisection import BisectionInverseNetwork
from .monotone import MonotoneNetwork

FloatArray = NDArray[np.float64]
Head = Union[DeepNetwork, ReducedDeepNetwork, FullTwoLayerSolution]
TransportMap = Union[MonotoneNetwork, BisectionInverseNetwork]

RANGE_SLACK = 1e-9
N_RANGE_CHECK = 257


def _map_domain(transport: TransportMap) -> Tuple[float, float]:
    if isinstance(transport, BisectionInverseNetwork):
        lo, hi = transport.image()
        return (min(lo, hi), max(lo, hi))
    return transport.domain


def _map_range(transport: TransportMap) -> Tuple[float, float]:
    lo, hi = _map_domain(transport)
    values = np.asarray(transport(np.linspace(lo, hi, N_RANGE_CHECK)))
    return float(values.min()), float(values.max())


@dataclass(frozen=True, eq=False)
class MATSComposition:
    """v o T_k o ... o T_1, maps listed in application order."""

    head: Head
    maps: Tuple[TransportMap, ...]

    def __post_init__(self) -> None:
        maps = tuple(self.maps)
        for index, (inner, outer) in enumerate(zip(maps, maps[1:])):
            lo, hi = _map_range(inner)
            dom_lo, dom_hi = _map_domain(outer)
            slack = RANGE_SLACK * max(1.0, abs(dom_lo), abs(dom_hi))
            if lo < dom_lo - slack or hi > dom_hi + slack:
                raise StructuralError(
                    f"map {index + 1} range [{lo:.6g}, {hi:.6g}] leaves the domain "
                    f"[{dom_lo:.6g}, {dom_hi:.6g}] of map {index + 2}"
                )
        object.__setattr__(self, "maps", maps)

    def __call__(self, x: ArrayLike) -> float | FloatArray:
        return eval_mats(self, x)


def _eval_head(head: Head, z: ArrayLike) -> float | FloatArray:
    if isinstance(head, ReducedDeepNetwork):
        return eval_rdn(head, z)
    if isinstance(head, FullTwoLayerSolution):
        return eval_network(head.network, z)
    return eval_network(head, z)


def eval_mats(m: MATSComposition, x: ArrayLike) -> float | FloatArray:
    z = x
    for transport in m.maps:
        z = transport(z)
    return _eval_head(m.head, z)


def flatten_mats(m: MATSComposition) -> DeepNetwork:
    """The whole composition as one DeepNetwork."""
    head = m.head
    if isinstance(head, FullTwoLayerSolution):
        head = head.network
    elif isinstance(head, ReducedDeepNetwork):
        head = head.to_network()
    if not isinstance(head, DeepNetwork):
        raise StructuralError(f"cannot flatten a {type(head).__name__} head")
    nets: Sequence[DeepNetwork] = [t.net for t in m.maps]
    flat = nets[0] if nets else None
    for net in nets[1:]:
        flat = compose_networks(net, flat)
    return compose_networks(head, flat) if flat is not None else head
