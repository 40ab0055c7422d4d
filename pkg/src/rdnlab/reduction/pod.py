"""
Snapshot matrices, POD bases and reduced 2-layer solutions.

Snapshot columns are nodal samples on an equidistant grid. Rows are scaled
by sqrt(dx) before the SVD so Euclidean norms approximate L2 norms on the
unit interval. Families of 2-layer networks can instead be stored by their
outer weights with unit row scaling, which is the coordinate system the
deep reduction works in.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.base_problem import Interval, SnapshotParams
from ..core.errors import ArgumentError, NumericalError, StructuralError
from ..netcore.two_layer import FullTwoLayerSolution, equidistant_grid, hinge_hidden_layer
from .svd import svd

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class SnapshotMatrix:
    """Grid samples of a solution manifold with per-column (t, mu) records."""

    values: FloatArray
    params: Tuple[SnapshotParams, ...]
    grid: FloatArray
    row_scale: float
    window: Interval = (0.0, 1.0)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float, ndmin=2)
        grid = np.array(self.grid, dtype=float).reshape(-1)
        params = tuple(self.params)
        if values.shape[1] != len(params):
            raise StructuralError(f"{values.shape[1]} columns but {len(params)} parameter records")
        if values.shape[0] != grid.shape[0]:
            raise StructuralError(f"{values.shape[0]} rows but {grid.shape[0]} grid points")
        bad = np.argwhere(~np.isfinite(values))
        if bad.size:
            row, col = bad[0]
            p = params[col]
            raise NumericalError(
                f"non-finite sample at x={grid[row]:.6g}, t={p.t:.6g}, mu={p.mu}"
            )
        values.setflags(write=False)
        grid.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "params", params)

    @classmethod
    def from_columns(
        cls,
        columns: Sequence[ArrayLike],
        params: Sequence[SnapshotParams],
        n_delta: int,
        window: Interval = (0.0, 1.0),
    ) -> "SnapshotMatrix":
        """Nodal samples on the unit grid; rows scaled by sqrt(dx)."""
        grid = equidistant_grid(n_delta)
        values = np.column_stack([np.asarray(c, dtype=float) for c in columns])
        return cls(values, tuple(params), grid, float(np.sqrt(grid[1] - grid[0])), window)

    @classmethod
    def from_two_layer_family(
        cls, family: Sequence[FullTwoLayerSolution], params: Sequence[SnapshotParams]
    ) -> "SnapshotMatrix":
        """Outer-weight coordinates of a 2-layer family (unit row scaling)."""
        if not family:
            raise ArgumentError("empty family")
        n_delta = family[0].n_delta
        if any(member.n_delta != n_delta for member in family):
            raise StructuralError("family members live on different grids")
        values = np.column_stack([member.outer_weights for member in family])
        return cls(values, tuple(params), equidistant_grid(n_delta), 1.0, family[0].interval)

    @property
    def n_delta(self) -> int:
        return int(self.values.shape[0])

    @property
    def count(self) -> int:
        return int(self.values.shape[1])

    @property
    def scaled(self) -> FloatArray:
        return self.values * self.row_scale

    def physical_grid(self) -> FloatArray:
        lo, hi = self.window
        return lo + (hi - lo) * self.grid


@dataclass(frozen=True, eq=False)
class PODBasis:
    """Leading left singular vectors of a (scaled) snapshot matrix."""

    basis: FloatArray
    singular_values: FloatArray

    def __post_init__(self) -> None:
        basis = np.array(self.basis, dtype=float, ndmin=2)
        sv = np.array(self.singular_values, dtype=float).reshape(-1)
        if np.any(np.diff(sv) > 1e-12 * max(1.0, float(sv[0]) if sv.size else 1.0)):
            raise NumericalError("singular values must be non-increasing")
        gram_error = np.max(np.abs(basis.T @ basis - np.eye(basis.shape[1]))) if basis.size else 0.0
        if gram_error > 1e-10:
            raise NumericalError(f"POD basis is not orthonormal (error {gram_error:.2e})")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "singular_values", sv)

    @property
    def rank(self) -> int:
        return int(self.basis.shape[1])

    def coefficients(self, vectors: ArrayLike) -> FloatArray:
        return self.basis.T @ np.asarray(vectors, dtype=float)

    def project(self, vectors: ArrayLike) -> FloatArray:
        return self.basis @ self.coefficients(vectors)


class SnapshotSVD:
    """Cached decomposition of one snapshot matrix, for rank sweeps."""

    def __init__(self, snapshots: SnapshotMatrix):
        self.snapshots = snapshots
        self.u, self.s, self.vt = svd(snapshots.scaled)
        logger.debug("snapshot SVD %s: leading singular value %.4g", snapshots.values.shape, self.s[0])

    def basis(self, m: int) -> PODBasis:
        limit = min(self.snapshots.n_delta, self.snapshots.count)
        if not 1 <= m <= limit:
            raise ArgumentError(f"rank m={m} outside [1, {limit}]")
        return PODBasis(self.u[:, :m], self.s[:m])

    def worst_case_error(self, m: int) -> float:
        basis = self.basis(m)
        data = self.snapshots.scaled
        residual = data - basis.project(data)
        return float(np.max(np.linalg.norm(residual, axis=0)))


def pod_project(
    snapshots: SnapshotMatrix, m: int, decomposition: Optional[SnapshotSVD] = None
) -> Tuple[PODBasis, float]:
    """Rank-m POD basis and the worst-case grid-weighted projection error."""
    decomposition = decomposition or SnapshotSVD(snapshots)
    return decomposition.basis(m), decomposition.worst_case_error(m)


def pod_error_curve(snapshots: SnapshotMatrix, ranks: Iterable[int]) -> List[Tuple[int, float]]:
    decomposition = SnapshotSVD(snapshots)
    return [(int(m), decomposition.worst_case_error(int(m))) for m in ranks]


@dataclass(frozen=True, eq=False)
class ReducedTwoLayerSolution:
    """sum_m gamma_m xi_m(x) with xi = V^T relu(w_1 x + b_1)."""

    gamma: FloatArray
    basis_ref: PODBasis
    n_delta: int
    interval: Interval = (0.0, 1.0)

    def __post_init__(self) -> None:
        gamma = np.array(self.gamma, dtype=float).reshape(-1)
        if gamma.shape[0] != self.basis_ref.rank:
            raise StructuralError(f"{gamma.shape[0]} coefficients for rank {self.basis_ref.rank}")
        if self.basis_ref.basis.shape[0] != self.n_delta:
            raise StructuralError("basis rows do not match n_delta")
        if self.basis_ref.rank > self.n_delta:
            raise StructuralError("reduced dimension exceeds n_delta")
        object.__setattr__(self, "gamma", gamma)

    def activations(self, x: ArrayLike) -> FloatArray:
        """Reduced activations xi_m at each point, shape (points, M)."""
        hidden_w, hidden_b = hinge_hidden_layer(self.n_delta, self.interval)
        points = np.asarray(x, dtype=float).reshape(-1, 1)
        return np.maximum(points * hidden_w + hidden_b, 0.0) @ self.basis_ref.basis

    def __call__(self, x: ArrayLike) -> float | FloatArray:
        out = self.activations(x) @ self.gamma
        return float(out[0]) if np.ndim(x) == 0 else out


def reduce_two_layer(member: FullTwoLayerSolution, basis: PODBasis) -> ReducedTwoLayerSolution:
    """Project a full 2-layer solution's outer weights onto a POD basis of outer weights."""
    return ReducedTwoLayerSolution(basis.coefficients(member.outer_weights), basis, member.n_delta, member.interval)
