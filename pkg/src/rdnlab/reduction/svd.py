"""
One-sided Jacobi singular value decomposition.

The matrix is first reduced to its square triangular factor by a QR step;
column pairs of that factor are then rotated until they are mutually
orthogonal. Pairs are scheduled round-robin so each round touches disjoint
columns and can be applied as one vectorized update.
"""

import logging
from typing import List, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import NumericalError, SVDConvergenceError

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 60


def round_robin_pairs(n: int) -> List[Tuple[NDArray[np.intp], NDArray[np.intp]]]:
    """Tournament schedule: n - 1 (or n) rounds of disjoint column pairs."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    count = len(players)
    rounds = []
    for _ in range(count - 1):
        pairs = [(players[i], players[count - 1 - i]) for i in range(count // 2)]
        pairs = [(p, q) for p, q in pairs if p >= 0 and q >= 0]
        if pairs:
            p_idx, q_idx = zip(*pairs)
            rounds.append((np.array(p_idx, dtype=np.intp), np.array(q_idx, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _jacobi_sweeps(work: FloatArray, tol: float, max_sweeps: int) -> Tuple[FloatArray, FloatArray]:
    """Orthogonalize the columns of ``work`` in place; returns (work, V)."""
    n = work.shape[1]
    v = np.eye(n)
    schedule = round_robin_pairs(n)
    off = 0.0
    for sweep in range(1, max_sweeps + 1):
        off = 0.0
        for p, q in schedule:
            ap = work[:, p]
            aq = work[:, q]
            alpha = np.einsum("ij,ij->j", ap, ap)
            beta = np.einsum("ij,ij->j", aq, aq)
            gamma = np.einsum("ij,ij->j", ap, aq)
            denom = np.sqrt(alpha * beta)
            safe = denom > 0.0
            rel = np.zeros_like(gamma)
            rel[safe] = np.abs(gamma[safe]) / denom[safe]
            if rel.size:
                off = max(off, float(rel.max()))
            rotate = rel > tol
            if not rotate.any():
                continue
            p, q = p[rotate], q[rotate]
            alpha, beta, gamma = alpha[rotate], beta[rotate], gamma[rotate]
            zeta = (beta - alpha) / (2.0 * gamma)
            sign = np.where(zeta >= 0.0, 1.0, -1.0)
            t = sign / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            for mat in (work, v):
                cp = mat[:, p]
                cq = mat[:, q]
                mat[:, p] = c * cp - s * cq
                mat[:, q] = s * cp + c * cq
        logger.debug("jacobi sweep %d: max relative off-diagonal %.3e", sweep, off)
        if off <= tol:
            return work, v
    raise SVDConvergenceError(max_sweeps, off)


def _complete_basis(u: FloatArray, keep: NDArray[np.bool_]) -> FloatArray:
    """Replace columns not in ``keep`` with an orthonormal complement of the kept ones."""
    missing = int((~keep).sum())
    if missing == 0:
        return u
    kept = u[:, keep]
    q, _ = np.linalg.qr(np.hstack([kept, np.eye(u.shape[0])]))
    u = u.copy()
    u[:, ~keep] = q[:, kept.shape[1]:kept.shape[1] + missing]
    return u


def _apply_sign_convention(u: FloatArray, vt: FloatArray) -> Tuple[FloatArray, FloatArray]:
    """Make the largest-magnitude entry of every left singular vector positive."""
    if u.size == 0:
        return u, vt
    rows = np.argmax(np.abs(u), axis=0)
    signs = np.where(u[rows, np.arange(u.shape[1])] < 0.0, -1.0, 1.0)
    return u * signs, vt * signs[:, None]


def svd(
    matrix: ArrayLike, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS
) -> Tuple[FloatArray, FloatArray, FloatArray]:
    """
    Economy SVD ``matrix = U diag(S) Vt`` by one-sided Jacobi.

    S is non-increasing and non-negative. Raises SVDConvergenceError when the
    sweep cap is reached and NumericalError for non-finite input.
    """
    a = np.array(matrix, dtype=float, ndmin=2)
    if not np.all(np.isfinite(a)):
        raise NumericalError("svd input contains non-finite entries")
    m, n = a.shape
    if m < n:
        u_t, s, vt_t = svd(a.T, tol, max_sweeps)
        return _finish(vt_t.T, s, u_t.T)
    if n == 0:
        return np.zeros((m, 0)), np.zeros(0), np.zeros((0, 0))

    q, r = np.linalg.qr(a)
    work, v = _jacobi_sweeps(r.copy(), tol, max_sweeps)
    sigma = np.linalg.norm(work, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, work, v = sigma[order], work[:, order], v[:, order]
    # columns at rounding level carry no direction; they are completed instead
    cutoff = max(m, n) * np.finfo(float).eps * sigma[0] if sigma.size else 0.0
    nonzero = sigma > cutoff
    u_r = np.zeros_like(work)
    u_r[:, nonzero] = work[:, nonzero] / sigma[nonzero]
    u_r = _complete_basis(u_r, nonzero)
    return _finish(q @ u_r, sigma, v.T)


def _finish(u: FloatArray, s: FloatArray, vt: FloatArray) -> Tuple[FloatArray, FloatArray, FloatArray]:
    u, vt = _apply_sign_convention(u, vt)
    return u, s, vt
