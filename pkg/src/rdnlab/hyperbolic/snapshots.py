"""Sampling solution manifolds into snapshot matrices."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from ..core.base_problem import BaseProblem, Params, SnapshotParams
from ..core.errors import ArgumentError, NumericalError
from ..netcore.two_layer import equidistant_grid
from ..reduction.pod import SnapshotMatrix

logger = logging.getLogger(__name__)


def snapshot_schedule(times: Sequence[float], mus: Sequence[Params]) -> List[SnapshotParams]:
    """Cartesian (t, mu) schedule, time-major."""
    if not times or not mus:
        raise ArgumentError("snapshot schedules need at least one time and one parameter point")
    return [SnapshotParams(t=float(t), mu=tuple(mu)) for t in times for mu in mus]


def snapshot_grid(
    problem: BaseProblem,
    times: Sequence[float],
    mus: Optional[Sequence[Params]] = None,
    n_delta: int = 1024,
    jobs: int = 1,
) -> SnapshotMatrix:
    """
    Nodal samples of problem.solution on the unit grid, one column per (t, mu).

    Columns are computed on a thread pool of ``jobs`` workers and collected
    in schedule order.
    """
    if n_delta < 2:
        raise ArgumentError(f"n_delta must be >= 2, got {n_delta}")
    schedule = snapshot_schedule(times, mus if mus is not None else problem.default_mus())
    grid = equidistant_grid(n_delta)

    def column(p: SnapshotParams) -> np.ndarray:
        try:
            return np.asarray(problem.unit_solution(grid, p.t, p.mu), dtype=float)
        except NumericalError as exc:
            raise NumericalError(f"{exc} (t={p.t:.6g}, mu={p.mu})") from exc

    logger.info("sampling %d %s snapshots on %d points", len(schedule), problem.name, n_delta)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            columns = list(pool.map(column, schedule))
    else:
        columns = [column(p) for p in schedule]
    return SnapshotMatrix.from_columns(columns, schedule, n_delta, problem.window)
