"""
Depth-separation sweeps: POD worst-case error against RDN worst-case error
at matched degrees of freedom.

Every manifold provides an experiment class; the sweep itself (snapshots,
POD, parallel RDN errors over the test grid, rate fits) is shared.
"""

import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple, Type, cast

from pydantic import BaseModel, Field

from ..core.base_problem import BaseProblem, SnapshotParams
from ..core.errors import ArgumentError, NumericalError, RDNLabError
from ..hyperbolic.burgers import BurgersProblem
from ..hyperbolic.color import AdvectionProblem, ColorProblem
from ..hyperbolic.profiles import StepProfile
from ..hyperbolic.snapshots import snapshot_grid, snapshot_schedule
from ..nwidth.decay import DecayFit, fit_decay
from ..reduction.pod import SnapshotSVD
from .advection import advection_rdn
from .burgers import HEAD_DOF, SHARED_WEIGHTS, build_burgers_rdn, burgers_head, burgers_rdn_error
from .color import DEFAULT_LOWERING_POINTS, build_color_rdn, color_rdn_error
from .fronts import front_error, step_front

logger = logging.getLogger(__name__)

#: errors at or below this are rounding plateaus and stay out of rate fits
FIT_FLOOR = 1e-11


class SeparationRow(BaseModel):
    M: int = Field(..., ge=1, description="Degrees of freedom")
    pod_error: float = Field(..., ge=0.0, description="Worst-case POD projection error at rank M")
    rdn_error: float = Field(..., ge=0.0, description="Worst-case RDN error over the test grid")
    saturated: bool = Field(False, description="M reaches the snapshot count, so the POD error is trivially zero")


class SeparationResult(BaseModel):
    """Sweep rows and the fitted decay models (None when too few points remain)."""

    problem: str
    rows: List[SeparationRow]
    norm: str = "l2"
    snapshot_count: int = 0
    pod_fit: Optional[DecayFit] = None
    rdn_fit: Optional[DecayFit] = None

    def summary_text(self) -> str:
        lines = [
            f"problem: {self.problem}",
            "kind: POD upper-bound surrogate vs explicit RDN",
            f"rdn_norm: {self.norm}",
        ]
        saturated = [row.M for row in self.rows if row.saturated]
        if saturated:
            lines.append(
                f"pod_saturated: M = {', '.join(map(str, saturated))} reach the {self.snapshot_count} snapshots"
                " (left out of pod_fit)"
            )
        for label, fit in (("pod_fit", self.pod_fit), ("rdn_fit", self.rdn_fit)):
            if fit is None:
                lines.append(f"{label}: n/a")
            else:
                lines.append(f"{label}: {fit.model} rate={fit.rate:.6f} r_squared={fit.r_squared:.6f} points={fit.points}")
        return "\n".join(lines) + "\n"


class SeparationExperiment(ABC):
    """
    Abstract base class for separation experiments.

    Subclasses say how to:
    - Filter the (t, mu) test grid
    - Build the RDN of one budget at one test point and measure its error
    """

    name = "experiment"
    rdn_model = "exponential"
    norm = "l2"
    problem_type: Type[BaseProblem] = BaseProblem

    def __init__(self, problem: BaseProblem, n_delta: int = 1024, jobs: int = 1):
        if not isinstance(problem, self.problem_type):
            raise ArgumentError(f"{self.name} experiments need a {self.problem_type.__name__}, got {type(problem).__name__}")
        self.problem = problem
        self.n_delta = n_delta
        self.jobs = max(1, jobs)

    def test_points(self, times: Sequence[float], mus: Sequence) -> List[SnapshotParams]:
        return snapshot_schedule(times, mus)

    @abstractmethod
    def rdn_error(self, point: SnapshotParams, budget: int) -> float:
        """Error of the budget-M RDN at one test point."""

    def worst_rdn_error(self, points: Sequence[SnapshotParams], budget: int) -> float:
        def one(point: SnapshotParams) -> float:
            try:
                return self.rdn_error(point, budget)
            except RDNLabError as exc:
                raise NumericalError(f"{exc} (t={point.t:.6g}, mu={point.mu}, M={budget})") from exc

        if self.jobs > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                errors = list(pool.map(one, points))
        else:
            errors = [one(p) for p in points]
        return max(errors)

    def run(self, budgets: Sequence[int], times: Sequence[float], mus: Optional[Sequence] = None) -> SeparationResult:
        if not budgets:
            raise ArgumentError("separation sweeps need at least one budget")
        mus = list(mus) if mus is not None else self.problem.default_mus()
        snapshots = snapshot_grid(self.problem, times, mus, self.n_delta, self.jobs)
        decomposition = SnapshotSVD(snapshots)
        max_rank = min(snapshots.n_delta, snapshots.count)
        points = self.test_points(times, mus)
        if not points:
            raise ArgumentError(f"no admissible {self.name} test points in the schedule")

        rows = []
        for budget in budgets:
            saturated = int(budget) >= snapshots.count
            if saturated:
                logger.warning(
                    "%s M=%d reaches the %d snapshots: POD error is trivially zero and left out of the fit",
                    self.name,
                    budget,
                    snapshots.count,
                )
            pod = decomposition.worst_case_error(min(int(budget), max_rank))
            rdn = self.worst_rdn_error(points, int(budget))
            logger.info("%s M=%d: pod %.4e, rdn %.4e", self.name, budget, pod, rdn)
            rows.append(SeparationRow(M=int(budget), pod_error=pod, rdn_error=rdn, saturated=saturated))
        return SeparationResult(
            problem=self.name,
            rows=rows,
            norm=self.norm,
            snapshot_count=snapshots.count,
            pod_fit=_try_fit([(r.M, r.pod_error) for r in rows if not r.saturated], "algebraic"),
            rdn_fit=_try_fit([(r.M, r.rdn_error) for r in rows], self.rdn_model),
        )


def _try_fit(points: List[Tuple[int, float]], model: str) -> Optional[DecayFit]:
    try:
        return fit_decay(points, "exponential" if model == "exponential" else "algebraic", floor=FIT_FLOOR)
    except ArgumentError:
        return None


class AdvectionSeparation(SeparationExperiment):
    """Exact shift networks: the error stays at the front-location tolerance."""

    name = "advection"
    problem_type = AdvectionProblem

    def rdn_error(self, point: SnapshotParams, budget: int) -> float:
        problem = cast(AdvectionProblem, self.problem)
        rdn = advection_rdn(problem, point.t)
        profile = cast(StepProfile, problem.u0)
        front = step_front(rdn, problem.window, profile.left, profile.right)
        return front_error(min(problem.front(point.t), 1.0), front, profile.left - profile.right)


class ColorSeparation(SeparationExperiment):
    name = "color"
    problem_type = ColorProblem

    def __init__(
        self, problem: BaseProblem, n_delta: int = 1024, jobs: int = 1, lowering_points: int = DEFAULT_LOWERING_POINTS
    ):
        super().__init__(problem, n_delta, jobs)
        self.lowering_points = lowering_points

    def rdn_error(self, point: SnapshotParams, budget: int) -> float:
        problem = cast(ColorProblem, self.problem)
        rdn = build_color_rdn(problem, point.t, point.mu, budget, self.lowering_points)
        return color_rdn_error(problem, rdn, 4 * self.n_delta + 1)


class BurgersSeparation(SeparationExperiment):
    """Budget M = 4 + L_inv: three shared time weights, one head coefficient. Errors in L1 by default."""

    name = "burgers"
    problem_type = BurgersProblem

    def __init__(self, problem: BaseProblem, n_delta: int = 1024, jobs: int = 1, norm: str = "l1"):
        super().__init__(problem, n_delta, jobs)
        if norm not in ("l1", "l2"):
            raise ArgumentError(f"Burgers errors are measured in l1 or l2, got {norm!r}")
        self.norm = norm
        self.head = burgers_head(cast(BurgersProblem, problem))

    @staticmethod
    def fixed_dof() -> int:
        return 5 - SHARED_WEIGHTS + HEAD_DOF

    def test_points(self, times: Sequence[float], mus: Sequence) -> List[SnapshotParams]:
        t2 = cast(BurgersProblem, self.problem).t2
        points = [p for p in snapshot_schedule(times, mus) if p.t > t2]
        logger.debug("burgers: %d test times after t2=%.6f", len(points), t2)
        return points

    def rdn_error(self, point: SnapshotParams, budget: int) -> float:
        problem = cast(BurgersProblem, self.problem)
        l_inv = budget - self.fixed_dof()
        if l_inv < 1:
            raise ArgumentError(f"Burgers budget must exceed {self.fixed_dof()}, got {budget}")
        return burgers_rdn_error(problem, build_burgers_rdn(problem, point.t, l_inv, self.head), self.norm)


EXPERIMENTS: Dict[str, Type[SeparationExperiment]] = {
    "advection": AdvectionSeparation,
    "color": ColorSeparation,
    "burgers": BurgersSeparation,
}
