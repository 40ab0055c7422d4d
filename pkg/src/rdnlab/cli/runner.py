"""
Experiment runner for the rdnlab commands.

Builds the configured problem and dispatches the snapshot, separation,
certificate and inverse-network commands. Each command writes its
artifacts into the output directory and returns the written paths.
"""

import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..chebfit.series import cheb_fit
from ..core.base_problem import BaseProblem, Params
from ..core.errors import ConfigError, NumericalError
from ..hyperbolic.burgers import BurgersProblem
from ..hyperbolic.color import AdvectionProblem, ColorProblem
from ..hyperbolic.profiles import BumpProfile, KinkProfile, Profile, StepProfile
from ..hyperbolic.snapshots import snapshot_grid
from ..invnet.bisection import ADAPTER_LAYERS, bisection_oracle, build_inverse
from ..invnet.monotone import random_monotone_network
from ..nwidth.ball import Ball2N
from ..nwidth.certificate import (
    CLAIMED_ALPHA,
    advection_ball,
    burgers_ball,
    certify,
    color_ball,
)
from ..separation.sweep import EXPERIMENTS, BurgersSeparation, ColorSeparation, SeparationExperiment
from . import charts, io
from .config import ExperimentConfig

logger = logging.getLogger(__name__)

#: oracle agreement required of the network inverse
ORACLE_TOL = 1e-9

DEFAULT_BUDGETS = {
    "advection": [2, 4, 8, 16, 32, 64],
    "color": [4, 8, 12, 16, 24, 32, 40, 48],
    "burgers": [5, 6, 7, 8, 9, 10, 11, 12, 13, 14],
}

DEFAULT_LOCATIONS = {"advection": 0.0, "color": 0.1}
SEPARATION_PROFILES = ("step", "kink")


def build_profile(kind: str, location: float) -> Profile:
    if kind == "step":
        return StepProfile(location)
    if kind == "kink":
        return KinkProfile(location)
    return BumpProfile(center=location)


def build_problem(config: ExperimentConfig) -> BaseProblem:
    """Problem instance for the configured manifold."""
    physics = config.physics
    if config.problem == "burgers":
        return BurgersProblem(physics.x0, physics.gamma, physics.t_final or 3.0, physics.margin)
    location = physics.location if physics.location is not None else DEFAULT_LOCATIONS[config.problem]
    profile = build_profile(physics.profile, location)
    if config.problem == "advection":
        return AdvectionProblem(physics.t_final or 1.0, profile)
    return ColorProblem(physics.t_final or 0.5, profile)


class ExperimentRunner:
    """
    Runs rdnlab commands for one validated config.

    Provides a centralized way to:
    - Build the configured problem and schedules
    - Run the snapshot, separation and certificate pipelines
    - Run the inverse-network self test
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.problem = build_problem(config)
        self.out = Path(config.out)
        self.commands: Dict[str, Callable[[], List[Path]]] = {
            "snapshots": self.snapshots,
            "separation": self.separation,
            "certify": self.certify,
            "invnet-test": self.invnet_test,
        }

    def run(self, command: str) -> List[Path]:
        if command not in self.commands:
            raise ConfigError(f"unknown command: {command}")
        logger.info("%s: %s problem, output in %s", command, self.config.problem, self.out)
        io.ensure_dir(self.out)
        return self.commands[command]()

    # -- schedules ---------------------------------------------------------------

    def times(self) -> List[float]:
        schedule = self.config.schedule
        if schedule.times is not None:
            return [float(t) for t in schedule.times]
        return self.problem.default_times(schedule.time_count)

    def mus(self) -> List[Params]:
        default = self.problem.default_mus()[0]
        grid = self.config.schedule.mu_grid(default)
        return grid if grid is not None else self.problem.default_mus()

    def budgets(self) -> List[int]:
        budgets = self.config.sweep.budgets
        return list(budgets) if budgets is not None else DEFAULT_BUDGETS[self.config.problem]

    # -- commands ----------------------------------------------------------------

    def snapshots(self) -> List[Path]:
        snapshots = snapshot_grid(self.problem, self.times(), self.mus(), self.config.grid.n_delta, self.config.jobs)
        written = [io.write_snapshots(snapshots, self.out / "snapshots.csv")]
        if isinstance(self.problem, BurgersProblem):
            written.append(io.write_shock_path(self.problem.shock_path, self.out / "shock_path.csv"))
        elif isinstance(self.problem, ColorProblem) and not isinstance(self.problem, AdvectionProblem):
            t, mu = self.problem.t_final, self.problem.mu
            series = cheb_fit(
                self.problem.transport(t, mu), self.config.grid.cheb_degree, self.problem.lagrangian_window(t, mu)
            )
            written.append(io.write_series(series, self.out / "transport_series.csv"))
        return written

    def experiment(self) -> SeparationExperiment:
        profile = self.config.physics.profile
        if self.config.problem == "advection" and profile != "step":
            raise ConfigError("advection separation sweeps need profile = step")
        if self.config.problem == "color" and profile not in SEPARATION_PROFILES:
            raise ConfigError(f"color separation sweeps need profile = step or kink, got {profile}")
        experiment_class = EXPERIMENTS[self.config.problem]
        if experiment_class is ColorSeparation:
            return ColorSeparation(
                self.problem, self.config.grid.n_delta, self.config.jobs, self.config.grid.lowering_points
            )
        if experiment_class is BurgersSeparation:
            return BurgersSeparation(self.problem, self.config.grid.n_delta, self.config.jobs, self.config.sweep.norm)
        return experiment_class(self.problem, self.config.grid.n_delta, self.config.jobs)

    def separation(self) -> List[Path]:
        result = self.experiment().run(self.budgets(), self.times(), self.mus())
        return [
            io.write_separation(result, self.out / "separation.csv"),
            io.write_text(result.summary_text(), self.out / "separation_summary.txt"),
            charts.separation_chart(result, self.out / "separation.svg"),
        ]

    def ball_factory(self) -> Callable[[int], Ball2N]:
        n_delta: Optional[int] = self.config.certificate.n_delta
        problem = self.problem
        if isinstance(problem, BurgersProblem):
            return lambda n: burgers_ball(n, problem, n_delta or 4096)
        if isinstance(problem, AdvectionProblem):
            return lambda n: advection_ball(n, n_delta, problem)
        if isinstance(problem, ColorProblem):
            return lambda n: color_ball(n, problem, problem.mu, n_delta=n_delta or 2**14)
        raise ConfigError(f"no certificate for {self.config.problem}")

    def alpha(self) -> float:
        claimed = self.config.certificate.alpha
        if claimed is not None:
            return claimed
        key = self.config.problem
        if key == "color":
            key = f"color-{self.config.physics.profile}"
        if key not in CLAIMED_ALPHA:
            raise ConfigError(f"no claimed exponent for {key}, set [certificate] alpha")
        return CLAIMED_ALPHA[key]

    def certify(self) -> List[Path]:
        settings = self.config.certificate
        report = certify(
            self.ball_factory(), settings.ns, self.alpha(), self.config.problem, settings.min_ratio, settings.a_bound
        )
        if not report.passed:
            logger.warning("%s certificate failed:\n%s", self.config.problem, report.summary_text())
        return [
            io.write_certificate(report, self.out / "certificate.csv"),
            io.write_text(report.summary_text(), self.out / "summary.txt"),
            charts.certificate_chart(report, self.out / "certificate.svg"),
        ]

    def invnet_test(self) -> List[Path]:
        rows = [self.inverse_row(l_inv, rng) for l_inv, rng in self._seeded(self.config.sweep.l_inv)]
        path = io.write_inverse_test(rows, self.out / "invnet_test.csv")
        failed = [row.l_inv for row in rows if not row.passed]
        if failed:
            raise NumericalError(f"bisection inverse test failed for l_inv={failed} (see {path})")
        return [path]

    def _seeded(self, l_invs: Sequence[int]):
        # one child stream per l_inv so rows do not depend on the list order
        children = np.random.SeedSequence(self.config.seed).spawn(len(l_invs))
        return [(l_inv, np.random.default_rng(child)) for l_inv, child in zip(l_invs, children)]

    def inverse_row(self, l_inv: int, rng: np.random.Generator) -> io.InverseTestRow:
        """Worst oracle deviation and inverse error over random monotone networks."""
        sweep = self.config.sweep
        nodes = np.linspace(0.0, 1.0, sweep.pieces + 1)
        max_dev = max_err = 0.0
        layers = expected = 0
        structure_ok = True
        for _ in range(sweep.networks):
            f = random_monotone_network(rng, sweep.pieces)
            inverse = build_inverse(f, l_inv)
            x = rng.uniform(0.0, 1.0, sweep.points)
            approx = np.asarray(inverse(x), dtype=float)
            oracle = bisection_oracle(f, f.domain, x, l_inv)
            exact = np.interp(x, np.asarray(f(nodes), dtype=float), nodes)
            max_dev = max(max_dev, float(np.max(np.abs(approx - oracle))))
            max_err = max(max_err, float(np.max(np.abs(approx - exact))))
            layers = inverse.net.depth
            expected = (f.net.depth + 4) * l_inv + ADAPTER_LAYERS
            structure_ok = structure_ok and layers == expected
        bound = 2.0 ** (-l_inv)
        passed = structure_ok and max_dev <= ORACLE_TOL and max_err <= bound + 1e-12
        logger.info("invnet l_inv=%d: oracle dev %.3e, inverse err %.3e (bound %.3e)", l_inv, max_dev, max_err, bound)
        return io.InverseTestRow(
            l_inv=l_inv,
            max_oracle_dev=max_dev,
            max_inverse_err=max_err,
            bound=bound,
            layers=layers,
            expected_layers=expected,
            passed=passed,
        )
