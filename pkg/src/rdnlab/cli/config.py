"""
Experiment configuration.

Configs are INI files; every section maps onto a pydantic settings model
and every key has a default, so ``[experiment] problem = advection`` is a
complete config. List values are comma-separated. Parameter grids are
given per component (``mu1``, ``mu2``, ``mu3``) and expanded as a
Cartesian product.
"""

import configparser
import itertools
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..core.errors import ConfigError

ProblemName = Literal["color", "burgers", "advection"]

LIST_KEYS = {
    "schedule": {"times", "mu1", "mu2", "mu3"},
    "sweep": {"budgets", "l_inv"},
    "certificate": {"ns"},
}


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ProblemSettings(_Section):
    """Physical parameters; keys that do not apply to the chosen problem are ignored."""

    t_final: Optional[float] = Field(None, gt=0.0, description="Final time (problem default when unset)")
    profile: Literal["step", "kink", "bump"] = Field("step", description="Color/advection initial datum")
    location: Optional[float] = Field(None, description="Jump or kink location of the datum")
    x0: float = Field(0.3, gt=0.0, description="Burgers ramp center")
    gamma: float = Field(0.2, gt=0.0, description="Burgers ramp half-width")
    margin: float = Field(0.2, ge=0.0, description="Burgers window margin past the final shock")


class GridSettings(_Section):
    n_delta: int = Field(1024, ge=64, description="Spatial grid intervals")
    lowering_points: int = Field(2**13, ge=64, description="Hinge grid for lowered Chebyshev transports")
    cheb_degree: int = Field(24, ge=1, le=200, description="Degree of exported transport series")


class ScheduleSettings(_Section):
    times: Optional[List[float]] = Field(None, min_length=1, description="Explicit snapshot times")
    time_count: int = Field(64, ge=1, description="Equidistant times in [0, t_final] when times is unset")
    mu1: Optional[List[float]] = Field(None, min_length=1)
    mu2: Optional[List[float]] = Field(None, min_length=1)
    mu3: Optional[List[float]] = Field(None, min_length=1)

    @field_validator("times")
    @classmethod
    def _non_negative(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is not None and min(value) < 0.0:
            raise ValueError("times must be non-negative")
        return value

    def mu_grid(self, default: Tuple[float, ...]) -> Optional[List[Tuple[float, ...]]]:
        """Cartesian product of the listed components, None when nothing is listed."""
        axes = [self.mu1, self.mu2, self.mu3]
        if all(axis is None for axis in axes):
            return None
        if not default:
            raise ConfigError("this problem takes no parameters, drop mu1/mu2/mu3")
        filled = [axis if axis is not None else [value] for axis, value in zip(axes, default)]
        return [tuple(point) for point in itertools.product(*filled)]


class SweepSettings(_Section):
    budgets: Optional[List[int]] = Field(None, min_length=1, description="Dof budgets (problem default when unset)")
    l_inv: List[int] = Field(default_factory=lambda: [4, 8, 12], min_length=1)
    networks: int = Field(50, ge=1, description="Random monotone networks per l_inv")
    points: int = Field(512, ge=2, description="Evaluation points per network")
    pieces: int = Field(16, ge=1, description="Linear pieces of each random network")
    norm: Literal["l1", "l2"] = Field("l1", description="Norm of Burgers RDN errors")

    @field_validator("budgets", "l_inv")
    @classmethod
    def _positive(cls, value: Optional[List[int]]) -> Optional[List[int]]:
        if value is not None and min(value) < 1:
            raise ValueError("entries must be positive")
        return value


class CertificateSettings(_Section):
    ns: List[int] = Field(default_factory=lambda: [4, 8, 16, 32], min_length=1)
    alpha: Optional[float] = Field(None, gt=0.0, description="Claimed exponent (manifold default when unset)")
    min_ratio: float = Field(0.5, gt=0.0, le=1.0)
    a_bound: float = Field(100.0, gt=0.0)
    n_delta: Optional[int] = Field(None, ge=64, description="Ball grid (factory default when unset)")

    @field_validator("ns")
    @classmethod
    def _positive(cls, value: List[int]) -> List[int]:
        if min(value) < 1:
            raise ValueError("N must be positive")
        return value


class ExperimentConfig(_Section):
    """Validated experiment configuration."""

    problem: ProblemName = Field(..., description="Solution manifold")
    seed: int = Field(0, ge=0, lt=2**64, description="Seed of the random test networks")
    jobs: int = Field(1, ge=1, description="Worker pool size")
    out: Path = Field(Path("results"), description="Output directory")
    physics: ProblemSettings = Field(default_factory=ProblemSettings)
    grid: GridSettings = Field(default_factory=GridSettings)
    schedule: ScheduleSettings = Field(default_factory=ScheduleSettings)
    sweep: SweepSettings = Field(default_factory=SweepSettings)
    certificate: CertificateSettings = Field(default_factory=CertificateSettings)


def _split_list(raw: str) -> List[str]:
    items = [item.strip() for item in raw.split(",")]
    return [item for item in items if item]


def _section_dict(parser: configparser.ConfigParser, name: str) -> Dict[str, Any]:
    list_keys = LIST_KEYS.get(name, set())
    return {
        key: _split_list(value) if key in list_keys else value.strip()
        for key, value in parser.items(name)
    }


def parse_config(text: str, overrides: Optional[Dict[str, Any]] = None, source: str = "<string>") -> ExperimentConfig:
    """Parse INI text into an ExperimentConfig; ``overrides`` replace [experiment] keys."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from exc

    sections = ("experiment", "physics", "grid", "schedule", "sweep", "certificate")
    unknown = [name for name in parser.sections() if name not in sections]
    if unknown:
        raise ConfigError(f"{source}: unknown section(s) {', '.join(sorted(unknown))}")

    data: Dict[str, Any] = _section_dict(parser, "experiment") if parser.has_section("experiment") else {}
    for name in sections[1:]:
        if parser.has_section(name):
            data[name] = _section_dict(parser, name)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value

    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise ConfigError(f"{source}: {problems}") from exc


def load_config(path: Optional[Path], overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Read and validate a config file (``None`` means overrides only)."""
    if path is None:
        return parse_config("", overrides, source="<defaults>")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, overrides, source=str(path))
