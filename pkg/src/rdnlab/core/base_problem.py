"""
BaseProblem interface for all solution manifolds in rdnlab.

A problem is a parametrized family u(x, t; mu) on a one-dimensional
window. Every problem can be sampled into snapshot matrices, evaluated
pointwise and compared against its network approximations.
"""

from abc import ABC, abstractmethod
from typing import List, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field

from .errors import ArgumentError

Interval = Tuple[float, float]
Params = Tuple[float, ...]


def format_value(value: float) -> str:
    """Shortest round-trip representation used in CSV labels."""
    return repr(float(value))


class SnapshotParams(BaseModel):
    """(t, mu) record attached to one snapshot column."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(..., ge=0.0, description="Time of the snapshot")
    mu: Params = Field(default=(), description="Problem parameters")

    def label(self) -> str:
        """Column label ``t=<v>;mu=<v1>|<v2>|<v3>``."""
        mu = "|".join(format_value(m) for m in self.mu)
        return f"t={format_value(self.t)};mu={mu}"

    @classmethod
    def from_label(cls, label: str) -> "SnapshotParams":
        t_part, mu_part = label.split(";")
        values = mu_part.removeprefix("mu=")
        mu = tuple(float(v) for v in values.split("|")) if values else ()
        return cls(t=float(t_part.removeprefix("t=")), mu=mu)


class BaseProblem(ABC):
    """
    Abstract base class for all solution manifolds.

    This interface ensures that every problem can be:
    - Evaluated pointwise at (x, t, mu)
    - Sampled on an equidistant grid of its window
    - Scheduled over default times and parameters
    - Mapped to and from the unit interval used for norms
    """

    name: str = "problem"

    def __init__(self, t_final: float):
        if t_final <= 0.0:
            raise ArgumentError(f"t_final must be positive, got {t_final}")
        self.t_final = float(t_final)

    @property
    @abstractmethod
    def window(self) -> Interval:
        """Physical spatial window sampled by snapshots."""

    @abstractmethod
    def solution(self, x: ArrayLike, t: float, mu: Params = ()) -> NDArray[np.float64]:
        """Evaluate u(x, t; mu) on an array of positions."""

    @abstractmethod
    def default_mus(self) -> List[Params]:
        """Parameter points used when a config does not list any."""

    def to_unit(self, x: ArrayLike) -> NDArray[np.float64]:
        """Affine map of the window onto [0, 1]."""
        lo, hi = self.window
        return (np.asarray(x, dtype=float) - lo) / (hi - lo)

    def from_unit(self, y: ArrayLike) -> NDArray[np.float64]:
        """Affine map of [0, 1] onto the window."""
        lo, hi = self.window
        return lo + (hi - lo) * np.asarray(y, dtype=float)

    def unit_solution(self, y: ArrayLike, t: float, mu: Params = ()) -> NDArray[np.float64]:
        """Solution expressed in the unit-interval coordinate."""
        return self.solution(self.from_unit(y), t, mu)

    def default_times(self, count: int) -> List[float]:
        return [float(t) for t in np.linspace(0.0, self.t_final, count)]
