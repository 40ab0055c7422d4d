"""Least-squares decay-rate fits for error curves."""

import math
from typing import Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import ArgumentError

DecayModel = Literal["algebraic", "exponential"]

MIN_FIT_POINTS = 4


class DecayFit(BaseModel):
    """Fitted line through log errors."""

    model_config = ConfigDict(frozen=True)

    model: DecayModel = Field(..., description="algebraic: log e vs log n; exponential: log e vs n")
    rate: float = Field(..., description="Slope of the fitted line")
    intercept: float = Field(..., description="Intercept of the fitted line")
    r_squared: float = Field(..., ge=0.0, le=1.0, description="Coefficient of determination")
    fit_range: Tuple[float, float] = Field(..., description="Smallest and largest n used")
    points: int = Field(..., ge=MIN_FIT_POINTS, description="Number of fitted points")

    @property
    def base(self) -> float:
        """exp(-rate): the geometric decay base of an exponential fit."""
        return math.exp(-self.rate)

    def predict(self, n: float) -> float:
        x = math.log(n) if self.model == "algebraic" else n
        return math.exp(self.intercept + self.rate * x)


def fit_decay(
    errors: Sequence[Tuple[float, float]],
    model: DecayModel = "algebraic",
    window: Optional[Tuple[int, int]] = None,
    floor: Optional[float] = None,
) -> DecayFit:
    """
    Fit e_n ~ C n^rate (algebraic) or e_n ~ C exp(rate n) (exponential).

    ``window`` selects a slice of the (n, e_n) pairs; ``floor`` drops points
    with e_n <= floor before fitting (rounding plateaus). Without a floor any
    non-positive error is rejected.
    """
    if model not in ("algebraic", "exponential"):
        raise ArgumentError(f"unknown decay model {model!r}")
    pairs = list(errors)
    if window is not None:
        pairs = pairs[window[0] : window[1]]
    n = np.array([p[0] for p in pairs], dtype=float)
    e = np.array([p[1] for p in pairs], dtype=float)
    if floor is not None:
        keep = e > floor
        n, e = n[keep], e[keep]
    elif np.any(e <= 0.0):
        raise ArgumentError("decay fits need positive errors")
    if n.size < MIN_FIT_POINTS:
        raise ArgumentError(f"decay fits need at least {MIN_FIT_POINTS} points, got {n.size}")

    x = np.log(n) if model == "algebraic" else n
    y = np.log(e)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if total == 0.0 else 1.0 - float(np.sum(residual**2)) / total
    return DecayFit(
        model=model,
        rate=float(slope),
        intercept=float(intercept),
        r_squared=min(1.0, max(0.0, r_squared)),
        fit_range=(float(n.min()), float(n.max())),
        points=int(n.size),
    )
