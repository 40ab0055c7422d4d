"""Core types shared across rdnlab."""

from .errors import (
    ArgumentError,
    BallError,
    BracketError,
    ConfigError,
    DependenceError,
    DominanceError,
    MonotonicityError,
    NumericalError,
    OutputError,
    RateUndefinedError,
    RDNLabError,
    ScheduleError,
    StructuralError,
    SVDConvergenceError,
)
from .base_problem import BaseProblem, SnapshotParams
