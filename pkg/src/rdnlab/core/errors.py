"""
Exception hierarchy for rdnlab.

Every error raised by the library derives from RDNLabError. The CLI maps
the three families below onto exit codes:

- ConfigError -> 2 (ArgumentError and StructuralError as well: they come from config values)
- NumericalError -> 3
- OutputError -> 4
"""

from typing import Optional, Tuple


class RDNLabError(Exception):
    """Base class for all rdnlab errors."""


class StructuralError(RDNLabError, ValueError):
    """Network or matrix shapes do not fit together."""


class ArgumentError(RDNLabError, ValueError):
    """An argument is outside its admissible range."""


class ConfigError(RDNLabError, ValueError):
    """Experiment configuration could not be parsed or validated."""


class OutputError(RDNLabError, OSError):
    """Output directory or file could not be written."""


class NumericalError(RDNLabError, ArithmeticError):
    """A numerical procedure failed or produced non-finite values."""


class SVDConvergenceError(NumericalError):
    """Jacobi sweeps did not converge within the sweep cap."""

    def __init__(self, sweeps: int, off_diagonal: float):
        self.sweeps = sweeps
        self.off_diagonal = off_diagonal
        super().__init__(
            f"SVD did not converge after {sweeps} sweeps "
            f"(largest relative off-diagonal {off_diagonal:.3e})"
        )


class BracketError(NumericalError):
    """A root-finding bracket does not contain a sign change."""

    def __init__(self, interval: Tuple[float, float], residuals: Tuple[float, float], what: str = "root"):
        self.interval = interval
        self.residuals = residuals
        super().__init__(
            f"cannot bracket {what} in [{interval[0]:.6g}, {interval[1]:.6g}]: "
            f"residuals {residuals[0]:.3e}, {residuals[1]:.3e}"
        )


class RateUndefinedError(NumericalError):
    """Coefficient decay rate cannot be estimated."""


class MonotonicityError(NumericalError):
    """A network is not non-decreasing on the sampled grid."""

    def __init__(self, x_left: float, x_right: float, f_left: float, f_right: float):
        self.witness = (x_left, x_right)
        self.values = (f_left, f_right)
        super().__init__(
            f"not monotone: f({x_left:.6g}) = {f_left:.6g} > "
            f"f({x_right:.6g}) = {f_right:.6g}"
        )


class BallError(NumericalError):
    """A 2N-ball construction failed."""

    def __init__(self, message: str, suggested_dt: Optional[float] = None):
        self.suggested_dt = suggested_dt
        if suggested_dt is not None:
            message = f"{message} (try dt <= {suggested_dt:.4g})"
        super().__init__(message)


class ScheduleError(BallError):
    """Disjointness regions S_n overlap."""


class DominanceError(BallError):
    """Normalized Gram matrix is not strictly diagonally dominant."""


class DependenceError(BallError):
    """Gram-Schmidt hit a (numerically) dependent function."""
