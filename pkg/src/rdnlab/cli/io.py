"""CSV writers for experiment artifacts."""

import logging
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel

from ..chebfit.series import ChebyshevSeries
from ..core.errors import OutputError
from ..hyperbolic.burgers import ShockPath
from ..nwidth.certificate import CertificateReport
from ..reduction.pod import SnapshotMatrix
from ..separation.sweep import SeparationResult

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


class InverseTestRow(BaseModel):
    l_inv: int
    max_oracle_dev: float
    max_inverse_err: float
    bound: float
    layers: int
    expected_layers: int
    passed: bool


def ensure_dir(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create output directory {path}: {exc}") from exc
    return path


def _write_frame(frame: pd.DataFrame, path: Path, header_lines: Sequence[str] = ()) -> Path:
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            for line in header_lines:
                handle.write(f"# {line}\n")
            frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    logger.info("wrote %s (%d rows)", path, len(frame))
    return path


def write_text(text: str, path: Path) -> Path:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    return path


def write_snapshots(snapshots: SnapshotMatrix, path: Path) -> Path:
    """Grid column ``x`` (physical coordinate) followed by one column per (t, mu)."""
    columns = {"x": snapshots.physical_grid()}
    for j, p in enumerate(snapshots.params):
        columns[p.label()] = snapshots.values[:, j]
    return _write_frame(pd.DataFrame(columns), path)


def write_shock_path(path_data: ShockPath, path: Path) -> Path:
    frame = pd.DataFrame(
        {
            "t": path_data.times,
            "x_s": path_data.positions,
            "I_lo": path_data.lower,
            "I_hi": path_data.upper,
        }
    )
    return _write_frame(frame, path)


def write_series(series: ChebyshevSeries, path: Path) -> Path:
    a, b = series.interval
    frame = pd.DataFrame({"m": np.arange(series.coeffs.size), "coeff": series.coeffs})
    return _write_frame(frame, path, [f"interval={a!r},{b!r}"])


def write_separation(result: SeparationResult, path: Path) -> Path:
    frame = pd.DataFrame([row.model_dump() for row in result.rows], columns=["M", "pod_error", "rdn_error"])
    return _write_frame(frame, path)


def write_certificate(report: CertificateReport, path: Path) -> Path:
    frame = pd.DataFrame(
        [row.model_dump() for row in report.rows],
        columns=["N", "min_psi_norm", "scaled_norm", "A_N1", "dominant"],
    )
    return _write_frame(frame, path)


def write_inverse_test(rows: Iterable[InverseTestRow], path: Path) -> Path:
    frame = pd.DataFrame([row.model_dump() for row in rows], columns=list(InverseTestRow.model_fields))
    return _write_frame(frame, path)
