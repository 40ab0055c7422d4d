"""Static SVG line charts of separation sweeps and certificates."""

import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..core.errors import OutputError  # noqa: E402
from ..nwidth.certificate import CertificateReport  # noqa: E402
from ..separation.sweep import SeparationResult  # noqa: E402

logger = logging.getLogger(__name__)

# fixed element ids so reruns produce identical files
plt.rcParams["svg.hashsalt"] = "rdnlab"


def _positive(values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    return np.where(values > 0.0, values, np.nan)


def _save(fig, path: Path) -> Path:
    try:
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    finally:
        plt.close(fig)
    logger.info("wrote %s", path)
    return path


def separation_chart(result: SeparationResult, path: Path) -> Path:
    """Semilog plot of POD and RDN worst-case errors against dof."""
    m = [row.M for row in result.rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(m, _positive([row.pod_error for row in result.rows]), "o-", label="POD")
    ax.plot(m, _positive([row.rdn_error for row in result.rows]), "s-", label="RDN")
    ax.set_yscale("log")
    ax.set_xlabel("degrees of freedom M")
    ax.set_ylabel("worst-case error")
    ax.set_title(f"{result.problem}: POD vs RDN")
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)


def certificate_chart(report: CertificateReport, path: Path) -> Path:
    """Log-log plot of min ||psi_n|| and its N^alpha scaling."""
    n = [row.N for row in report.rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(n, _positive([row.min_psi_norm for row in report.rows]), "o-", label="min psi norm")
    ax.plot(n, _positive([row.scaled_norm for row in report.rows]), "s--", label=f"scaled by N^{report.alpha_claim:g}")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("N")
    ax.set_title(f"{report.manifold}: lower-bound certificate")
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)
