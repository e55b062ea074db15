"""SVG figures for the command-line scenarios.

Figures are written through matplotlib's svg backend with a fixed hash salt
and no date metadata, so identical data gives identical files.
"""

import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

logger = logging.getLogger(__name__)

golden_mean = (np.sqrt(5) - 1.0) / 2.0
fig_width = 5.0
colors = ["#08589e", "#d95f02", "#1b9e77", "#7570b3"]

params = {
    "axes.prop_cycle": matplotlib.cycler(color=colors),
    "axes.labelsize": 10,
    "font.family": "serif",
    "font.size": 9,
    "mathtext.fontset": "stix",
    "legend.fontsize": 8,
    "figure.figsize": [fig_width, fig_width * golden_mean],
    "lines.linewidth": 1.0,
    "svg.hashsalt": "leapfrog",
    "svg.fonttype": "path",
}


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.debug("wrote %s", path)
    return path


def _margin(ax, x: np.ndarray, y: np.ndarray, frac: float = 0.05) -> None:
    """Data bounds plus a relative margin on both axes."""
    for setter, values in ((ax.set_xlim, x), (ax.set_ylim, y)):
        lo, hi = float(np.min(values)), float(np.max(values))
        pad = frac * max(hi - lo, 1e-12)
        setter(lo - pad, hi + pad)


def filament_paths(frame: pd.DataFrame, path: Path, title: str) -> Path:
    """Both filament paths in the (z, rho) plane."""
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        ax.plot(frame["p12"], frame["p11"], label="$P_1$")
        ax.plot(frame["p22"], frame["p21"], label="$P_2$")
        ax.set_xlabel("$z$")
        ax.set_ylabel(r"$\rho$")
        ax.set_title(title)
        ax.legend(loc="best")
        _margin(ax, np.concatenate([frame["p12"], frame["p22"]]), np.concatenate([frame["p11"], frame["p21"]]))
        fig.tight_layout()
        return _save(fig, path)


def rho_exchange(frame: pd.DataFrame, path: Path) -> Path:
    """p11 and p21 against time, showing the periodic exchange of radii."""
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        ax.plot(frame["t"], frame["p11"], label="$p_{1,1}$")
        ax.plot(frame["t"], frame["p21"], label="$p_{2,1}$")
        ax.set_xlabel(r"$\tau$")
        ax.legend(loc="best")
        fig.tight_layout()
        return _save(fig, path)


def ring_frame(snapshot: pd.DataFrame, path: Path, bounds: tuple[np.ndarray, np.ndarray] | None = None) -> Path:
    """Cross-sections of both ring cores at one time."""
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        for ring, part in snapshot.groupby("ring_id"):
            x = np.append(part["y"].to_numpy(), part["y"].iloc[0])
            y = np.append(part["x"].to_numpy(), part["x"].iloc[0])
            ax.fill(x, y, alpha=0.6, label=f"ring {ring}")
        ax.set_aspect("equal")
        ax.set_xlabel("$z$")
        ax.set_ylabel(r"$\rho$")
        ax.set_title(rf"$\tau = {snapshot['tau'].iloc[0]:.4f}$")
        if bounds is not None:
            _margin(ax, *bounds)
        fig.tight_layout()
        return _save(fig, path)


def line_plot(x, ys: dict[str, np.ndarray], path: Path, xlabel: str, ylabel: str = "") -> Path:
    """Generic overlay of named curves, used for period and non-resonance scans."""
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        for label, y in ys.items():
            ax.plot(x, y, label=label)
        ax.axhline(0.0, color="0.6", linewidth=0.5)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if len(ys) > 1:
            ax.legend(loc="best")
        fig.tight_layout()
        return _save(fig, path)
