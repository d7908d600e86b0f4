"""Figure rendering for the CLI report path.

Every plotting entry point takes already-computed rows and a target path;
nothing here recomputes numerics.  The Agg backend is forced so rendering
works headless.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _new_axes(xlabel: str, ylabel: str, title: str):
    fig, ax = plt.subplots(figsize=(7.0, 4.3))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def plot_series(path: str, x, series: dict, xlabel: str, ylabel: str,
                title: str) -> None:
    """Line plot of one or more named series over a common abscissa."""
    fig, ax = _new_axes(xlabel, ylabel, title)
    for label, y in series.items():
        ax.plot(x, y, lw=1.2, label=label)
    if len(series) > 1:
        ax.legend()
    _finish(fig, path)


def plot_figure_rows(path: str, t: float, rows) -> None:
    """The renormalized Dedekind-sum trace against N."""
    ns = [n for n, _ in rows]
    vs = [v for _, v in rows]
    fig, ax = _new_axes("N", "renormalized trace",
                        f"exp(gamma_N|t|) E_N(cos(t D_N)),  t = {t:g}")
    ax.plot(ns, vs, lw=0.9)
    _finish(fig, path)


def plot_classes(path: str, classes) -> None:
    """Winding number against geodesic length, one dot per class."""
    fig, ax = _new_axes("length", "winding number psi",
                        f"{len(classes)} primitive classes")
    ax.scatter([g.length for g in classes], [g.psi for g in classes],
               s=6, alpha=0.5, linewidths=0)
    _finish(fig, path)


def plot_density(path: str, xs, gs, sigma: float) -> None:
    fig, ax = _new_axes("x", "g(x)", f"certified density, sigma = {sigma:g}")
    ax.plot(xs, gs, lw=1.0)
    lim = 8.0 * sigma
    ax.set_xlim(-lim, lim)
    _finish(fig, path)


def png_path(csv_path: str) -> str:
    if csv_path.endswith(".csv"):
        return csv_path[:-4] + ".png"
    return csv_path + ".png"
