"""Figure rendering for the CLI report paths.

Each helper writes one PNG next to the delimited output.  matplotlib's
Agg backend is forced so the CLI works headless.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "plot_normal_table",
    "plot_grid_density",
    "plot_matrix",
    "plot_reports",
]


def plot_normal_table(
    zs: Sequence[float], values: Sequence[float], path: Path
) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(zs, values, lw=1.5)
    ax.set_xlabel("z")
    ax.set_ylabel("one-sided integral")
    ax.set_title("One-sided normal table")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_grid_density(x, y, path: Path, title: str = "Grid density") -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(x, y, lw=1.5)
    ax.fill_between(x, y, alpha=0.2)
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_matrix(states, rows, path: Path, title: str = "Transition matrix") -> Path:
    arr = np.array([[float(v) for v in row] for row in rows])
    fig, ax = plt.subplots(figsize=(5, 4.5))
    im = ax.imshow(arr, cmap="viridis", vmin=0.0, vmax=1.0)
    ax.set_xticks(range(len(states)), states)
    ax.set_yticks(range(len(states)), states)
    ax.set_xlabel("to state")
    ax.set_ylabel("from state")
    ax.set_title(title)
    fig.colorbar(im, ax=ax, shrink=0.85)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_reports(reports, path: Path) -> Path:
    """Pass/fail overview bar chart for a scenario run."""
    names = [r.scenario for r in reports]
    elapsed = [r.elapsed_ms for r in reports]
    colors = ["#2a9d4e" if r.passed else "#d62728" for r in reports]
    height = max(2.5, 0.3 * len(names))
    fig, ax = plt.subplots(figsize=(7, height))
    ypos = np.arange(len(names))
    ax.barh(ypos, elapsed, color=colors)
    ax.set_yticks(ypos, names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("elapsed (ms)")
    ax.set_title("Scenario results (green = pass, red = fail)")
    ax.grid(axis="x", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
