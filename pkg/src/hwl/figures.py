"""Matplotlib renderings of the exported type-sequence series.

Figures are written next to the CSV they are drawn from; nothing here feeds
back into any verification result.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

PANEL_TITLES = {
    "t": "(a) types",
    "t1": "(b) clamped",
    "t2": "(c) aligned",
    "t3": "(d) ramps",
    "t4": "(e) plateau",
    "s": "(f) target",
}


def _style(ax, n: int, length: int) -> None:
    ax.axhline(1 << (n - 3), color="0.7", lw=0.8, ls="--")
    ax.set_xlim(0.5, length + 0.5)
    ax.set_ylim(-0.5, (1 << (n - 2)) + 0.5)
    ax.tick_params(labelsize=8)


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_series(series: Mapping[str, Sequence[int]], n: int, path: str | Path, title: str = "") -> Path:
    """One panel per named series, side by side."""
    names = list(series)
    fig, axes = plt.subplots(1, len(names), figsize=(3.2 * len(names), 2.6), squeeze=False)
    for ax, name in zip(axes[0], names):
        vals = list(series[name])
        xs = range(1, len(vals) + 1)
        ax.plot(xs, vals, marker=".", ms=4, lw=1)
        ax.set_title(name, fontsize=9)
        _style(ax, n, len(vals))
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    return _save(fig, path)


def plot_pipeline(stages: Mapping[str, Sequence[int]], n: int, path: str | Path, title: str = "") -> Path:
    """2x3 grid of the pipeline stages in order t, t1, t2, t3, t4, s."""
    fig, axes = plt.subplots(2, 3, figsize=(9, 5), sharey=True)
    for ax, name in zip(axes.ravel(), PANEL_TITLES):
        vals = list(stages[name])
        ax.plot(range(1, len(vals) + 1), vals, marker=".", ms=4, lw=1)
        ax.set_title(PANEL_TITLES[name], fontsize=9)
        _style(ax, n, len(vals))
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    return _save(fig, path)
