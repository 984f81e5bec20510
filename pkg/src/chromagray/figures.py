"""Rendering of benchmark summaries as bar-chart image files."""

from __future__ import annotations

from pathlib import Path

from matplotlib.figure import Figure

from .bench import SummaryStats

__all__ = ["render_summary_figures"]


def _bar_figure(labels, values, ylabel, title, fmt) -> Figure:
    fig = Figure(figsize=(max(4.0, 0.9 * len(labels) + 1.5), 3.2))
    ax = fig.subplots()
    bars = ax.bar(labels, values, color="#4878a8")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.bar_label(bars, fmt=fmt, padding=2, fontsize=8)
    ax.margins(y=0.12)
    ax.tick_params(axis="x", labelrotation=30)
    for tick in ax.get_xticklabels():
        tick.set_horizontalalignment("right")
    fig.tight_layout()
    return fig


def render_summary_figures(stats: SummaryStats, outdir: str | Path, dpi: int = 150) -> list[Path]:
    """Write success_rate.png and average_score.png bar charts; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    labels = sorted(stats.average_score)
    paths = []

    fig = _bar_figure(labels, [stats.success_rate.get(m, 0) for m in labels],
                      "images with the best score",
                      f"Success rate over {stats.n_images} images", "%d")
    path = outdir / "success_rate.png"
    fig.savefig(path, dpi=dpi)
    paths.append(path)

    fig = _bar_figure(labels, [stats.average_score[m] for m in labels],
                      "mean C2G-SSIM", "Average score per method", "%.4f")
    path = outdir / "average_score.png"
    fig.savefig(path, dpi=dpi)
    paths.append(path)
    return paths
