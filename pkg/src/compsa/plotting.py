"""Figures for ablation reports and sentence analyses, written to image files."""

from __future__ import annotations

import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .engine import AnalysisTrace, NodeVisited, Join  # noqa: E402
from .evaluation import AblationReport, REPORT_NOTE  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "savefig.dpi": 150,
    # fixed metadata keeps repeated renders byte-identical
    "svg.hashsalt": "compsa",
}


def _save(fig, path):
    path = Path(path)
    suffix = path.suffix or ".png"
    tmp = path.with_name(f".{path.name}.tmp{suffix}")
    try:
        fig.savefig(tmp, bbox_inches="tight", metadata={"Software": None}
                    if suffix == ".png" else None)
        os.replace(tmp, path)
    finally:
        plt.close(fig)
        if tmp.exists():
            tmp.unlink()
    return path


def plot_ablation(report: AblationReport, path, title: str | None = None):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5, 3.2))
        names = list(report.rows)
        values = [100 * report.rows[n] for n in names]
        bars = ax.bar(names, values, color="#4c72b0", width=0.6)
        for bar, v in zip(bars, values):
            ax.annotate(f"{v:.2f}", (bar.get_x() + bar.get_width() / 2, v),
                        ha="center", va="bottom", fontsize=8, xytext=(0, 2),
                        textcoords="offset points")
        lo = min(values)
        ax.set_ylim(max(0.0, lo - 10), min(100.0, max(values) + 5))
        ax.set_ylabel("accuracy (%)")
        ax.set_title(title or f"Rule ablation ({report.total} documents)")
        fig.text(0.01, -0.02, REPORT_NOTE, fontsize=7, color="0.4")
        return _save(fig, path)


def plot_trace(trace: AnalysisTrace, path):
    """Per-node orientation when visited and after applying operations and joining."""
    visits = {e.node: e for e in trace.events if isinstance(e, NodeVisited)}
    joins = {e.node: e for e in trace.events if isinstance(e, Join)}
    nodes = [n for n in trace.sentence.nodes if n != 0] + [0]
    labels = [f"{visits[n].form}_{n}" for n in nodes]
    before = [visits[n].so for n in nodes]
    after = [joins[n].after for n in nodes]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(nodes)), 3.2))
        xs = range(len(nodes))
        ax.bar([x - 0.2 for x in xs], before, width=0.4, label="visited", color="0.7")
        ax.bar([x + 0.2 for x in xs], after, width=0.4, label="after", color="#dd8452")
        ax.axhline(0, color="0.3", linewidth=0.6)
        ax.set_xticks(list(xs))
        ax.set_xticklabels(labels, rotation=60, ha="right")
        ax.set_ylabel("semantic orientation")
        ax.legend(frameon=False, fontsize=8)
        return _save(fig, path)
