"""Figure rendering for sampled distributions and the fidelity table.

Renders matplotlib figures to files next to the delimited data the CLI
writes, so a report directory is self-contained: per-base histogram
JSON/CSV, per-base distribution plots, a combined grid, and a summary
table of overlap values.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .engine import Histogram
from .oracle import Distribution
from .sso import SsoResult


def _distribution_axes(ax, hist: Histogram, ideal: Distribution) -> None:
    q = 1 << hist.n_input_bits
    m = np.arange(q)
    freq = np.zeros(q)
    for k, c in hist.counts.items():
        freq[k] = c / hist.shots
    ax.bar(m, freq, width=1.0, color="#1f77b4", label="sampled")
    support = ideal.probs > 0
    ax.plot(
        m[support],
        ideal.probs[support],
        linestyle="none",
        marker="_",
        markersize=10,
        markeredgewidth=1.6,
        color="#d62728",
        label="ideal",
    )
    ax.set_xlim(-2, q + 1)
    ax.set_xlabel("outcome m")
    ax.set_ylabel("probability")
    ax.set_title(f"a = {hist.a}, {hist.shots} shots")


def render_distribution(hist: Histogram, ideal: Distribution, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 3.2))
    _distribution_axes(ax, hist, ideal)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_grid(
    pairs: list[tuple[Histogram, Distribution]], path: Path
) -> None:
    """All base distributions on one canvas, two rows of three."""
    fig, axes = plt.subplots(2, 3, figsize=(13, 6), sharey=True)
    for ax, (hist, ideal) in zip(axes.flat, pairs):
        _distribution_axes(ax, hist, ideal)
    axes[0, 0].legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_sso_table(rows: list[tuple[int, SsoResult]], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["a", "sso", "stderr", "shots", "bootstrap_replicates"])
        for a, result in rows:
            writer.writerow(
                [a, repr(result.value), repr(result.stderr), result.shots, result.replicates]
            )


def render_sso_figure(rows: list[tuple[int, SsoResult]], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(5, 3.2))
    xs = np.arange(len(rows))
    values = [r.value for _, r in rows]
    errs = [r.stderr for _, r in rows]
    ax.errorbar(xs, values, yerr=errs, fmt="o", color="#1f77b4", capsize=3)
    ax.set_xticks(xs)
    ax.set_xticklabels([str(a) for a, _ in rows])
    ax.set_xlabel("base a")
    ax.set_ylabel("square statistical overlap")
    ax.set_ylim(0.9, 1.005)
    ax.axhline(1.0, color="gray", linewidth=0.8, linestyle=":")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
