"""Render the sweep's summary curves to PNG files next to the CSVs."""

from __future__ import annotations

import math
import os
from collections import defaultdict

from matplotlib.figure import Figure

FIGURE_NAMES = ("mean_transmissions.png", "perfect_rate.png", "within_one_rate.png")

_MARKERS = ("o", "s", "^", "d", "v", "*", "x")


def _series(summary):
    per_algo = defaultdict(list)
    for row in summary:
        per_algo[row.algo].append(row)
    for algo in per_algo:
        per_algo[algo].sort(key=lambda r: r.n)
    return per_algo


def _stderr_u(records, n: int, algo: str) -> float:
    us = [r.u for r in records if r.n == n and r.algo == algo and r.u is not None]
    if len(us) < 2:
        return 0.0
    mean = sum(us) / len(us)
    var = sum((u - mean) ** 2 for u in us) / (len(us) - 1)
    return math.sqrt(var / len(us))


def render_figures(result, out_dir) -> list[str]:
    """Write the three summary panels; returns the file paths."""
    os.makedirs(out_dir, exist_ok=True)
    per_algo = _series(result.summary)
    paths = []

    fig = Figure(figsize=(6.4, 4.4))
    ax = fig.subplots()
    first_algo = True
    for idx, (algo, rows) in enumerate(sorted(per_algo.items())):
        ns = [r.n for r in rows]
        err = [_stderr_u(result.records, r.n, algo) for r in rows]
        ax.errorbar(
            ns,
            [r.mean_u for r in rows],
            yerr=err,
            marker=_MARKERS[idx % len(_MARKERS)],
            capsize=2,
            label=algo,
        )
        if first_algo:
            ax.plot(
                ns,
                [r.mean_wmax for r in rows],
                linestyle="--",
                color="gray",
                label="mean w_max (lower bound)",
            )
            first_algo = False
    ax.set_xlabel("receivers N")
    ax.set_ylabel("mean coded transmissions U")
    ax.grid(True, alpha=0.3)
    ax.legend()
    path = os.path.join(out_dir, FIGURE_NAMES[0])
    fig.savefig(path, dpi=120, bbox_inches="tight")
    paths.append(path)

    for name, attr, ylabel in (
        (FIGURE_NAMES[1], "pct_perfect", "% trials with U = w_max"),
        (FIGURE_NAMES[2], "pct_within_one", "% trials with U <= w_max + 1"),
    ):
        fig = Figure(figsize=(6.4, 4.4))
        ax = fig.subplots()
        for idx, (algo, rows) in enumerate(sorted(per_algo.items())):
            ax.plot(
                [r.n for r in rows],
                [getattr(r, attr) for r in rows],
                marker=_MARKERS[idx % len(_MARKERS)],
                label=algo,
            )
        ax.set_xlabel("receivers N")
        ax.set_ylabel(ylabel)
        ax.set_ylim(0, 105)
        ax.grid(True, alpha=0.3)
        ax.legend()
        path = os.path.join(out_dir, name)
        fig.savefig(path, dpi=120, bbox_inches="tight")
        paths.append(path)
    return paths
