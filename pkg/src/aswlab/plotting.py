"""Figures for cokernel reports (matplotlib, file output only)."""

from __future__ import annotations

import math
from typing import Mapping, Sequence


def plot_cokernel_orders(series: Mapping[int, Sequence[tuple[int, int]]], p: int, path: str, title: str = "") -> str:
    """Plot log_p |C_d| against d, one line per Witt length n.

    ``series[n]`` lists (d, order) pairs.  The figure is written to ``path``
    (format from the extension) and the path is returned.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for n in sorted(series):
        pts = sorted(series[n])
        ax.plot(
            [d for d, _ in pts],
            [round(math.log(order, p)) for _, order in pts],
            marker="o",
            label=f"n = {n}",
        )
    ax.set_xlabel("window degree d")
    ax.set_ylabel(f"log_{p} |truncated cokernel|")
    if title:
        ax.set_title(title, fontsize=9)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    # fixed metadata keeps repeated renders byte-stable
    fig.savefig(path, metadata={"Software": None} if path.endswith(".png") else None)
    plt.close(fig)
    return path
