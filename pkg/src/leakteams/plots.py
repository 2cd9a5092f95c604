"""Figure rendering for reports: propagation heatmaps and eta-sweep curves.

Figures are written straight to files; no interactive backend is required.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .clustering import Partition  # noqa: E402
from .graph import PropagationMatrix  # noqa: E402


def plot_matrix_heatmap(
    matrix: PropagationMatrix, path: str, partition: Partition | None = None
) -> None:
    """Heatmap of a propagation matrix.

    With a partition, rows and columns are reordered so clusters are
    contiguous and boundaries are drawn between them.
    """
    n = matrix.n
    order = list(range(n))
    if partition is not None:
        order = [m for cluster in partition.clusters for m in cluster]
    cells = matrix.cells[order][:, order] if n else matrix.cells
    labels = [matrix.labels[m] for m in order]
    fig, ax = plt.subplots(figsize=(6, 5))
    im = ax.imshow(cells, vmin=0.0, vmax=1.0, cmap="viridis")
    fig.colorbar(im, ax=ax, label="propagation probability")
    if n <= 30:
        ax.set_xticks(range(n), labels, rotation=90, fontsize=7)
        ax.set_yticks(range(n), labels, fontsize=7)
    else:
        ax.set_xlabel("member index")
        ax.set_ylabel("member index")
    if partition is not None:
        edge = 0
        for cluster in partition.clusters[:-1]:
            edge += len(cluster)
            ax.axhline(edge - 0.5, color="white", lw=1)
            ax.axvline(edge - 0.5, color="white", lw=1)
    ax.set_title(f"{matrix.kind} propagation matrix (n={n})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_eta_sweep(rows: Sequence[tuple[float, int]], path: str) -> None:
    """Step plot of cluster count versus disclosure threshold."""
    etas = [eta for eta, _ in rows]
    counts = [count for _, count in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(etas, counts, where="post", marker="o")
    ax.set_xlabel(r"disclosure threshold $\eta$")
    ax.set_ylabel("number of teams")
    ax.set_title("team count vs. disclosure threshold")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
