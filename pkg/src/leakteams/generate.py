"""Seeded synthetic edge-list generator for testing and benchmarking."""

from __future__ import annotations

import random

from .errors import ValidationError

PROBABILITY_GRID = [i / 10 for i in range(11)]


def generate_edge_csv(n: int, avg_out_degree: float, rng_seed: int) -> str:
    """Random directed graph as an edge CSV, byte-identical for a given seed.

    Each ordered pair (i, j), i != j, carries an edge with probability
    avg_out_degree / (n - 1), so out-degrees average the target. Edge
    probabilities are uniform on the grid {0.0, 0.1, ..., 1.0}.
    """
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if avg_out_degree < 0 or (n > 1 and avg_out_degree >= n):
        raise ValidationError(
            f"avg_out_degree must lie in [0, n), got {avg_out_degree} with n={n}"
        )
    rng = random.Random(rng_seed)
    edge_chance = avg_out_degree / (n - 1) if n > 1 else 0.0
    lines = ["src,dst,p"]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rng.random() < edge_chance:
                p = rng.choice(PROBABILITY_GRID)
                lines.append(f"m{i + 1},m{j + 1},{p:.1f}")
    return "\n".join(lines) + "\n"
