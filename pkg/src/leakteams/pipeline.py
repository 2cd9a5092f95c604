"""End-to-end batch pipeline: ingest -> direct matrix -> closure ->
symmetrize -> cluster -> leak self-check, plus the eta sweep."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .clustering import (
    LeakReport,
    Partition,
    cluster_members,
    verify_free_leak,
)
from .errors import ValidationError
from .fileio import format_number, matrix_to_csv, parse_edge_csv, parse_interaction_csvs
from .graph import PropagationMatrix, SocialGraph, direct_matrix
from .propagation import closure, symmetrize

INPUT_EDGES = "edges"
INPUT_INTERACTIONS = "interactions"


@dataclass(frozen=True)
class PipelineConfig:
    eta: float
    seed_count: int = 2
    input_mode: str = INPUT_EDGES
    members: Sequence[str] | None = None

    def __post_init__(self):
        if not (0.0 <= self.eta <= 1.0):
            raise ValidationError(f"eta must lie in [0,1], got {self.eta}")
        if self.seed_count < 1:
            raise ValidationError(f"seed_count must be >= 1, got {self.seed_count}")
        if self.input_mode not in (INPUT_EDGES, INPUT_INTERACTIONS):
            raise ValidationError(f"unknown input mode {self.input_mode!r}")


@dataclass(frozen=True)
class PipelineResult:
    graph: SocialGraph
    direct: PropagationMatrix
    closed: PropagationMatrix
    sym: PropagationMatrix
    partition: Partition
    report: LeakReport
    teams: tuple[tuple[str, ...], ...]      # clusters with labels resolved
    provenance: dict = field(hash=False)


def _checksum(matrix: PropagationMatrix) -> str:
    return hashlib.sha256(matrix_to_csv(matrix).encode()).hexdigest()


def run_pipeline(
    config: PipelineConfig,
    input_text: str,
    held_text: str | None = None,
) -> PipelineResult:
    """Run all stages and self-check the resulting partition.

    A failing leak self-check raises AssertionError: the clustering contract
    guarantees a leak-free partition, so a violation signals a bug, never a
    property of the data.
    """
    members = list(config.members) if config.members else None
    if config.input_mode == INPUT_INTERACTIONS:
        if held_text is None:
            raise ValidationError("interactions mode requires a held-quantity file")
        graph = parse_interaction_csvs(input_text, held_text, members)
    else:
        graph = parse_edge_csv(input_text, members)

    direct = direct_matrix(graph)
    closed = closure(direct)
    sym = symmetrize(closed)
    seeds = list(range(min(config.seed_count, max(graph.n, 1))))
    if graph.n == 0:
        seeds = []
    partition = cluster_members(sym, config.eta, seeds or None)
    report = verify_free_leak(partition, sym, config.eta)
    if not report.ok:
        raise AssertionError(
            "internal error: clustering produced a partition that fails "
            f"the leak self-check ({len(report.violations)} violations)"
        )
    teams = tuple(
        tuple(graph.labels[m] for m in cluster) for cluster in partition.clusters
    )
    provenance = {
        "eta": config.eta,
        "tool_version": __version__,
        "direct_matrix_sha256": _checksum(direct),
        "closure_matrix_sha256": _checksum(closed),
        "symmetrized_matrix_sha256": _checksum(sym),
    }
    return PipelineResult(
        graph=graph, direct=direct, closed=closed, sym=sym,
        partition=partition, report=report, teams=teams, provenance=provenance,
    )


def eta_sweep(
    sym: PropagationMatrix, etas: Sequence[float]
) -> list[tuple[float, int]]:
    """Cluster count per threshold; thresholds must be sorted ascending."""
    if list(etas) != sorted(etas):
        raise ValidationError(f"etas must be sorted ascending, got {list(etas)}")
    rows = []
    for eta in etas:
        partition = cluster_members(sym, eta)
        rows.append((eta, len(partition.clusters)))
    return rows


def sweep_to_csv(rows: Sequence[tuple[float, int]]) -> str:
    out = ["eta,cluster_count"]
    for eta, count in rows:
        out.append(f"{format_number(eta)},{count}")
    return "\n".join(out) + "\n"
