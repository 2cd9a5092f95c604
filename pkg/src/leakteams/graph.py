"""Social graph data model and the direct propagation matrix.

Members are dense integer indices 0..n-1; human-readable labels map through
the graph's label table so matrices stay plain numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ValidationError

KIND_DIRECT = "direct"
KIND_CLOSURE = "closure"
KIND_SYMMETRIZED = "symmetrized"


def direct_share_probability(shared_qty: float, held_qty: float) -> float:
    """Fraction of a member's held data units shared along one edge.

    held_qty == 0 yields 0: a member holding nothing propagates nothing.
    """
    if shared_qty < 0 or held_qty < 0:
        raise ValidationError(
            f"quantities must be non-negative, got shared={shared_qty} held={held_qty}"
        )
    if shared_qty > held_qty:
        raise ValidationError(
            f"cannot share more than held: shared={shared_qty} > held={held_qty}"
        )
    if held_qty == 0:
        return 0.0
    return shared_qty / held_qty


@dataclass(frozen=True)
class ShareEdge:
    """Directed friend relationship labeled with a share probability."""

    src: int
    dst: int
    p: float


@dataclass(frozen=True)
class InteractionRecord:
    """Raw count of data units src shared with dst."""

    src: int
    dst: int
    shared_qty: float


@dataclass(frozen=True)
class SocialGraph:
    """Immutable directed graph of members with per-edge share probabilities."""

    labels: tuple[str, ...]
    edges: tuple[ShareEdge, ...]
    _by_pair: dict = field(hash=False, compare=False, repr=False, default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.labels)

    def edge_probability(self, src: int, dst: int) -> float | None:
        """Probability of the (src, dst) edge, or None if absent."""
        return self._by_pair.get((src, dst))

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"unknown member label {label!r}") from None


@dataclass(frozen=True)
class PropagationMatrix:
    """n x n matrix of propagation probabilities with a kind tag."""

    labels: tuple[str, ...]
    cells: np.ndarray
    kind: str

    @property
    def n(self) -> int:
        return len(self.labels)

    def __post_init__(self):
        cells = self.cells
        if cells.shape != (self.n, self.n):
            raise ValidationError(
                f"matrix shape {cells.shape} does not match {self.n} labels"
            )
        if np.any(cells < 0) or np.any(cells > 1):
            raise ValidationError("matrix cells must lie in [0, 1]")
        if not np.all(np.diag(cells) == 1.0):
            raise ValidationError("matrix diagonal must be exactly 1")
        if self.kind not in (KIND_DIRECT, KIND_CLOSURE, KIND_SYMMETRIZED):
            raise ValidationError(f"unknown matrix kind {self.kind!r}")
        cells.setflags(write=False)

    def require_kind(self, kind: str) -> None:
        from .errors import MatrixKindError

        if self.kind != kind:
            raise MatrixKindError(f"expected a {kind} matrix, got {self.kind}")


def _check_labels(labels: Sequence[str]) -> tuple[str, ...]:
    seen = set()
    for lab in labels:
        if not lab:
            raise ValidationError("member labels must be non-empty")
        if "," in lab:
            raise ValidationError(f"member label {lab!r} must not contain commas")
        if lab in seen:
            raise ValidationError(f"duplicate member label {lab!r}")
        seen.add(lab)
    return tuple(labels)


def build_graph(labels: Sequence[str], edges: Iterable[ShareEdge]) -> SocialGraph:
    """Validate and assemble a SocialGraph from precomputed edge probabilities."""
    labels = _check_labels(labels)
    n = len(labels)
    by_pair: dict[tuple[int, int], float] = {}
    first_row: dict[tuple[int, int], int] = {}
    kept: list[ShareEdge] = []
    for idx, e in enumerate(edges):
        if not (0 <= e.src < n) or not (0 <= e.dst < n):
            raise ValidationError(f"edge {idx}: endpoint out of range ({e.src},{e.dst})")
        if e.src == e.dst:
            raise ValidationError(f"edge {idx}: self-edge on member {labels[e.src]}")
        if not (0.0 <= e.p <= 1.0):
            raise ValidationError(f"edge {idx}: probability {e.p} outside [0,1]")
        if (e.src, e.dst) in by_pair:
            raise ValidationError(
                f"duplicate edge ({labels[e.src]},{labels[e.dst]}): "
                f"row {idx} repeats row {first_row[(e.src, e.dst)]}"
            )
        by_pair[(e.src, e.dst)] = e.p
        first_row[(e.src, e.dst)] = idx
        kept.append(e)
    # Canonical edge order so ingestion is permutation-invariant.
    kept.sort(key=lambda e: (e.src, e.dst))
    return SocialGraph(labels=labels, edges=tuple(kept), _by_pair=by_pair)


def build_graph_from_interactions(
    labels: Sequence[str],
    records: Iterable[InteractionRecord],
    held: Mapping[int, float],
) -> SocialGraph:
    """Build a graph from raw shared/held quantities.

    A record whose probability comes out 0 still creates an edge labeled 0.
    """
    labels_t = _check_labels(labels)
    edges = []
    for rec in records:
        if not (0 <= rec.src < len(labels_t)):
            raise ValidationError(f"interaction src {rec.src} out of range")
        if rec.src not in held:
            raise ValidationError(
                f"no held quantity recorded for member {labels_t[rec.src]}"
            )
        p = direct_share_probability(rec.shared_qty, held[rec.src])
        edges.append(ShareEdge(rec.src, rec.dst, p))
    return build_graph(labels_t, edges)


def direct_matrix(graph: SocialGraph) -> PropagationMatrix:
    """Matrix of direct share probabilities: edge label, 1 on diagonal, else 0."""
    n = graph.n
    cells = np.zeros((n, n))
    np.fill_diagonal(cells, 1.0)
    for e in graph.edges:
        cells[e.src, e.dst] = e.p
    return PropagationMatrix(labels=graph.labels, cells=cells, kind=KIND_DIRECT)
