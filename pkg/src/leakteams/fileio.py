"""CSV file formats: edge lists, interaction counts, and labeled matrices.

All numeric output is printed with up to 12 significant digits, trailing
zeros trimmed, so emitted files are byte-stable and round-trip exactly.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from .errors import ValidationError
from .graph import (
    InteractionRecord,
    PropagationMatrix,
    ShareEdge,
    SocialGraph,
    build_graph,
    build_graph_from_interactions,
)

EDGE_HEADER = ["src", "dst", "p"]
INTERACTION_HEADER = ["src", "dst", "shared_qty"]
HELD_HEADER = ["member", "held_qty"]


def format_number(x: float) -> str:
    return f"{x:.12g}"


def _rows(text: str, expected_header: list[str], what: str):
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError(f"{what}: empty file, expected header "
                              f"{','.join(expected_header)}") from None
    if [h.strip() for h in header] != expected_header:
        raise ValidationError(
            f"{what}: line 1: bad header {','.join(header)!r}, "
            f"expected {','.join(expected_header)}"
        )
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(expected_header):
            raise ValidationError(
                f"{what}: line {lineno}: expected {len(expected_header)} fields, "
                f"got {len(row)}"
            )
        yield lineno, [f.strip() for f in row]


def _parse_float(s: str, lineno: int, what: str) -> float:
    try:
        return float(s)
    except ValueError:
        raise ValidationError(f"{what}: line {lineno}: not a number: {s!r}") from None


def _label_indexer(labels: list[str]):
    index: dict[str, int] = {lab: i for i, lab in enumerate(labels)}

    def get(lab: str) -> int:
        if lab not in index:
            index[lab] = len(labels)
            labels.append(lab)
        return index[lab]

    return get


def parse_edge_csv(text: str, members: list[str] | None = None) -> SocialGraph:
    """Parse a `src,dst,p` edge list.

    Members are discovered from the edges in order of first appearance;
    `members` pre-declares labels (so isolated members exist in the graph).
    """
    labels: list[str] = list(members) if members else []
    get = _label_indexer(labels)
    edges = []
    for lineno, (src, dst, p) in _rows(text, EDGE_HEADER, "edge file"):
        edges.append(ShareEdge(get(src), get(dst), _parse_float(p, lineno, "edge file")))
    return build_graph(labels, edges)


def parse_interaction_csvs(
    interactions_text: str, held_text: str, members: list[str] | None = None
) -> SocialGraph:
    """Parse `src,dst,shared_qty` interactions plus a `member,held_qty` table."""
    labels: list[str] = list(members) if members else []
    get = _label_indexer(labels)
    held: dict[int, float] = {}
    for lineno, (member, qty) in _rows(held_text, HELD_HEADER, "held file"):
        q = _parse_float(qty, lineno, "held file")
        if q < 0:
            raise ValidationError(f"held file: line {lineno}: negative quantity {qty}")
        held[get(member)] = q
    records = []
    for lineno, (src, dst, qty) in _rows(
        interactions_text, INTERACTION_HEADER, "interaction file"
    ):
        q = _parse_float(qty, lineno, "interaction file")
        records.append(InteractionRecord(get(src), get(dst), q))
    return build_graph_from_interactions(labels, records, held)


def edges_to_csv(graph: SocialGraph) -> str:
    out = [",".join(EDGE_HEADER)]
    for e in graph.edges:
        out.append(f"{graph.labels[e.src]},{graph.labels[e.dst]},{format_number(e.p)}")
    return "\n".join(out) + "\n"


def matrix_to_csv(matrix: PropagationMatrix) -> str:
    """Labeled matrix: first row and first column carry member labels."""
    out = ["," + ",".join(matrix.labels)]
    for i, lab in enumerate(matrix.labels):
        out.append(lab + "," + ",".join(format_number(x) for x in matrix.cells[i]))
    return "\n".join(out) + "\n"


def matrix_from_csv(text: str, kind: str) -> PropagationMatrix:
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r]
    if not rows:
        raise ValidationError("matrix file: empty file")
    labels = tuple(lab.strip() for lab in rows[0][1:])
    n = len(labels)
    if len(rows) != n + 1:
        raise ValidationError(
            f"matrix file: {n} labels in header but {len(rows) - 1} data rows"
        )
    cells = np.zeros((n, n))
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != n + 1:
            raise ValidationError(
                f"matrix file: line {i}: expected {n + 1} fields, got {len(row)}"
            )
        if row[0].strip() != labels[i - 2]:
            raise ValidationError(
                f"matrix file: line {i}: row label {row[0]!r} does not match "
                f"header label {labels[i - 2]!r}"
            )
        cells[i - 2] = [_parse_float(x, i, "matrix file") for x in row[1:]]
    return PropagationMatrix(labels=labels, cells=cells, kind=kind)
