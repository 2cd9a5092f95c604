import numpy as np
import pytest

from leakteams import ShareEdge, build_graph, direct_matrix

LABELS = ("m1", "m2", "m3", "m4", "m5", "m6")

# Direct share probabilities of the six-member worked example; the (m1,m2)
# relationship exists but carries probability 0.
DIRECT = np.array(
    [
        [1.0, 0.0, 0.9, 0.0, 0.0, 0.0],
        [0.8, 1.0, 0.8, 1.0, 0.0, 0.7],
        [0.7, 1.0, 1.0, 0.0, 0.1, 0.3],
        [0.0, 0.2, 0.9, 1.0, 1.0, 0.6],
        [0.0, 0.0, 0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 0.0, 0.4, 1.0],
    ]
)

ZERO_EDGES = {(0, 1)}


def example_edges():
    edges = []
    for i in range(6):
        for j in range(6):
            if i != j and (DIRECT[i, j] > 0 or (i, j) in ZERO_EDGES):
                edges.append(ShareEdge(i, j, DIRECT[i, j]))
    return edges


# Edge order chosen so labels are discovered in m1..m6 order during parsing.
EDGE_CSV = "src,dst,p\n" + "\n".join(
    f"{LABELS[e.src]},{LABELS[e.dst]},{e.p:g}"
    for e in sorted(example_edges(), key=lambda e: (max(e.src, e.dst), e.src, e.dst))
) + "\n"


@pytest.fixture
def example_graph():
    return build_graph(LABELS, example_edges())


@pytest.fixture
def example_direct(example_graph):
    return direct_matrix(example_graph)


def random_direct_matrix(rng, n, edge_chance=0.35):
    """Random direct matrix with probabilities on the 0.1 grid."""
    from leakteams import build_graph, direct_matrix

    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < edge_chance:
                edges.append(ShareEdge(i, j, rng.randrange(11) / 10))
    labels = [f"m{i}" for i in range(n)]
    return direct_matrix(build_graph(labels, edges))


def random_symmetrized_matrix(rng, n):
    """Random symmetrized matrix with values on the 0.1 grid, diagonal 1."""
    from leakteams.graph import KIND_SYMMETRIZED, PropagationMatrix

    cells = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            cells[i, j] = cells[j, i] = rng.randrange(11) / 10
    np.fill_diagonal(cells, 1.0)
    labels = tuple(f"m{i}" for i in range(n))
    return PropagationMatrix(labels=labels, cells=cells, kind=KIND_SYMMETRIZED)
