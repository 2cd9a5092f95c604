import numpy as np
import pytest

from leakteams import (
    InteractionRecord,
    ShareEdge,
    ValidationError,
    build_graph,
    build_graph_from_interactions,
    direct_matrix,
    direct_share_probability,
)

from conftest import DIRECT, LABELS, example_edges


class TestDirectShareProbability:
    def test_ninety_percent(self):
        assert direct_share_probability(90, 100) == 0.9

    def test_never_shares(self):
        assert direct_share_probability(0, 100) == 0.0

    def test_holding_nothing_propagates_nothing(self):
        assert direct_share_probability(0, 0) == 0.0

    def test_negative_rejected(self):
        with pytest.raises(ValidationError):
            direct_share_probability(-1, 10)
        with pytest.raises(ValidationError):
            direct_share_probability(1, -10)

    def test_sharing_more_than_held_rejected(self):
        with pytest.raises(ValidationError):
            direct_share_probability(11, 10)


class TestBuildGraph:
    def test_example_graph(self, example_graph):
        assert example_graph.n == 6
        assert example_graph.edge_probability(0, 2) == 0.9
        assert example_graph.edge_probability(0, 1) == 0.0  # edge exists, p=0
        assert example_graph.edge_probability(4, 0) is None

    def test_empty_graph(self):
        g = build_graph([], [])
        assert g.n == 0
        assert direct_matrix(g).cells.shape == (0, 0)

    def test_probability_out_of_range(self):
        with pytest.raises(ValidationError, match="outside"):
            build_graph(["a", "b"], [ShareEdge(0, 1, 1.2)])

    def test_self_edge_rejected(self):
        with pytest.raises(ValidationError, match="self-edge"):
            build_graph(["a", "b"], [ShareEdge(0, 0, 0.5)])

    def test_duplicate_edge_identifies_both_rows(self):
        with pytest.raises(ValidationError, match="row 1"):
            build_graph(["a", "b"], [ShareEdge(0, 1, 0.5), ShareEdge(0, 1, 0.6)])

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(ValidationError, match="out of range"):
            build_graph(["a", "b"], [ShareEdge(0, 2, 0.5)])

    def test_duplicate_label_rejected(self):
        with pytest.raises(ValidationError, match="duplicate"):
            build_graph(["a", "a"], [])


class TestDirectMatrix:
    def test_example_matrix(self, example_direct):
        assert np.array_equal(example_direct.cells, DIRECT)
        assert example_direct.kind == "direct"

    def test_no_edges_gives_identity_pattern(self):
        g = build_graph(["a", "b", "c"], [])
        assert np.array_equal(direct_matrix(g).cells, np.eye(3))

    def test_diagonal_is_one(self, example_direct):
        assert np.all(np.diag(example_direct.cells) == 1.0)

    def test_cells_in_unit_interval(self, example_direct):
        assert np.all((example_direct.cells >= 0) & (example_direct.cells <= 1))

    def test_asymmetric_pair(self, example_direct):
        assert example_direct.cells[0, 2] == 0.9
        assert example_direct.cells[2, 0] == 0.7

    def test_some_row_sum_differs_from_one(self, example_direct):
        sums = example_direct.cells.sum(axis=1)
        assert np.any(sums != 1.0)

    def test_permutation_invariance(self):
        edges = example_edges()
        a = direct_matrix(build_graph(LABELS, edges))
        b = direct_matrix(build_graph(LABELS, list(reversed(edges))))
        assert np.array_equal(a.cells, b.cells)


class TestInteractions:
    def test_shared_fraction_becomes_edge(self):
        g = build_graph_from_interactions(
            ["m1", "m3"], [InteractionRecord(0, 1, 9)], {0: 10}
        )
        assert g.edge_probability(0, 1) == 0.9

    def test_zero_share_still_creates_edge(self):
        g = build_graph_from_interactions(
            ["m1", "m2"], [InteractionRecord(0, 1, 0)], {0: 10}
        )
        assert g.edge_probability(0, 1) == 0.0

    def test_sharing_more_than_held_rejected(self):
        with pytest.raises(ValidationError):
            build_graph_from_interactions(
                ["m1", "m3"], [InteractionRecord(0, 1, 11)], {0: 10}
            )

    def test_missing_held_rejected(self):
        with pytest.raises(ValidationError, match="held"):
            build_graph_from_interactions(
                ["m1", "m3"], [InteractionRecord(0, 1, 1)], {1: 10}
            )

    def test_matches_precomputed_probabilities(self):
        records = [InteractionRecord(0, 1, 3), InteractionRecord(1, 0, 5)]
        held = {0: 4, 1: 10}
        via_records = build_graph_from_interactions(["a", "b"], records, held)
        via_probs = build_graph(
            ["a", "b"], [ShareEdge(0, 1, 0.75), ShareEdge(1, 0, 0.5)]
        )
        assert np.array_equal(
            direct_matrix(via_records).cells, direct_matrix(via_probs).cells
        )
