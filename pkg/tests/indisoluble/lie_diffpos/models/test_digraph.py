#!/usr/bin/env python3

import numpy as np
import pytest

from indisoluble.lie_diffpos.errors import BadParamsError, InvalidWeightsError
from indisoluble.lie_diffpos.models.digraph import (
    Digraph,
    complete_digraph,
    is_strongly_connected,
    random_strongly_connected_digraph,
    ring_digraph,
)


class TestDigraph:
    def test_defaults_to_unit_weights(self):
        graph = Digraph(3, [(0, 1), (1, 2)])

        np.testing.assert_array_equal(graph.weights_at(0.0), [1.0, 1.0])
        assert not graph.is_time_varying
        assert graph.dwell is None

    def test_weight_matrix_rows_are_listeners(self):
        graph = Digraph(3, [(0, 1), (2, 0)], [0.5, 2.0])

        W = graph.weight_matrix()

        assert W[0, 1] == 0.5
        assert W[2, 0] == 2.0
        assert W.sum() == 2.5

    def test_edge_arrays(self):
        sources, targets = Digraph(3, [(0, 1), (2, 0)]).edge_arrays()

        np.testing.assert_array_equal(sources, [0, 2])
        np.testing.assert_array_equal(targets, [1, 0])

    def test_schedule_cycles_with_the_dwell_time(self):
        graph = Digraph(
            2, [(0, 1), (1, 0)], schedule=[[1.0, 0.0], [0.0, 2.0]], dwell=0.5
        )

        assert graph.is_time_varying
        np.testing.assert_array_equal(graph.weights_at(0.2), [1.0, 0.0])
        np.testing.assert_array_equal(graph.weights_at(0.7), [0.0, 2.0])
        np.testing.assert_array_equal(graph.weights_at(1.1), [1.0, 0.0])

    def test_weights_are_read_only(self):
        graph = Digraph(2, [(0, 1)], [1.0])

        with pytest.raises(ValueError):
            graph.weights_at(0.0)[0] = 3.0

    def test_mirrored_adds_missing_reverse_edges(self):
        graph = Digraph(3, [(0, 1), (1, 0), (1, 2)], [1.0, 2.0, 3.0]).mirrored()

        W = graph.weight_matrix()
        assert len(graph.edges) == 4
        assert W[2, 1] == 3.0
        assert W[1, 0] == 2.0

    def test_mirrored_keeps_the_schedule(self):
        graph = Digraph(2, [(0, 1)], schedule=[[1.0], [0.0]], dwell=1.0).mirrored()

        np.testing.assert_array_equal(graph.weights_at(1.5), [0.0, 0.0])
        np.testing.assert_array_equal(graph.weights_at(0.5), [1.0, 1.0])

    @pytest.mark.parametrize(
        "edges,message",
        [
            ([(0, 0)], "Self-loop"),
            ([(0, 3)], "outside 0..2"),
            ([(0, 1), (0, 1)], "unique"),
            ([(0, 1, 2)], "pair"),
        ],
        ids=["self-loop", "out-of-range", "duplicate", "not-a-pair"],
    )
    def test_rejects_malformed_edges(self, edges, message):
        with pytest.raises(BadParamsError, match=message):
            Digraph(3, edges)

    @pytest.mark.parametrize(
        "weights,message",
        [
            ([1.0], "Expected 2 weights"),
            ([1.0, -1.0], "non-negative"),
            ([1.0, np.nan], "finite"),
        ],
        ids=["count", "negative", "nan"],
    )
    def test_rejects_invalid_weights(self, weights, message):
        with pytest.raises(InvalidWeightsError, match=message):
            Digraph(3, [(0, 1), (1, 2)], weights)

    def test_delta_bounds_present_weights_only(self):
        Digraph(3, [(0, 1), (1, 2)], [0.0, 0.5], delta=0.5)

        with pytest.raises(InvalidWeightsError, match="below delta"):
            Digraph(3, [(0, 1), (1, 2)], [0.1, 0.5], delta=0.5)

    def test_schedule_needs_a_dwell_time(self):
        with pytest.raises(BadParamsError, match="dwell"):
            Digraph(2, [(0, 1)], schedule=[[1.0], [0.5]])

    def test_weights_and_schedule_are_exclusive(self):
        with pytest.raises(BadParamsError, match="not both"):
            Digraph(2, [(0, 1)], [1.0], schedule=[[1.0]])


class TestTopologies:
    def test_ring_is_bidirectional_by_default(self):
        assert len(ring_digraph(4).edges) == 8
        assert len(ring_digraph(4, bidirectional=False).edges) == 4

    def test_ring_of_two_agents_has_two_edges(self):
        assert ring_digraph(2).edges == ((0, 1), (1, 0))

    def test_complete_graph(self):
        assert len(complete_digraph(4).edges) == 12

    def test_random_graphs_are_strongly_connected(self):
        rng = np.random.default_rng(12)

        for _ in range(5):
            graph = random_strongly_connected_digraph(6, rng, p=0.1)
            assert is_strongly_connected(graph)
            assert np.all(graph.weights_at(0.0) >= 0.5)

    def test_random_graphs_reject_bad_probabilities(self):
        with pytest.raises(BadParamsError, match="probability"):
            random_strongly_connected_digraph(3, np.random.default_rng(0), p=1.5)


class TestIsStronglyConnected:
    def test_directed_path_is_not_strongly_connected(self):
        assert not is_strongly_connected(Digraph(3, [(0, 1), (1, 2)]))

    def test_directed_ring_is_strongly_connected(self):
        assert is_strongly_connected(ring_digraph(5, bidirectional=False))

    def test_uses_the_phase_active_at_t(self):
        graph = Digraph(
            2, [(0, 1), (1, 0)], schedule=[[1.0, 1.0], [1.0, 0.0]], dwell=1.0
        )

        assert is_strongly_connected(graph, 0.5)
        assert not is_strongly_connected(graph, 1.5)
