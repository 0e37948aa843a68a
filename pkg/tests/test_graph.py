import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from faircc.exceptions import (
    ColorArityMismatch,
    DegenerateGraph,
    DuplicateEdge,
    SelfLoop,
    VertexSetMismatch,
)
from faircc.graph import (
    Clustering,
    WeightedSignedGraph,
    build_graph,
    cc_cost,
    error_rate,
    weighted_cc_cost,
)

from .conftest import random_graph


def brute_cost(g, labels):
    cost = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            together = labels[u] == labels[v]
            if g.adjacency[u, v] != together:
                cost += 1
    return cost


class TestBuild:
    def test_smallest(self):
        g = build_graph(2, [(0, 1)], [0, 1])
        assert (g.n_positive, g.n_negative) == (1, 0)

    def test_empty_positive(self):
        g = build_graph(3, [], [0, 0, 1])
        assert (g.n_positive, g.n_negative) == (0, 3)

    def test_four(self, small_graph):
        assert (small_graph.n_positive, small_graph.n_negative) == (2, 4)

    def test_canonical_order(self):
        g = build_graph(4, [(3, 2), (1, 0)], [0, 1, 0, 1])
        assert g.positive.tolist() == [[0, 1], [2, 3]]

    @pytest.mark.parametrize(
        "pairs, colors, exc",
        [
            ([(0, 0)], [0, 1], SelfLoop),
            ([(0, 1), (1, 0)], [0, 1], DuplicateEdge),
            ([(0, 1), (0, 1)], [0, 1], DuplicateEdge),
            ([(0, 1)], [0, 1, 1], ColorArityMismatch),
            ([(0, 1)], [0, 2], ColorArityMismatch),
        ],
    )
    def test_errors(self, pairs, colors, exc):
        with pytest.raises(exc):
            build_graph(2, pairs, colors)

    def test_sign_matrix(self, small_graph):
        S = small_graph.sign_matrix
        assert S[0, 1] == 1 and S[0, 2] == -1 and S[1, 1] == 0


class TestCost:
    def test_all_positive_triangle(self):
        g = build_graph(3, [(0, 1), (0, 2), (1, 2)], [0, 0, 0])
        assert cc_cost(g, Clustering.one_cluster(3)) == 0

    def test_four_node(self, small_graph):
        assert cc_cost(small_graph, Clustering([0, 0, 1, 1])) == 0
        assert cc_cost(small_graph, Clustering.one_cluster(4)) == 4
        assert error_rate(small_graph, Clustering.one_cluster(4)) == pytest.approx(4 / 6)

    def test_mismatch(self, small_graph):
        with pytest.raises(VertexSetMismatch):
            cc_cost(small_graph, Clustering.singletons(3))

    def test_error_rate_degenerate(self):
        g = build_graph(1, [], [0])
        with pytest.raises(DegenerateGraph):
            error_rate(g, Clustering.singletons(1))

    def test_weighted_examples(self):
        W = WeightedSignedGraph([[0, 5], [5, 0]])
        assert weighted_cc_cost(W, Clustering([0, 0])) == 0
        assert weighted_cc_cost(W, Clustering([0, 1])) == 5

    def test_weighted_three_node(self):
        W = WeightedSignedGraph([[0, 3, -4], [3, 0, -3], [-4, -3, 0]])
        assert weighted_cc_cost(W, Clustering([0, 0, 1])) == 0

    def test_zero_weight_edge(self):
        W = WeightedSignedGraph([[0, 0], [0, 0]])
        assert weighted_cc_cost(W, Clustering([0, 0])) == 0
        assert weighted_cc_cost(W, Clustering([0, 1])) == 0


class TestClustering:
    def test_canonical_labels(self):
        assert Clustering([5, 5, 2, 9]).labels.tolist() == [0, 0, 1, 2]
        assert Clustering([1, 0]) == Clustering([0, 1])

    def test_from_clusters(self):
        c = Clustering.from_clusters([[2, 3], [0, 1]])
        assert c.labels.tolist() == [0, 0, 1, 1]
        assert [m.tolist() for m in c.clusters()] == [[0, 1], [2, 3]]

    def test_from_clusters_rejects_overlap(self):
        with pytest.raises(VertexSetMismatch):
            Clustering.from_clusters([[0, 1], [1]], 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(0, 10**6), st.floats(0, 1))
def test_cost_identities(n, seed, p):
    g = random_graph(n, 1, p, seed)
    assert cc_cost(g, Clustering.singletons(n)) == g.n_positive
    assert cc_cost(g, Clustering.one_cluster(n)) == g.n_negative
    err = error_rate(g, Clustering.one_cluster(n))
    assert 0 <= err <= 1
    assert err + g.n_positive / g.n_edges == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(0, 10**6))
def test_cost_matches_pairwise_count_and_relabeling(n, seed):
    rng = np.random.default_rng(seed)
    g = random_graph(n, 1, 0.5, seed)
    labels = rng.integers(0, 3, n)
    assert cc_cost(g, Clustering(labels)) == brute_cost(g, labels)
    # relabel cluster ids
    perm_ids = rng.permutation(3)
    assert cc_cost(g, Clustering(perm_ids[labels])) == brute_cost(g, labels)
    # permute vertices consistently
    perm = rng.permutation(n)
    inv = np.argsort(perm)
    A = g.adjacency[np.ix_(perm, perm)]
    from faircc.graph import SignedGraph

    h = SignedGraph.from_adjacency(A, np.zeros(n, dtype=int))
    assert cc_cost(h, Clustering(labels[perm])) == cc_cost(g, Clustering(labels))
    assert inv[perm].tolist() == list(range(n))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10**6))
def test_unit_weighted_equals_unweighted(n, seed):
    g = random_graph(n, 1, 0.4, seed)
    W = WeightedSignedGraph.from_signed_graph(g)
    labels = np.random.default_rng(seed).integers(0, 3, n)
    assert weighted_cc_cost(W, Clustering(labels)) == cc_cost(g, Clustering(labels))
