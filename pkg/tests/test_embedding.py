import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from faircc.embedding import (
    HammingMetric,
    decomposition_mcost,
    fairlet_mcost,
    fairlet_member_mcost,
    hamming_distance,
    median_center,
    phi,
)
from faircc.exceptions import EmptyFairlet, UnknownVertex
from faircc.fairlets import fcost
from faircc.graph import build_graph

from .conftest import hypercube_median_cost, random_graph


@pytest.fixture
def path3():
    return build_graph(3, [(0, 1)], [0, 1, 0])


def test_phi_examples(path3):
    assert phi(build_graph(1, [], [0]), 0).tolist() == [1]
    assert [phi(path3, u).tolist() for u in range(3)] == [[1, 1, 0], [1, 1, 0], [0, 0, 1]]
    full = build_graph(3, [(0, 1), (0, 2), (1, 2)], [0, 0, 0])
    assert all(phi(full, u).tolist() == [1, 1, 1] for u in range(3))


def test_phi_unknown(path3):
    with pytest.raises(UnknownVertex):
        phi(path3, 3)


def test_distance_examples(path3):
    assert hamming_distance(path3, 1, 1) == 0
    assert hamming_distance(path3, 0, 1) == 0
    assert hamming_distance(path3, 0, 2) == 3
    empty = build_graph(4, [], [0, 1, 0, 1])
    assert hamming_distance(empty, 0, 3) == 2


def test_mcost_examples(path3):
    assert fairlet_mcost(path3, [2]) == 0
    assert fairlet_mcost(path3, [0, 1]) == 0
    empty = build_graph(3, [], [0, 1, 2])
    # three unit vectors: the all-zeros center is at distance 1 from each
    assert fairlet_mcost(empty, [0, 1, 2]) == 3
    assert fairlet_mcost(empty, [0, 1, 2]) == hypercube_median_cost([phi(empty, u) for u in range(3)])
    with pytest.raises(EmptyFairlet):
        fairlet_mcost(path3, [])


def test_decomposition_mcost_examples(path3):
    assert decomposition_mcost(path3, [[0], [1], [2]]) == 0
    g = build_graph(4, [(0, 1), (2, 3)], [0, 1, 0, 1])
    assert decomposition_mcost(g, [[0, 1], [2, 3]]) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(0, 10**6), st.floats(0, 1))
def test_distance_is_l1_of_embeddings(n, seed, p):
    g = random_graph(n, 1, p, seed)
    metric = HammingMetric(g)
    for u, v in itertools.product(range(n), repeat=2):
        expected = int(np.abs(phi(g, u).astype(int) - phi(g, v)).sum())
        assert hamming_distance(g, u, v) == expected == metric(u, v)
    lazy = HammingMetric(g, cache_cap=0)
    assert np.array_equal(lazy.matrix, metric.matrix)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9), st.integers(0, 10**6))
def test_triangle_inequality(n, seed):
    D = HammingMetric(random_graph(n, 1, 0.5, seed)).matrix
    for u, v, w in itertools.product(range(n), repeat=3):
        assert D[u, w] <= D[u, v] + D[v, w]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10**6), st.floats(0, 1), st.data())
def test_mcost_equals_hypercube_minimum(n, seed, p, data):
    g = random_graph(n, 1, p, seed)
    members = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
    points = [phi(g, u) for u in members]
    assert fairlet_mcost(g, members) == hypercube_median_cost(points)
    center = median_center(g, members)
    assert int(sum(np.abs(center.astype(int) - pt).sum() for pt in points)) == fairlet_mcost(g, members)
    # a member center can never beat the unrestricted one, and loses by at most a factor 2
    restricted = fairlet_member_mcost(g, members)
    assert fairlet_mcost(g, members) <= restricted <= 2 * fairlet_mcost(g, members)


def random_decomposition(n, rng, max_size=4):
    order = rng.permutation(n).tolist()
    groups = []
    while order:
        k = int(rng.integers(1, max_size + 1))
        groups.append(order[:k])
        order = order[k:]
    return groups


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6), st.floats(0.05, 0.95))
def test_mcost_fcost_sandwich(n, seed, p):
    rng = np.random.default_rng(seed)
    g = random_graph(n, 1, p, seed)
    groups = random_decomposition(n, rng)
    f = max(len(grp) for grp in groups)
    m, fc = decomposition_mcost(g, groups), fcost(g, groups)
    assert m <= 2 * fc
    assert fc <= 2 * f * m


def test_mcost_additive():
    g = random_graph(10, 1, 0.5, 3)
    groups = [[0, 1, 2], [3, 4], [5], [6, 7, 8, 9]]
    assert decomposition_mcost(g, groups) == (
        decomposition_mcost(g, groups[:2]) + decomposition_mcost(g, groups[2:])
    )
