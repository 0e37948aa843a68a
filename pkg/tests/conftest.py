import itertools

import numpy as np
import pytest

from faircc.graph import SignedGraph


def random_graph(n, n_colors=2, p=0.5, seed=0, equal=False):
    rng = np.random.default_rng(seed)
    A = np.triu(rng.random((n, n)) < p, 1)
    A = A | A.T
    if equal:
        colors = np.arange(n) % n_colors
    else:
        colors = np.concatenate([np.arange(n_colors), rng.integers(0, n_colors, n - n_colors)])
    colors = rng.permutation(colors[:n])
    return SignedGraph.from_adjacency(A, colors)


def set_partitions(items):
    """All set partitions of ``items`` (independent of the library's enumerators)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def labels_of(partition, n):
    labels = np.empty(n, dtype=np.int64)
    for k, block in enumerate(partition):
        labels[block] = k
    return labels


def perfect_matchings(vertices, ok):
    """Every perfect matching of ``vertices`` using pairs accepted by ``ok``."""
    vertices = list(vertices)
    if not vertices:
        yield []
        return
    u, rest = vertices[0], vertices[1:]
    for i, v in enumerate(rest):
        if ok(u, v):
            for m in perfect_matchings(rest[:i] + rest[i + 1:], ok):
                yield [(u, v)] + m


def hypercube_median_cost(points):
    """min over every 0/1 corner x of sum |x - p|_1, by enumeration."""
    points = np.asarray(points)
    best = None
    for corner in itertools.product((0, 1), repeat=points.shape[1]):
        cost = int(np.abs(points - np.array(corner)).sum())
        best = cost if best is None else min(best, cost)
    return best


@pytest.fixture
def small_graph():
    # n=4, E+ = {(0,1), (2,3)}, alternating colors
    from faircc.graph import build_graph

    return build_graph(4, [(0, 1), (2, 3)], [0, 1, 0, 1])


@pytest.fixture
def seven_graph():
    """Seven vertices a..g -> 0..6 with groups P1 = {c, d}, P2 = {a, b}, P3 = {e, f, g}."""
    from faircc.graph import build_graph

    a, b, c, d, e, f, g = range(7)
    positive = [(a, b), (b, d), (a, c), (a, d), (b, f), (d, g), (c, g), (e, d), (e, f), (b, g)]
    return build_graph(7, positive, [0, 1, 0, 1, 0, 1, 2])


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
