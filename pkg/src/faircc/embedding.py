"""Hamming embedding of a signed graph and the median cost of fairlets.

Vertex ``u`` is embedded as the row of the positive adjacency matrix with a
self-loop added, so the distance between two vertices is the size of the
symmetric difference of their closed positive neighborhoods.
"""

import numpy as np

from .exceptions import EmptyFairlet, UnknownVertex

DEFAULT_CACHE_CAP = 4096


def closed_adjacency(g):
    B = g.adjacency.copy()
    np.fill_diagonal(B, True)
    return B


def phi(g, u):
    if not (0 <= u < g.n):
        raise UnknownVertex(f"vertex {u} not in [0, {g.n})")
    row = g.adjacency[u].astype(np.int8)
    row[u] = 1
    return row


def hamming_distance(g, u, v):
    for w in (u, v):
        if not (0 <= w < g.n):
            raise UnknownVertex(f"vertex {w} not in [0, {g.n})")
    if u == v:
        return 0
    a, b = g.adjacency[u], g.adjacency[v]
    # coordinates u and v are the self-loops; elsewhere compare rows directly
    diff = int(np.count_nonzero(a != b))
    diff -= int(a[u] != b[u]) + int(a[v] != b[v])
    return diff + int(not b[u]) + int(not a[v])


class HammingMetric:
    """Pairwise distances over a graph, with an optional dense cache.

    When ``g.n <= cache_cap`` the full matrix is built once with a single
    integer-exact matrix product; otherwise rows are computed on demand.
    """

    def __init__(self, g, cache_cap=DEFAULT_CACHE_CAP):
        self.g = g
        self.cache_cap = cache_cap
        self._B = closed_adjacency(g)
        self._deg = self._B.sum(1).astype(np.int64)
        self._matrix = None
        if g.n <= cache_cap:
            self._matrix = self._block(np.arange(g.n), np.arange(g.n))
            self._matrix.setflags(write=False)

    def _block(self, rows, cols):
        Bf = self._B.astype(np.float64)
        common = np.rint(Bf[rows] @ Bf[cols].T).astype(np.int64)
        return self._deg[rows][:, None] + self._deg[cols][None, :] - 2 * common

    def __call__(self, u, v):
        if self._matrix is not None:
            return int(self._matrix[u, v])
        return hamming_distance(self.g, u, v)

    def submatrix(self, rows, cols=None):
        rows = np.asarray(rows, dtype=np.int64)
        cols = rows if cols is None else np.asarray(cols, dtype=np.int64)
        if self._matrix is not None:
            return self._matrix[np.ix_(rows, cols)]
        return self._block(rows, cols)

    @property
    def matrix(self):
        if self._matrix is None:
            return self._block(np.arange(self.g.n), np.arange(self.g.n))
        return self._matrix


def _members(P):
    members = np.asarray(list(getattr(P, "members", P)), dtype=np.int64)
    if len(members) == 0:
        raise EmptyFairlet("median cost of an empty fairlet")
    return members


def median_center(g, P):
    """Coordinate-wise majority of the fairlet's embeddings (ties -> 1)."""
    members = _members(P)
    ones = closed_adjacency(g)[members].sum(0)
    return (2 * ones >= len(members)).astype(np.int8)


def fairlet_mcost(g, P):
    """Exact ``min over x in [0,1]^n`` of the summed Hamming distance to the fairlet.

    Per coordinate the L1 sum is minimized by the majority bit, so the minimum
    is ``sum_u min(#ones_u, |P| - #ones_u)``.
    """
    members = _members(P)
    B = g.adjacency[members]
    ones = B.sum(0).astype(np.int64)
    ones[members] += 1  # self-loop coordinates
    return int(np.minimum(ones, len(members) - ones).sum())


def fairlet_member_mcost(g, P, metric=None):
    """Median cost when the center must be one of the fairlet's own members."""
    members = _members(P)
    metric = metric or HammingMetric(g, cache_cap=0)
    D = metric.submatrix(members)
    return int(D.sum(1).min())


def decomposition_mcost(g, p):
    fairlets = getattr(p, "fairlets", p)
    return sum(fairlet_mcost(g, f) for f in fairlets)
