"""Complete signed graphs, clusterings, and the correlation clustering objective."""

from functools import cached_property

import numpy as np

from .exceptions import (
    ColorArityMismatch,
    DegenerateGraph,
    DuplicateEdge,
    SelfLoop,
    UnknownVertex,
    VertexSetMismatch,
)


def _readonly(a):
    a.setflags(write=False)
    return a


class SignedGraph:
    """Complete undirected graph on ``n`` colored vertices.

    Only the positive pairs are stored (as a canonical ``(m, 2)`` array with
    ``u < v``, sorted); every other pair is negative. A dense boolean adjacency
    matrix is materialized lazily for the numeric routines.
    """

    def __init__(self, n, positive, colors):
        self.n = int(n)
        self.positive = _readonly(np.asarray(positive, dtype=np.int64).reshape(-1, 2))
        self.colors = _readonly(np.asarray(colors, dtype=np.int64))
        self.n_colors = int(self.colors.max()) + 1 if self.n else 0

    @classmethod
    def from_adjacency(cls, adjacency, colors):
        """Build from a symmetric boolean positive-adjacency matrix (diagonal ignored)."""
        A = np.asarray(adjacency, dtype=bool)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.array_equal(A, A.T):
            raise ValueError("adjacency must be symmetric")
        iu, ju = np.nonzero(np.triu(A, 1))
        return build_graph(A.shape[0], np.column_stack([iu, ju]), colors, _trusted=True)

    def __repr__(self):
        return f"SignedGraph(n={self.n}, C={self.n_colors}, positive={self.n_positive})"

    def __eq__(self, other):
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.positive, other.positive)
            and np.array_equal(self.colors, other.colors)
        )

    __hash__ = None

    @property
    def n_edges(self):
        return self.n * (self.n - 1) // 2

    @property
    def n_positive(self):
        return len(self.positive)

    @property
    def n_negative(self):
        return self.n_edges - self.n_positive

    @cached_property
    def adjacency(self):
        """Boolean ``n x n`` positive adjacency, no self loops."""
        A = np.zeros((self.n, self.n), dtype=bool)
        if len(self.positive):
            u, v = self.positive.T
            A[u, v] = True
            A[v, u] = True
        return _readonly(A)

    @cached_property
    def sign_matrix(self):
        """``int8`` matrix with +1 / -1 off the diagonal and 0 on it."""
        S = np.where(self.adjacency, 1, -1).astype(np.int8)
        np.fill_diagonal(S, 0)
        return _readonly(S)

    @cached_property
    def color_counts(self):
        return _readonly(np.bincount(self.colors, minlength=self.n_colors))

    def color_classes(self):
        return [np.flatnonzero(self.colors == c) for c in range(self.n_colors)]

    def is_positive(self, u, v):
        self._check_vertex(u)
        self._check_vertex(v)
        return u != v and bool(self.adjacency[u, v])

    def _check_vertex(self, u):
        if not (0 <= int(u) < self.n):
            raise UnknownVertex(f"vertex {u} not in [0, {self.n})")


def build_graph(n, positive_pairs, colors, _trusted=False):
    """Validate and canonicalize a signed graph.

    Raises ``SelfLoop`` / ``DuplicateEdge`` for bad pairs (``(u, v)`` and
    ``(v, u)`` count as duplicates) and ``ColorArityMismatch`` when the color
    list does not match ``n`` or skips a color id.
    """
    n = int(n)
    colors = np.asarray(colors, dtype=np.int64).reshape(-1)
    if len(colors) != n:
        raise ColorArityMismatch(f"expected {n} colors, got {len(colors)}")
    if n and (colors.min() < 0 or len(np.unique(colors)) != colors.max() + 1):
        raise ColorArityMismatch("color ids must cover [0, C) without gaps")

    pairs = np.asarray(list(positive_pairs) if not isinstance(positive_pairs, np.ndarray)
                       else positive_pairs, dtype=np.int64).reshape(-1, 2)
    if not _trusted and len(pairs):
        if pairs.min() < 0 or pairs.max() >= n:
            bad = pairs[(pairs < 0).any(1) | (pairs >= n).any(1)][0]
            raise UnknownVertex(f"pair {tuple(bad)} outside [0, {n})")
        loops = pairs[:, 0] == pairs[:, 1]
        if loops.any():
            raise SelfLoop(f"self pair {tuple(pairs[loops][0])}")
    canon = np.sort(pairs, axis=1)
    if len(canon):
        order = np.lexsort((canon[:, 1], canon[:, 0]))
        canon = canon[order]
        if not _trusted:
            dup = (np.diff(canon, axis=0) == 0).all(1)
            if dup.any():
                raise DuplicateEdge(f"pair {tuple(canon[1:][dup][0])} given more than once")
    return SignedGraph(n, canon, colors)


class WeightedSignedGraph:
    """Complete graph with signed integer weights (sign = label, magnitude = weight)."""

    def __init__(self, weights):
        W = np.array(weights, dtype=np.int64)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValueError("weights must be a square matrix")
        if not np.array_equal(W, W.T):
            raise ValueError("weights must be symmetric")
        if np.any(np.diag(W)):
            raise SelfLoop("diagonal weights must be zero")
        self.weights = _readonly(W)

    @classmethod
    def from_signed_graph(cls, g):
        return cls(g.sign_matrix)

    @property
    def n(self):
        return self.weights.shape[0]

    def __repr__(self):
        return f"WeightedSignedGraph(m={self.n})"


class Clustering:
    """A partition of ``range(n)`` given as one label per vertex.

    Labels are canonicalized to ``0, 1, ...`` in order of first appearance, so
    two clusterings describing the same partition compare equal.
    """

    def __init__(self, labels):
        labels = np.asarray(labels).reshape(-1)
        _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
        rank = np.empty(len(first), dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(len(first))
        self.labels = _readonly(rank[inverse.reshape(-1)])

    @classmethod
    def from_clusters(cls, clusters, n=None):
        clusters = [list(map(int, c)) for c in clusters]
        total = sum(len(c) for c in clusters)
        n = total if n is None else n
        labels = np.full(n, -1, dtype=np.int64)
        for k, members in enumerate(clusters):
            for v in members:
                if not (0 <= v < n) or labels[v] != -1:
                    raise VertexSetMismatch(f"vertex {v} missing from range or repeated")
                labels[v] = k
        if total != n or (labels < 0).any():
            raise VertexSetMismatch("clusters do not cover every vertex exactly once")
        return cls(labels)

    @classmethod
    def singletons(cls, n):
        return cls(np.arange(n))

    @classmethod
    def one_cluster(cls, n):
        return cls(np.zeros(n, dtype=np.int64))

    @property
    def n(self):
        return len(self.labels)

    @property
    def n_clusters(self):
        return int(self.labels.max()) + 1 if len(self.labels) else 0

    def clusters(self):
        order = np.argsort(self.labels, kind="stable")
        bounds = np.cumsum(np.bincount(self.labels, minlength=self.n_clusters))[:-1]
        return np.split(order, bounds)

    def __len__(self):
        return self.n_clusters

    def __eq__(self, other):
        if not isinstance(other, Clustering):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    __hash__ = None

    def __repr__(self):
        return f"Clustering(n={self.n}, clusters={self.n_clusters})"


def _check_cover(n, c):
    if c.n != n:
        raise VertexSetMismatch(f"clustering covers {c.n} vertices, graph has {n}")


def cc_cost(g, c):
    """Number of disagreements: negative pairs inside clusters plus positive pairs across."""
    _check_cover(g.n, c)
    labels = c.labels
    if len(g.positive):
        cut = labels[g.positive[:, 0]] != labels[g.positive[:, 1]]
        cut_positive = int(cut.sum())
        intra_positive = len(g.positive) - cut_positive
    else:
        cut_positive = intra_positive = 0
    sizes = np.bincount(labels)
    intra_pairs = int((sizes * (sizes - 1) // 2).sum())
    return (intra_pairs - intra_positive) + cut_positive


def weighted_cc_cost(g, c):
    _check_cover(g.n, c)
    W = g.weights
    same = c.labels[:, None] == c.labels[None, :]
    bad = (same & (W < 0)) | (~same & (W > 0))
    return int(np.abs(W[bad]).sum()) // 2


def error_rate(g, c):
    """Disagreement fraction over all ``n(n-1)/2`` pairs."""
    if g.n < 2:
        raise DegenerateGraph("error rate needs at least two vertices")
    return cc_cost(g, c) / g.n_edges
