"""scikit-learn style estimators over signed graphs.

``X`` may be a :class:`SignedGraph`, a :class:`WeightedSignedGraph`, or a
square array:

* boolean or {0, 1} entries -- positive adjacency (diagonal ignored);
* {-1, +1} off the diagonal -- explicit signs;
* any other integers -- signed weights (a weighted instance).

Colors come with a ``SignedGraph`` or are passed to ``fit`` as ``colors=``.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .embedding import HammingMetric, decomposition_mcost
from .fairlets import fairlets_random, fcost
from .fairness import FairnessConstraint, imbalance
from .graph import SignedGraph, WeightedSignedGraph, error_rate, weighted_cc_cost
from .reduction import decompose, fair_cc_detailed, reduce
from .solvers import SolverConfig, best_of_pivot, cost_of, local_search, single_cluster


def _seed(random_state):
    if random_state is None or isinstance(random_state, (int, np.integer)):
        return random_state
    if isinstance(random_state, np.random.RandomState):
        return int(random_state.randint(2**31 - 1))
    if isinstance(random_state, np.random.Generator):
        return int(random_state.integers(2**31 - 1))
    raise ValueError(f"cannot use {random_state!r} as a random_state")


def check_signed_graph(X, colors=None, allow_weighted=False):
    """Validate ``X`` and return a ``SignedGraph`` (or ``WeightedSignedGraph``)."""
    if isinstance(X, SignedGraph):
        if colors is not None and not np.array_equal(np.asarray(colors), X.colors):
            raise ValueError("colors given to fit disagree with the graph's colors")
        return X
    if isinstance(X, WeightedSignedGraph):
        if not allow_weighted:
            raise ValueError("this estimator needs an unweighted, colored graph")
        return X
    A = np.asarray(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise ValueError("the signed matrix must be symmetric")
    n = A.shape[0]
    off = A[~np.eye(n, dtype=bool)]
    if A.dtype == bool or np.isin(off, (0, 1)).all():
        adjacency = A.astype(bool)
    elif np.isin(off, (-1, 1)).all():
        adjacency = A > 0
    elif allow_weighted:
        if not np.issubdtype(A.dtype, np.integer) and not np.array_equal(A, np.round(A)):
            raise ValueError("weighted instances need integer weights")
        W = A.astype(np.int64).copy()
        np.fill_diagonal(W, 0)
        return WeightedSignedGraph(W)
    else:
        raise ValueError("entries must be boolean, {0, 1} or {-1, +1}")
    if colors is None:
        colors = np.zeros(n, dtype=np.int64)
    return SignedGraph.from_adjacency(adjacency, colors)


class CorrelationClustering(ClusterMixin, BaseEstimator):
    """Unconstrained correlation clustering.

    Parameters
    ----------
    method : {"local", "pivot", "single"}
    pivot_repeats : int
        Pivot runs; the cheapest is kept.
    max_passes : int
        Pass limit for local search.
    init : {"singletons", "pivot"}
        Starting point of local search.
    random_state : int or None
    """

    def __init__(self, method="local", pivot_repeats=10, max_passes=100, init="singletons",
                 random_state=None):
        self.method = method
        self.pivot_repeats = pivot_repeats
        self.max_passes = max_passes
        self.init = init
        self.random_state = random_state

    def fit(self, X, y=None, colors=None):
        g = check_signed_graph(X, colors, allow_weighted=True)
        seed = _seed(self.random_state)
        cfg = SolverConfig(self.pivot_repeats, self.max_passes, self.init, seed or 0)
        rng = np.random.default_rng(seed)
        if self.method == "local":
            c = local_search(g, cfg, rng)
        elif self.method == "pivot":
            c = best_of_pivot(g, self.pivot_repeats, rng)
        elif self.method == "single":
            c = single_cluster(g)
        else:
            raise ValueError(f"unknown method {self.method!r}")
        self.clustering_ = c
        self.labels_ = np.asarray(c.labels)
        self.cost_ = cost_of(g, c)
        self.error_ = error_rate(g, c) if isinstance(g, SignedGraph) and g.n > 1 else None
        self.n_clusters_ = c.n_clusters
        return self


class FairletDecomposer(TransformerMixin, BaseEstimator):
    """Fairlet decomposition; ``transform`` returns the reduced weight matrix.

    ``labels_`` holds the fairlet index of every vertex. The output of
    ``fit_transform`` can be fed straight to :class:`CorrelationClustering`.

    Parameters
    ----------
    fairness : "half", "equal", int t or "1/t"
    method : {"match", "random"}
    random_state : int or None
        Only used by ``method="random"``.
    """

    def __init__(self, fairness="half", method="match", random_state=None):
        self.fairness = fairness
        self.method = method
        self.random_state = random_state

    def fit(self, X, y=None, colors=None, decomposition=None):
        g = check_signed_graph(X, colors)
        constraint = FairnessConstraint.parse(self.fairness)
        if self.method == "match":
            p = decompose(g, constraint, decomposition)
        elif self.method == "random":
            if constraint.mode == "one_over_t":
                raise ValueError("random fairlets support 'half' and 'equal' only")
            p = fairlets_random(g, constraint, _seed(self.random_state))
        else:
            raise ValueError(f"unknown method {self.method!r}")
        self.graph_ = g
        self.alpha_ = constraint.alpha(g.n_colors)
        self.fairlets_ = p
        self.labels_ = p.labels(g.n)
        self.fcost_ = fcost(g, p)
        self.mcost_ = decomposition_mcost(g, p)
        return self

    def transform(self, X):
        check_is_fitted(self, "fairlets_")
        g = check_signed_graph(X, self.graph_.colors)
        if g != self.graph_:
            raise ValueError("transform expects the graph the decomposer was fitted on")
        return np.array(reduce(g, self.fairlets_, self.alpha_).graph.weights)


class FairCorrelationClustering(ClusterMixin, BaseEstimator):
    """Correlation clustering whose clusters satisfy a color upper bound.

    Parameters
    ----------
    fairness : "half", "equal", int t or "1/t"
        Upper bound on any color's share of a cluster: 1/2, 1/C or 1/t.
    solver : {"local", "pivot"}
        Solver for the reduced (fairlet-level) instance.
    pivot_repeats, max_passes, init : see :class:`CorrelationClustering`.
    check_bound : bool
        Verify cost(expanded) <= cost(reduced) + fcost after solving.
    random_state : int or None
    """

    def __init__(self, fairness="half", solver="local", pivot_repeats=10, max_passes=100,
                 init="singletons", check_bound=True, random_state=None):
        self.fairness = fairness
        self.solver = solver
        self.pivot_repeats = pivot_repeats
        self.max_passes = max_passes
        self.init = init
        self.check_bound = check_bound
        self.random_state = random_state

    def fit(self, X, y=None, colors=None, decomposition=None):
        g = check_signed_graph(X, colors)
        seed = _seed(self.random_state)
        cfg = SolverConfig(self.pivot_repeats, self.max_passes, self.init, seed, self.solver)
        constraint = FairnessConstraint.parse(self.fairness)
        result = fair_cc_detailed(g, constraint, cfg, decomposition, self.check_bound,
                                  metric=HammingMetric(g))
        alpha = constraint.alpha(g.n_colors)
        self.clustering_ = result.clustering
        self.labels_ = np.asarray(result.clustering.labels)
        self.fairlets_ = result.decomposition
        self.reduced_ = result.reduced
        self.reduced_cost_ = weighted_cc_cost(result.reduced.graph, result.reduced_clustering)
        self.cost_ = cost_of(g, result.clustering)
        self.error_ = error_rate(g, result.clustering) if g.n > 1 else None
        self.imbalance_ = imbalance(result.clustering, g, alpha)
        self.n_clusters_ = result.clustering.n_clusters
        return self
