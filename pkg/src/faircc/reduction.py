"""Fair correlation clustering through a fairlet decomposition.

The graph is decomposed into fairlets, each fairlet becomes one node of a
weighted instance (majority sign, majority count), that instance is solved
without constraints, and the result is expanded back. Unions of fair sets are
fair, so the output is fair whenever the fairlets are.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import Infeasible, InvalidDecomposition, NodeSetMismatch
from .fairlets import (
    FairletDecomposition,
    cross_positive_counts,
    fairlets_equal,
    fairlets_half,
    fcost,
    refine_decomposition,
)
from .fairness import EQUAL, HALF, ONE_OVER_T, FairnessConstraint, is_fair, validate_decomposition
from .graph import Clustering, WeightedSignedGraph, cc_cost, weighted_cc_cost
from .solvers import SolverConfig, best_of_pivot, local_search


class ReductionBoundError(AssertionError):
    """The expanded clustering costs more than reduced cost + fcost allows."""


@dataclass(frozen=True)
class ReducedInstance:
    graph: WeightedSignedGraph
    decomposition: FairletDecomposition

    def fairlet_of(self, node):
        return self.decomposition[node]

    @property
    def m(self):
        return self.graph.n


def reduce(g, p, alpha=None):
    """Collapse each fairlet to a node; ties between signs go positive."""
    if not isinstance(p, FairletDecomposition):
        p = FairletDecomposition(tuple(p))
    problems = validate_decomposition(p, g, alpha)
    if problems:
        raise InvalidDecomposition(f"not a valid decomposition: {problems[:5]}")
    positive, sizes = cross_positive_counts(g, p)
    negative = np.outer(sizes, sizes) - positive
    W = np.where(positive >= negative, positive, -negative)
    np.fill_diagonal(W, 0)
    return ReducedInstance(WeightedSignedGraph(W), p)


def expand(p, reduced_clustering, n=None):
    if reduced_clustering.n != len(p):
        raise NodeSetMismatch(
            f"reduced clustering has {reduced_clustering.n} nodes, decomposition has {len(p)} fairlets"
        )
    n = p.n_vertices if n is None else n
    labels = np.empty(n, dtype=np.int64)
    for node, fairlet in enumerate(p):
        labels[list(fairlet.members)] = reduced_clustering.labels[node]
    return Clustering(labels)


def check_reduction_bound(g, p, reduced, reduced_clustering, expanded):
    lhs = cc_cost(g, expanded)
    rhs = weighted_cc_cost(reduced.graph, reduced_clustering) + fcost(g, p)
    if lhs > rhs:
        raise ReductionBoundError(f"cost(G, C') = {lhs} > cost(G^P, C) + fcost(P) = {rhs}")
    return lhs, rhs


def decompose(g, constraint, decomposition=None, metric=None):
    """Fairlet decomposition for the constraint's mode."""
    constraint = FairnessConstraint.parse(constraint)
    if constraint.mode == HALF:
        return fairlets_half(g, metric)
    if constraint.mode == EQUAL:
        return fairlets_equal(g, metric)
    t = int(constraint.t)
    if decomposition is None:
        # trivial black box: the whole vertex set, split round-robin
        if not is_fair(range(g.n), g, Fraction(1, t)):
            raise Infeasible(f"the vertex set itself is not fair under alpha = 1/{t}")
        decomposition = FairletDecomposition((tuple(range(g.n)),))
    return refine_decomposition(decomposition, g, t)


@dataclass
class FairCCResult:
    clustering: Clustering
    decomposition: FairletDecomposition
    reduced: ReducedInstance
    reduced_clustering: Clustering
    bound: tuple = field(default=None)


def solve_reduced(reduced, cfg):
    rng = np.random.default_rng(cfg.rng_seed)
    if cfg.solver == "pivot":
        return best_of_pivot(reduced.graph, cfg.pivot_repeats, rng)
    return local_search(reduced.graph, cfg, rng)


def fair_cc_detailed(g, constraint, cfg=None, decomposition=None, check_bound=True, metric=None):
    cfg = cfg or SolverConfig()
    constraint = FairnessConstraint.parse(constraint)
    p = decompose(g, constraint, decomposition, metric)
    reduced = reduce(g, p, constraint.alpha(g.n_colors))
    reduced_clustering = solve_reduced(reduced, cfg)
    clustering = expand(p, reduced_clustering, g.n)
    bound = None
    if check_bound:
        bound = check_reduction_bound(g, p, reduced, reduced_clustering, clustering)
    return FairCCResult(clustering, p, reduced, reduced_clustering, bound)


def fair_cc(g, constraint, cfg=None, decomposition=None, check_bound=True):
    """Fair clustering of ``g``: decompose, reduce, solve, expand."""
    return fair_cc_detailed(g, constraint, cfg, decomposition, check_bound).clustering


__all__ = [
    "EQUAL",
    "HALF",
    "ONE_OVER_T",
    "FairCCResult",
    "ReducedInstance",
    "ReductionBoundError",
    "check_reduction_bound",
    "decompose",
    "expand",
    "fair_cc",
    "fair_cc_detailed",
    "reduce",
    "solve_reduced",
]
