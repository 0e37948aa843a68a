"""Fair correlation clustering via fairlet decomposition."""

from .embedding import HammingMetric, decomposition_mcost, fairlet_mcost, hamming_distance, phi
from .estimators import (
    CorrelationClustering,
    FairCorrelationClustering,
    FairletDecomposer,
    check_signed_graph,
)
from .exceptions import FairCCError, Infeasible, TooLarge
from .fairlets import (
    Fairlet,
    FairletDecomposition,
    brute_force_optimal_fairlets,
    build_aux_graph,
    fairlets_equal,
    fairlets_half,
    fairlets_random,
    fcost,
    fcost_in,
    fcost_out,
    min_cost_fair_matching,
    refine_round_robin,
)
from .fairness import FairnessConstraint, imbalance, is_fair, validate_decomposition
from .graph import (
    Clustering,
    SignedGraph,
    WeightedSignedGraph,
    build_graph,
    cc_cost,
    error_rate,
    weighted_cc_cost,
)
from .reduction import ReducedInstance, expand, fair_cc, reduce
from .solvers import SolverConfig, best_of_pivot, brute_force_cc, local_search, pivot, single_cluster

__version__ = "0.1.0"
