"""Unconstrained correlation clustering: Pivot, local search, Single, exact oracle."""

from dataclasses import dataclass

import numpy as np

from .exceptions import Infeasible, TooLarge
from .fairness import FairnessConstraint, as_fraction, is_fair
from .graph import Clustering, SignedGraph, cc_cost, weighted_cc_cost

SINGLETONS = "singletons"
FROM_PIVOT = "pivot"


@dataclass(frozen=True)
class SolverConfig:
    pivot_repeats: int = 10
    local_max_passes: int = 100
    init: str = SINGLETONS
    rng_seed: int = 0
    solver: str = "local"  # solver used on the reduced instance: "local" | "pivot"

    def __post_init__(self):
        if self.pivot_repeats < 1:
            raise ValueError("pivot_repeats must be >= 1")
        if self.local_max_passes < 1:
            raise ValueError("local_max_passes must be >= 1")
        if self.init not in (SINGLETONS, FROM_PIVOT):
            raise ValueError(f"unknown init {self.init!r}")
        if self.solver not in ("local", "pivot"):
            raise ValueError(f"unknown solver {self.solver!r}")


def _rng(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def weight_matrix(g):
    """Signed integer weights for either graph type."""
    if isinstance(g, SignedGraph):
        return g.sign_matrix.astype(np.int64)
    return g.weights


def cost_of(g, c):
    return cc_cost(g, c) if isinstance(g, SignedGraph) else weighted_cc_cost(g, c)


def pivot(g, rng=None):
    """One run of Pivot; weighted graphs are reduced to their signs."""
    rng = _rng(rng)
    positive = g.adjacency if isinstance(g, SignedGraph) else g.weights > 0
    n = len(positive)
    labels = np.full(n, -1, dtype=np.int64)
    k = 0
    # scanning a uniform permutation = picking a uniform unclustered pivot each round
    for v in rng.permutation(n):
        if labels[v] >= 0:
            continue
        members = positive[v] & (labels < 0)
        labels[members] = k
        labels[v] = k
        k += 1
    return Clustering(labels)


def best_of_pivot(g, k=10, rng=None):
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = _rng(rng)
    best, best_cost = None, None
    for _ in range(k):
        c = pivot(g, rng)
        cost = cost_of(g, c)
        if best_cost is None or cost < best_cost:
            best, best_cost = c, cost
    return best


def single_cluster(g):
    return Clustering.one_cluster(g.n)


def local_search(g, cfg=None, rng=None, init=None, on_move=None, check=False):
    """Best-improvement single-vertex relocation.

    Every pass visits the vertices in a fresh random order and moves each one
    to the existing cluster (or a new singleton) that lowers the cost the
    most, if any move lowers it at all. Ties go to the lowest cluster slot;
    a new singleton loses ties against existing clusters.

    ``on_move(labels, cost)`` is called after every move. With ``check=True``
    the cost is recomputed from scratch after each move and asserted equal to
    the tracked value and no larger than before.
    """
    cfg = cfg or SolverConfig()
    rng = _rng(rng if rng is not None else cfg.rng_seed)
    W = weight_matrix(g)
    n = len(W)
    if init is None:
        init = pivot(g, rng) if cfg.init == FROM_PIVOT else Clustering.singletons(n)
    labels = np.array(init.labels, dtype=np.int64)
    if n == 0:
        return Clustering(labels)

    # S[v, k] = sum of signed weights from v to the members of slot k
    S = np.zeros((n, n), dtype=np.int64)
    for v in range(n):
        S[:, labels[v]] += W[:, v]
    sizes = np.bincount(labels, minlength=n)
    active = sizes > 0
    cost = cost_of(g, Clustering(labels))
    neg_inf = np.iinfo(np.int64).min

    for _ in range(cfg.local_max_passes):
        moved = False
        for v in rng.permutation(n):
            a = labels[v]
            current = S[v, a]
            scores = np.where(active, S[v], neg_inf)
            scores[a] = neg_inf
            b = int(np.argmax(scores))
            value = scores[b]
            if sizes[a] > 1 and value < 0:
                b, value = int(np.argmin(active)), 0
            if value <= current:
                continue
            S[:, a] -= W[:, v]
            S[:, b] += W[:, v]
            sizes[a] -= 1
            sizes[b] += 1
            active[a] = sizes[a] > 0
            active[b] = True
            labels[v] = b
            new_cost = cost + int(current - value)
            if check:
                actual = cost_of(g, Clustering(labels))
                assert actual == new_cost, (actual, new_cost)
                assert new_cost <= cost, (new_cost, cost)
            cost = new_cost
            moved = True
            if on_move is not None:
                on_move(labels.copy(), cost)
        if not moved:
            break
    return Clustering(labels)


def _constraint_alpha(constraint, g):
    if constraint is None:
        return None
    if isinstance(constraint, (FairnessConstraint, str)):
        return FairnessConstraint.parse(constraint).alpha(g.n_colors)
    return as_fraction(constraint)


def brute_force_cc(g, constraint=None, max_n=None):
    """Exact optimum by branch and bound over set partitions.

    Returns ``(clustering, cost)``. With a constraint (a
    :class:`FairnessConstraint`, mode string, or rational alpha) only
    clusterings whose clusters are all fair are considered.
    """
    alpha = _constraint_alpha(constraint, g)
    if max_n is None:
        max_n = 10 if alpha is None else 12
    W = weight_matrix(g)
    n = len(W)
    if n > max_n:
        raise TooLarge(f"n = {n} exceeds the exhaustive limit {max_n}")
    Wl = W.tolist()
    pos_before = [sum(w for w in Wl[i][:i] if w > 0) for i in range(n)]

    def fair(labels_):
        if alpha is None:
            return True
        groups = {}
        for v, k in enumerate(labels_):
            groups.setdefault(k, []).append(v)
        return all(is_fair(grp, g, alpha) for grp in groups.values())

    best_labels, best_cost = None, None
    if alpha is None:
        seed = local_search(g, SolverConfig(), rng=0)
        best_labels, best_cost = list(seed.labels), cost_of(g, seed)
    elif n and fair([0] * n):
        best_labels, best_cost = [0] * n, cost_of(g, Clustering.one_cluster(n))

    labels = [0] * n

    def rec(i, nblocks, cost):
        nonlocal best_labels, best_cost
        if best_cost is not None and cost >= best_cost:
            return
        if i == n:
            if fair(labels):
                best_labels, best_cost = labels.copy(), cost
            return
        sums = [0] * (nblocks + 1)
        row = Wl[i]
        for u in range(i):
            sums[labels[u]] += row[u]
        for b in range(nblocks + 1):
            labels[i] = b
            rec(i + 1, max(nblocks, b + 1), cost + pos_before[i] - sums[b])

    rec(0, 0, 0)
    if best_labels is None:
        raise Infeasible("no clustering satisfies the constraint")
    return Clustering(best_labels), best_cost
