"""Fairlet decompositions and their correlation-clustering cost.

Builders:

* :func:`fairlets_half` -- min-cost perfect matching on cross-color pairs
  (``alpha = 1/2``), one 3-colored triple when ``n`` is odd;
* :func:`fairlets_equal` -- chained bipartite matchings between consecutive
  color classes (``alpha = 1/C``);
* :func:`refine_round_robin` -- splits a ``1/t``-fair set into fair pieces of
  size ``[t, 2t)``;
* :func:`fairlets_random` -- random baseline with the same fairlet shapes.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np
from scipy.optimize import linear_sum_assignment

from .embedding import HammingMetric, decomposition_mcost
from .exceptions import (
    Infeasible,
    OverlappingFairlets,
    SingleColor,
    TooLarge,
    TooSmall,
    UnequalColorCounts,
    UnfairInput,
)
from .fairness import as_fraction, is_fair
from .graph import Clustering


@dataclass(frozen=True)
class Fairlet:
    members: tuple
    center: int = None

    def __post_init__(self):
        members = tuple(int(v) for v in self.members)
        if not members:
            raise ValueError("a fairlet needs at least one member")
        if len(set(members)) != len(members):
            raise ValueError(f"duplicate members in fairlet {members}")
        center = members[0] if self.center is None else int(self.center)
        if center not in members:
            raise ValueError(f"center {center} is not a member of {members}")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "center", center)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class FairletDecomposition:
    fairlets: tuple

    def __post_init__(self):
        fl = tuple(f if isinstance(f, Fairlet) else Fairlet(tuple(f)) for f in self.fairlets)
        object.__setattr__(self, "fairlets", fl)

    @classmethod
    def from_clustering(cls, c):
        return cls(tuple(Fairlet(tuple(members)) for members in c.clusters()))

    def __len__(self):
        return len(self.fairlets)

    def __iter__(self):
        return iter(self.fairlets)

    def __getitem__(self, i):
        return self.fairlets[i]

    @property
    def n_vertices(self):
        return sum(len(f) for f in self.fairlets)

    @property
    def max_size(self):
        return max(len(f) for f in self.fairlets)

    @property
    def min_size(self):
        return min(len(f) for f in self.fairlets)

    def labels(self, n=None):
        n = self.n_vertices if n is None else n
        out = np.full(n, -1, dtype=np.int64)
        for i, f in enumerate(self.fairlets):
            out[list(f.members)] = i
        return out

    def as_clustering(self, n=None):
        return Clustering.from_clusters([f.members for f in self.fairlets], n)


def _group_list(p):
    if isinstance(p, Clustering):
        return [np.asarray(c) for c in p.clusters()]
    return [np.asarray(getattr(f, "members", f), dtype=np.int64) for f in getattr(p, "fairlets", p)]


# -- fcost ------------------------------------------------------------------

def fcost_in(g, P):
    """Negative pairs inside ``P``."""
    members = np.asarray(list(P), dtype=np.int64)
    k = len(members)
    positive = int(g.adjacency[np.ix_(members, members)].sum()) // 2
    return k * (k - 1) // 2 - positive


def fcost_out(g, Pi, Pj):
    """Minority-sign count among the pairs between ``Pi`` and ``Pj``."""
    a = np.asarray(list(Pi), dtype=np.int64)
    b = np.asarray(list(Pj), dtype=np.int64)
    if np.intersect1d(a, b).size:
        raise OverlappingFairlets("fcost_out needs disjoint vertex sets")
    positive = int(g.adjacency[np.ix_(a, b)].sum())
    return min(positive, len(a) * len(b) - positive)


def cross_positive_counts(g, p):
    """``(m, m)`` matrix of positive pair counts between (and, on the diagonal, within) groups."""
    groups = _group_list(p)
    M = np.zeros((g.n, len(groups)))
    for i, members in enumerate(groups):
        M[members, i] = 1.0
    counts = np.rint(M.T @ (g.adjacency.astype(np.float64) @ M)).astype(np.int64)
    sizes = np.array([len(m) for m in groups], dtype=np.int64)
    return counts, sizes


def fcost_parts(g, p):
    """``(fcost_in, fcost_out)`` summed over a decomposition."""
    counts, sizes = cross_positive_counts(g, p)
    inside = int((sizes * (sizes - 1) // 2 - np.diag(counts) // 2).sum())
    totals = np.outer(sizes, sizes)
    minority = np.minimum(counts, totals - counts)
    outside = int(np.triu(minority, 1).sum())
    return inside, outside


def fcost(g, p):
    inside, outside = fcost_parts(g, p)
    return inside + outside


# -- matching ---------------------------------------------------------------

@dataclass(frozen=True)
class AuxiliaryGraph:
    """Cross-color pairs of ``g`` weighted by embedding distance."""

    graph: object
    metric: HammingMetric

    @property
    def n(self):
        return self.graph.n

    @property
    def colors(self):
        return self.graph.colors

    def allowed(self):
        c = self.graph.colors
        return c[:, None] != c[None, :]

    def cost_matrix(self):
        return self.metric.matrix

    def edges(self):
        D = self.metric.matrix
        c = self.graph.colors
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if c[u] != c[v]:
                    yield u, v, int(D[u, v])


def build_aux_graph(g, metric=None):
    if g.n_colors < 2:
        raise SingleColor("the auxiliary graph needs at least two colors")
    return AuxiliaryGraph(g, metric or HammingMetric(g))


def _blossom_matching(cost, allowed):
    G = nx.Graph()
    G.add_nodes_from(range(len(cost)))
    iu, ju = np.nonzero(np.triu(allowed, 1))
    G.add_weighted_edges_from((int(u), int(v), int(cost[u, v])) for u, v in zip(iu, ju))
    matching = nx.min_weight_matching(G)
    partner = np.full(len(cost), -1, dtype=np.int64)
    for u, v in matching:
        partner[u], partner[v] = v, u
    return partner


def min_cost_perfect_matching(cost, allowed):
    """Exact minimum-cost perfect matching restricted to ``allowed`` pairs.

    Solves the symmetric assignment relaxation first. Its optimum is at most
    twice the optimal matching, so if the optimal permutation has only even
    cycles, taking the cheaper alternating half of each cycle is optimal.
    Odd cycles fall back to blossom (networkx).

    Returns ``partner`` with ``partner[partner[u]] == u``.
    """
    cost = np.asarray(cost, dtype=np.int64)
    allowed = np.asarray(allowed, dtype=bool).copy()
    np.fill_diagonal(allowed, False)
    n = len(cost)
    if n % 2:
        raise Infeasible("a perfect matching needs an even number of vertices")
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if not allowed.any(1).all():
        raise Infeasible("some vertex has no admissible partner")
    C = np.where(allowed, cost.astype(np.float64), np.inf)
    try:
        rows, perm = linear_sum_assignment(C)
    except ValueError as exc:
        raise Infeasible("no perfect matching over the admissible pairs") from exc

    partner = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        v = perm[start]
        while v != start:
            cycle.append(int(v))
            seen[v] = True
            v = perm[v]
        if len(cycle) % 2:
            partner = _blossom_matching(cost, allowed)
            if (partner < 0).any():
                raise Infeasible("no perfect matching over the admissible pairs")
            return partner
        k = len(cycle)
        even = sum(cost[cycle[i], cycle[i + 1]] for i in range(0, k, 2))
        odd = sum(cost[cycle[i], cycle[(i + 1) % k]] for i in range(1, k, 2))
        offset = 0 if even <= odd else 1
        for i in range(offset, k, 2):
            a, b = cycle[i], cycle[(i + 1) % k]
            partner[a], partner[b] = b, a
    return partner


def min_cost_fair_matching(h):
    """Minimum total-distance perfect matching that only pairs distinct colors."""
    counts = np.bincount(h.colors)
    if h.n % 2 or counts.max() > h.n // 2:
        raise Infeasible("no cross-color perfect matching: odd n or a color exceeds n/2")
    if len(counts) == 2:
        red, blue = np.flatnonzero(h.colors == 0), np.flatnonzero(h.colors == 1)
        r, b = linear_sum_assignment(h.metric.submatrix(red, blue))
        partner = np.empty(h.n, dtype=np.int64)
        partner[red[r]] = blue[b]
        partner[blue[b]] = red[r]
        return partner
    return min_cost_perfect_matching(h.cost_matrix(), h.allowed())


def matching_cost(h, partner):
    D = h.cost_matrix()
    return int(sum(D[u, v] for u, v in enumerate(partner) if u < v))


def _pairs(partner):
    return [(u, int(v)) for u, v in enumerate(partner) if u < v]


# -- decompositions ---------------------------------------------------------

def _check_half_feasible(g):
    if g.n_colors < 2:
        raise SingleColor("alpha = 1/2 needs at least two colors")
    if g.color_counts.max() > g.n // 2:
        raise Infeasible("a color holds more than floor(n/2) vertices")
    if g.n % 2 and g.n_colors == 2:
        raise Infeasible("odd n with two colors has no alpha = 1/2 partition")


def fairlets_half(g, metric=None):
    _check_half_feasible(g)
    metric = metric or HammingMetric(g)
    h = build_aux_graph(g, metric)
    if g.n % 2 == 0:
        pairs = _pairs(min_cost_fair_matching(h))
        return FairletDecomposition(tuple(Fairlet(p) for p in sorted(pairs)))

    # odd n: a dummy vertex at distance 0 from everyone absorbs one vertex,
    # which then joins the cheapest pair it can make 3-colored
    n = g.n
    cost = np.zeros((n + 1, n + 1), dtype=np.int64)
    cost[:n, :n] = metric.matrix
    allowed = np.ones((n + 1, n + 1), dtype=bool)
    allowed[:n, :n] = h.allowed()
    partner = min_cost_perfect_matching(cost, allowed)
    loner = int(partner[n])
    pairs = [(u, v) for u, v in _pairs(partner[:n]) if v != n and loner not in (u, v)]
    best, best_cost = None, None
    for i, (a, b) in enumerate(pairs):
        if g.colors[loner] in (g.colors[a], g.colors[b]):
            continue
        extra = metric(loner, a) + metric(loner, b)
        if best_cost is None or extra < best_cost:
            best, best_cost = i, extra
    if best is None:
        raise Infeasible("no pair can absorb the leftover vertex with three distinct colors")
    groups = [tuple(p) for i, p in enumerate(pairs) if i != best]
    groups.append(tuple(sorted(pairs[best] + (loner,))))
    return FairletDecomposition(tuple(Fairlet(m) for m in sorted(groups)))


def _check_equal_counts(g):
    if g.n_colors < 2:
        raise SingleColor("equal representation needs at least two colors")
    if len(set(g.color_counts.tolist())) != 1:
        raise UnequalColorCounts(f"color counts differ: {g.color_counts.tolist()}")


def _chains_to_fairlets(chains, n_colors):
    mid = n_colors // 2
    fairlets = [Fairlet(tuple(chain), center=chain[mid]) for chain in chains]
    return FairletDecomposition(tuple(sorted(fairlets, key=lambda f: f.members[0])))


def fairlets_equal(g, metric=None):
    """One vertex per color per fairlet, chained through colors ``0, 1, ..., C-1``."""
    _check_equal_counts(g)
    metric = metric or HammingMetric(g)
    classes = g.color_classes()
    chains = [[int(v)] for v in classes[0]]
    tail = {int(v): i for i, v in enumerate(classes[0])}
    for c in range(g.n_colors - 1):
        left, right = classes[c], classes[c + 1]
        r, col = linear_sum_assignment(metric.submatrix(left, right))
        nxt = {}
        for i, j in zip(r, col):
            k = tail[int(left[i])]
            chains[k].append(int(right[j]))
            nxt[int(right[j])] = k
        tail = nxt
    return _chains_to_fairlets(chains, g.n_colors)


def refine_round_robin(P, g, t):
    """Split a ``1/t``-fair set into ``floor(|P|/t)`` fair sets of size ``[t, 2t)``."""
    members = sorted((int(v) for v in P), key=lambda v: (g.colors[v], v))
    if len(members) < t:
        raise TooSmall(f"|P| = {len(members)} < t = {t}")
    if not is_fair(members, g, Fraction(1, t)):
        raise UnfairInput("input set is not fair under alpha = 1/t")
    m = len(members) // t
    parts = [members[i::m] for i in range(m)]
    return [Fairlet(tuple(part)) for part in parts]


def refine_decomposition(p, g, t):
    return FairletDecomposition(
        tuple(f for fairlet in p for f in refine_round_robin(fairlet.members, g, t))
    )


def _mode_of(alpha, g):
    if isinstance(alpha, str):
        return alpha
    mode = getattr(alpha, "mode", None)
    if mode is not None:
        return mode
    a = as_fraction(alpha)
    if a == Fraction(1, 2):
        return "half"
    if g.n_colors >= 2 and a == Fraction(1, g.n_colors):
        return "equal"
    raise ValueError(f"random fairlets support alpha = 1/2 or 1/C, got {a}")


def fairlets_random(g, alpha, rng_seed=None):
    """Random decomposition shaped like the matching-based one for ``alpha``.

    Each color class is shuffled; for ``1/C`` the classes are zipped
    positionally. For ``1/2`` the vertices are laid out color by color (color
    order also shuffled) and position ``i`` is paired with ``i + n/2``, which is
    always cross-color when no color exceeds ``n/2``.
    """
    rng = np.random.default_rng(rng_seed)
    mode = _mode_of(alpha, g)
    classes = [rng.permutation(cl) for cl in g.color_classes()]
    if mode == "equal" or (mode == "half" and g.n_colors == 2 and g.n % 2 == 0
                           and g.color_counts[0] == g.color_counts[1]):
        _check_equal_counts(g)
        chains = [list(map(int, col)) for col in zip(*classes)]
        return _chains_to_fairlets(chains, g.n_colors)
    if mode != "half":
        raise ValueError(f"unsupported mode {mode!r}")
    _check_half_feasible(g)
    triple = []
    if g.n % 2:
        # take one vertex from each of the three largest colors (ties random)
        sizes = np.array([len(cl) for cl in classes])
        jitter = rng.random(len(sizes))
        top = np.lexsort((jitter, -sizes))[:3]
        for c in top:
            triple.append(int(classes[c][0]))
            classes[c] = classes[c][1:]
    order = rng.permutation(len(classes))
    line = np.concatenate([classes[c] for c in order]).astype(np.int64)
    half = len(line) // 2
    groups = [tuple(sorted((int(line[i]), int(line[i + half])))) for i in range(half)]
    if triple:
        groups.append(tuple(sorted(triple)))
    return FairletDecomposition(tuple(Fairlet(m) for m in sorted(groups)))


# -- exhaustive oracle ------------------------------------------------------

def _allowed_sizes(alpha, g):
    a = as_fraction(alpha)
    if a == Fraction(1, 2):
        return (2, 3)
    if g.n_colors >= 2 and a == Fraction(1, g.n_colors):
        return (g.n_colors,)
    if a.numerator == 1:
        t = a.denominator
        return tuple(range(t, 2 * t))
    raise ValueError(f"no fairlet size rule for alpha = {a}")


def enumerate_fair_decompositions(g, alpha, sizes=None):
    """Yield every partition of ``V`` into fair groups whose sizes lie in ``sizes``."""
    sizes = _allowed_sizes(alpha, g) if sizes is None else tuple(sizes)

    def rec(remaining):
        if not remaining:
            yield []
            return
        first, rest = remaining[0], remaining[1:]
        for s in sizes:
            if s - 1 > len(rest):
                continue
            for others in itertools.combinations(rest, s - 1):
                group = (first,) + others
                if not is_fair(group, g, alpha):
                    continue
                left = [v for v in rest if v not in others]
                for tail in rec(left):
                    yield [group] + tail

    yield from rec(list(range(g.n)))


def brute_force_optimal_fairlets(g, alpha, objective="fcost", max_n=8):
    """Exhaustive minimum-``objective`` fair decomposition (test oracle)."""
    if g.n > max_n:
        raise TooLarge(f"n = {g.n} exceeds the oracle limit {max_n}")
    score = {"fcost": fcost, "mcost": decomposition_mcost}[objective]
    best, best_cost = None, None
    for groups in enumerate_fair_decompositions(g, alpha):
        value = score(g, groups)
        if best_cost is None or value < best_cost:
            best, best_cost = groups, value
    if best is None:
        raise Infeasible("no fair decomposition with the allowed fairlet sizes")
    return FairletDecomposition(tuple(Fairlet(grp) for grp in best))
