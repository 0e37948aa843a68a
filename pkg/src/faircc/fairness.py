"""Upper-bound color constraints, fairness checks and the Imbalance measure.

A cluster ``P`` is fair under ``alpha`` when every color occurs at most
``floor(|P| * alpha)`` times in it. ``alpha`` is always held as an exact
:class:`fractions.Fraction`.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np

from .exceptions import EmptyCluster, UnknownVertex
from .graph import _check_cover

HALF = "half"
EQUAL = "equal"
ONE_OVER_T = "one_over_t"


@dataclass(frozen=True)
class FairnessConstraint:
    mode: str = HALF
    t: int = None

    def __post_init__(self):
        if self.mode not in (HALF, EQUAL, ONE_OVER_T):
            raise ValueError(f"unknown fairness mode {self.mode!r}")
        if self.mode == ONE_OVER_T and (self.t is None or int(self.t) < 2):
            raise ValueError("one_over_t mode needs an integer t >= 2")

    @classmethod
    def parse(cls, value):
        """Accept ``'half'``, ``'equal'``, an int ``t`` or ``'1/t'``."""
        if isinstance(value, cls):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(ONE_OVER_T, value) if value != 2 else cls(HALF)
        s = str(value).strip().lower()
        if s in (HALF, "1/2"):
            return cls(HALF)
        if s in (EQUAL, "1/c"):
            return cls(EQUAL)
        if s.startswith("1/") and s[2:].isdigit():
            return cls.parse(int(s[2:]))
        raise ValueError(f"cannot parse fairness constraint {value!r}")

    def alpha(self, n_colors=None):
        if self.mode == HALF:
            return Fraction(1, 2)
        if self.mode == EQUAL:
            if n_colors is None or n_colors < 2:
                raise ValueError("equal representation needs at least two colors")
            return Fraction(1, n_colors)
        return Fraction(1, int(self.t))


def as_fraction(alpha):
    if isinstance(alpha, Fraction):
        a = alpha
    elif isinstance(alpha, int):
        a = Fraction(alpha)
    elif isinstance(alpha, float):
        # floats such as 1/3 are inexact; snap to the nearest small rational
        a = Fraction(alpha).limit_denominator(10**6)
    else:
        a = Fraction(alpha)
    if not (0 < a < 1):
        raise ValueError(f"alpha must lie in (0, 1), got {a}")
    return a


def allowance(size, alpha):
    """Maximum count of any single color in a cluster of ``size`` vertices."""
    return floor(size * as_fraction(alpha))


def color_census(members, g):
    members = np.asarray(members, dtype=np.int64)
    if len(members) and (members.min() < 0 or members.max() >= g.n):
        raise UnknownVertex("cluster references a vertex outside the graph")
    return np.bincount(g.colors[members], minlength=g.n_colors)


def is_fair(cluster, g, alpha):
    members = np.asarray(list(cluster), dtype=np.int64)
    if len(members) == 0:
        raise EmptyCluster("fairness of an empty cluster is undefined")
    return int(color_census(members, g).max()) <= allowance(len(members), alpha)


def imbalance(c, g, alpha):
    """Fraction of vertices above their cluster's color allowance."""
    _check_cover(g.n, c)
    a = as_fraction(alpha)
    counts = np.zeros((c.n_clusters, g.n_colors), dtype=np.int64)
    np.add.at(counts, (c.labels, g.colors), 1)
    sizes = counts.sum(1)
    caps = np.array([floor(s * a) for s in sizes], dtype=np.int64)
    excess = np.maximum(counts - caps[:, None], 0).sum()
    return int(excess) / g.n


@dataclass(frozen=True)
class Violation:
    kind: str  # "missing" | "duplicate" | "unknown" | "unfair" | "empty"
    vertex: int = None
    fairlet: int = None


def validate_decomposition(p, g, alpha):
    """Return the list of problems with ``p``; an empty list means it is valid.

    ``p`` may be a ``FairletDecomposition`` or any iterable of vertex groups.
    With ``alpha=None`` only the partition property is checked.
    """
    groups = [list(getattr(f, "members", f)) for f in getattr(p, "fairlets", p)]
    seen = np.zeros(g.n, dtype=np.int64)
    problems = []
    for i, members in enumerate(groups):
        if not members:
            problems.append(Violation("empty", fairlet=i))
            continue
        for v in members:
            if not (0 <= v < g.n):
                problems.append(Violation("unknown", vertex=int(v), fairlet=i))
            else:
                seen[v] += 1
        known = [v for v in members if 0 <= v < g.n]
        if alpha is not None and len(known) == len(members) and not is_fair(known, g, alpha):
            problems.append(Violation("unfair", fairlet=i))
    for v in np.flatnonzero(seen == 0):
        problems.append(Violation("missing", vertex=int(v)))
    for v in np.flatnonzero(seen > 1):
        problems.append(Violation("duplicate", vertex=int(v)))
    return problems
