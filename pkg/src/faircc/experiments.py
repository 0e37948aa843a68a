"""Seeded runs of the compared algorithms and their Error / Imbalance reports."""

import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from statistics import mean

from .fairlets import fairlets_random
from .fairness import imbalance
from .graph import error_rate
from .reduction import fair_cc
from .solvers import SolverConfig, best_of_pivot, local_search, single_cluster

ALGORITHMS = ("local", "pivot", "single", "rand", "match-local", "repmatch-local")
FAIR_ALGORITHMS = {"match-local": "half", "repmatch-local": "equal"}


@dataclass
class RunReport:
    dataset: str
    algorithm: str
    theta: float
    C: int
    error: float
    imbalance_half: float
    imbalance_equal: float
    n_clusters: float
    seed: int
    wall_time_ms: float
    run: object = None

    def as_dict(self):
        return asdict(self)


def cluster_with(g, algo, seed, alpha="half", pivot_repeats=10, max_passes=100):
    if algo == "local":
        cfg = SolverConfig(pivot_repeats, max_passes, rng_seed=seed)
        return local_search(g, cfg)
    if algo == "pivot":
        return best_of_pivot(g, pivot_repeats, seed)
    if algo == "single":
        return single_cluster(g)
    if algo == "rand":
        return fairlets_random(g, alpha, seed).as_clustering(g.n)
    if algo in FAIR_ALGORITHMS:
        cfg = SolverConfig(pivot_repeats, max_passes, rng_seed=seed)
        return fair_cc(g, FAIR_ALGORITHMS[algo], cfg)
    raise ValueError(f"unknown algorithm {algo!r}")


def evaluate(g, c):
    """Error plus Imbalance under 1/2 and (when C >= 2) under 1/C."""
    return {
        "error": error_rate(g, c),
        "imbalance_half": imbalance(c, g, Fraction(1, 2)),
        "imbalance_equal": imbalance(c, g, Fraction(1, g.n_colors)) if g.n_colors >= 2 else None,
        "n_clusters": c.n_clusters,
    }


def run_once(g, algo, seed, dataset="", theta=None, alpha="half", pivot_repeats=10,
             max_passes=100, run=None):
    start = time.perf_counter()
    c = cluster_with(g, algo, seed, alpha, pivot_repeats, max_passes)
    elapsed = (time.perf_counter() - start) * 1000.0
    return RunReport(dataset, algo, theta, g.n_colors, wall_time_ms=elapsed, seed=seed, run=run,
                     **evaluate(g, c))


def run_repeated(g, algo, seed, repeats=10, **kwargs):
    """``repeats`` runs with seeds ``seed, seed+1, ...`` plus their mean record."""
    reports = [run_once(g, algo, seed + i, run=i, **kwargs) for i in range(repeats)]
    return reports, mean_report(reports)


def _mean(values):
    values = [v for v in values if v is not None]
    return mean(values) if values else None


def mean_report(reports):
    first = reports[0]
    return RunReport(
        first.dataset,
        first.algorithm,
        first.theta,
        first.C,
        error=_mean(r.error for r in reports),
        imbalance_half=_mean(r.imbalance_half for r in reports),
        imbalance_equal=_mean(r.imbalance_equal for r in reports),
        n_clusters=_mean(r.n_clusters for r in reports),
        seed=first.seed,
        wall_time_ms=_mean(r.wall_time_ms for r in reports),
        run="mean",
    )
