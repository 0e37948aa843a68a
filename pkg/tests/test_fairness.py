from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from faircc.exceptions import EmptyCluster
from faircc.fairness import (
    FairnessConstraint,
    allowance,
    as_fraction,
    imbalance,
    is_fair,
    validate_decomposition,
)
from faircc.graph import Clustering, build_graph

HALF = Fraction(1, 2)


def colored(colors):
    return build_graph(len(colors), [], colors)


class TestIsFair:
    def test_pair(self):
        assert is_fair([0, 1], colored([0, 1]), HALF)

    def test_majority_triple(self):
        assert not is_fair([0, 1, 2], colored([0, 0, 1]), HALF)

    def test_rainbow_triple(self):
        assert is_fair([0, 1, 2], colored([0, 1, 2]), Fraction(1, 3))

    def test_float_alpha_snaps(self):
        assert is_fair([0, 1, 2], colored([0, 1, 2]), 1 / 3)
        assert as_fraction(1 / 3) == Fraction(1, 3)

    def test_empty(self):
        with pytest.raises(EmptyCluster):
            is_fair([], colored([0, 1]), HALF)

    @pytest.mark.parametrize("alpha", [0, 1, Fraction(3, 2), -0.5])
    def test_alpha_range(self, alpha):
        with pytest.raises(ValueError):
            allowance(4, alpha)


class TestImbalance:
    def test_fair_clustering(self):
        g = colored([0, 1, 0, 1])
        assert imbalance(Clustering([0, 0, 1, 1]), g, HALF) == 0.0

    def test_one_heavy_cluster(self):
        g = colored([0, 0, 0, 1])
        assert imbalance(Clustering.one_cluster(4), g, HALF) == 0.25


class TestValidate:
    def test_ok(self):
        assert validate_decomposition([[0, 1], [2, 3]], colored([0, 1, 0, 1]), HALF) == []

    def test_missing(self):
        problems = validate_decomposition([[0, 1]], colored([0, 1, 0, 1]), HALF)
        assert {(p.kind, p.vertex) for p in problems} == {("missing", 2), ("missing", 3)}

    def test_unfair_triple(self):
        problems = validate_decomposition([[0, 1, 2]], colored([0, 0, 1]), HALF)
        assert [p.kind for p in problems] == ["unfair"]

    def test_duplicate_and_unknown(self):
        problems = validate_decomposition([[0, 1], [1, 5]], colored([0, 1]), None)
        assert {p.kind for p in problems} == {"duplicate", "unknown"}


class TestConstraint:
    @pytest.mark.parametrize("value, mode, alpha", [
        ("half", "half", Fraction(1, 2)),
        ("1/2", "half", Fraction(1, 2)),
        (2, "half", Fraction(1, 2)),
        ("equal", "equal", Fraction(1, 4)),
        (3, "one_over_t", Fraction(1, 3)),
        ("1/5", "one_over_t", Fraction(1, 5)),
    ])
    def test_parse(self, value, mode, alpha):
        c = FairnessConstraint.parse(value)
        assert c.mode == mode and c.alpha(4) == alpha

    @pytest.mark.parametrize("value", ["third", "2/3", 1, "1/1"])
    def test_parse_rejects(self, value):
        with pytest.raises(ValueError):
            FairnessConstraint.parse(value)

    def test_equal_needs_colors(self):
        with pytest.raises(ValueError):
            FairnessConstraint.parse("equal").alpha(1)


alphas = st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)])


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.integers(0, 3), min_size=1, max_size=12),
    st.lists(st.integers(0, 3), min_size=1, max_size=12),
    alphas,
)
def test_union_of_fair_sets_is_fair(a, b, alpha):
    g = colored(sorted(set(range(4))) + a + b)
    A = [4 + i for i in range(len(a))]
    B = [4 + len(a) + i for i in range(len(b))]
    if is_fair(A, g, alpha) and is_fair(B, g, alpha):
        assert is_fair(A + B, g, alpha)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=15), alphas, alphas)
def test_fairness_monotone_in_alpha(cols, a1, a2):
    g = colored(list(range(4)) + cols)
    members = list(range(4, 4 + len(cols)))
    lo, hi = min(a1, a2), max(a1, a2)
    if is_fair(members, g, lo):
        assert is_fair(members, g, hi)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 20), st.integers(0, 10**6), alphas)
def test_imbalance_bounds(n, seed, alpha):
    rng = np.random.default_rng(seed)
    colors = np.concatenate([[0, 1], rng.integers(0, 2, n - 2)])
    g = colored(colors.tolist())
    c = Clustering(rng.integers(0, 4, n))
    value = imbalance(c, g, alpha)
    assert 0.0 <= value <= 1.0
    fair_everywhere = all(is_fair(m, g, alpha) for m in c.clusters())
    assert (value == 0.0) == fair_everywhere
