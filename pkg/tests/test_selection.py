import math

import numpy as np
import pytest

from geomid.core import DatasetMatrix
from geomid.features import FeatureScore, score_features_exact
from geomid.selection import (
    SelectionPlan,
    apply_selection,
    discard_count,
    plan_selection,
    remaining_share,
)


@pytest.fixture
def scores(two_features):
    return score_features_exact(two_features)


class TestPlan:
    def test_top(self, scores):
        p = plan_selection(scores, "top", 0.5)
        assert (p.discarded, p.kept) == ([1], [0])

    def test_reversed(self, scores):
        p = plan_selection(scores, "reversed", 0.5)
        assert (p.discarded, p.kept) == ([0], [1])

    @pytest.mark.parametrize("policy", ["top", "reversed", "random"])
    def test_zero_fraction(self, scores, policy):
        p = plan_selection(scores, policy, 0.0, seed=4)
        assert p.discarded == [] and p.kept == [0, 1]

    def test_floor_rule(self, scores):
        assert plan_selection(scores, "top", 0.999).discarded == [1]
        assert discard_count(0.9, 10) == 9
        assert discard_count(0.29, 100) == 29
        assert discard_count(0.07, 100) == 7

    @pytest.mark.parametrize("fraction", [-0.1, 1.0, 1.5])
    def test_bad_fraction(self, scores, fraction):
        with pytest.raises(ValueError):
            plan_selection(scores, "top", fraction)

    def test_unknown_policy(self, scores):
        with pytest.raises(ValueError):
            plan_selection(scores, "middle", 0.5)

    def test_infinite_nid_discarded_first(self):
        x = np.column_stack([np.arange(6.0), np.ones(6), np.arange(6.0) ** 2])
        p = plan_selection(score_features_exact(x), "top", 0.34)
        assert p.discarded == [1]

    def test_ties_by_index(self):
        sc = [FeatureScore(i, 1.0, 1.0, 1.0) for i in range(4)]
        assert plan_selection(sc, "top", 0.5).discarded == [0, 1]
        assert plan_selection(sc, "reversed", 0.5).discarded == [0, 1]

    def test_random_reproducible(self, rng):
        sc = score_features_exact(rng.normal(size=(20, 30)))
        a = plan_selection(sc, "random", 0.4, seed=99)
        b = plan_selection(sc, "random", 0.4, seed=99)
        assert a == b and len(a.discarded) == 12
        others = {tuple(plan_selection(sc, "random", 0.4, seed=s).discarded) for s in range(10)}
        assert len(others) > 5

    def test_top_reversed_complement(self, rng):
        sc = score_features_exact(rng.normal(size=(25, 10)) * np.arange(1, 11))
        top = plan_selection(sc, "top", 0.3)
        rev = plan_selection(sc, "reversed", 0.7)
        assert sorted(top.discarded + rev.discarded) == list(range(10))

    def test_roundtrip_dict(self, scores):
        p = plan_selection(scores, "random", 0.5, seed=3)
        assert SelectionPlan.from_dict(p.to_dict()) == p


class TestApply:
    def test_keep_first(self, two_features, scores):
        out = apply_selection(two_features, plan_selection(scores, "top", 0.5))
        assert out.values.tolist() == [[0.0], [1.0], [3.0]]

    def test_identity(self, rng):
        x = rng.normal(size=(8, 3))
        sc = score_features_exact(x)
        out = apply_selection(x, plan_selection(sc, "top", 0.0))
        assert out.values.tobytes() == x.tobytes()

    def test_preserves_rows_and_names(self, rng):
        m = DatasetMatrix(rng.normal(size=(9, 4)), ("a", "b", "c", "d"))
        plan = SelectionPlan("top", 0.5, 0, [0, 2], [1, 3])
        out = apply_selection(m, plan)
        assert out.names == ("b", "d")
        assert np.array_equal(out.values, m.values[:, [1, 3]])

    def test_empty_kept(self):
        with pytest.raises(ValueError):
            apply_selection(np.zeros((3, 1)), SelectionPlan("top", 0.5, 0, [0], []))

    def test_mismatch(self):
        with pytest.raises(ValueError):
            apply_selection(np.zeros((3, 2)), SelectionPlan("top", 0.5, 0, [5], [0]))


class TestRemainingShare:
    def test_worked_examples(self, scores):
        top = plan_selection(scores, "top", 0.5)
        rev = plan_selection(scores, "reversed", 0.5)
        total = 0.5 + 2 / 9
        assert remaining_share(scores, top) == pytest.approx(0.5 / total, abs=1e-12)
        assert remaining_share(scores, rev) == pytest.approx((2 / 9) / total, abs=1e-12)
        assert remaining_share(scores, plan_selection(scores, "top", 0.0)) == 1.0

    def test_nid_measure(self, scores):
        top = plan_selection(scores, "top", 0.5)
        assert remaining_share(scores, top, "nid") == pytest.approx(4 / 24.25)

    def test_nid_measure_rejects_infinite(self):
        sc = [FeatureScore(0, 1.0, 1.0, 1.0), FeatureScore(1, 0.0, 0.0, math.inf)]
        with pytest.raises(ValueError):
            remaining_share(sc, plan_selection(sc, "top", 0.5), "nid")

    def test_all_constant(self):
        sc = score_features_exact(np.ones((4, 2)))
        with pytest.raises(ValueError):
            remaining_share(sc, plan_selection(sc, "top", 0.0))

    def test_top_beats_random(self, rng):
        wins = trials = 0
        for seed in range(100):
            sc = score_features_exact(rng.normal(size=(15, 12)) * rng.uniform(0.1, 3, size=12))
            top = remaining_share(sc, plan_selection(sc, "top", 0.5))
            rnd = remaining_share(sc, plan_selection(sc, "random", 0.5, seed=seed))
            wins += top >= rnd
            trials += 1
        assert wins / trials >= 0.95
