import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from geomid import oracle
from geomid.core import (
    DatasetMatrix,
    EXACT,
    delta_exact,
    id_exact,
    phi_profile,
)

small_int_matrices = st.tuples(st.integers(2, 9), st.integers(1, 4)).flatmap(
    lambda s: arrays(np.float64, s, elements=st.integers(-50, 50).map(float))
)
small_real_matrices = st.tuples(st.integers(2, 9), st.integers(1, 4)).flatmap(
    lambda s: arrays(np.float64, s, elements=st.floats(-1e3, 1e3, allow_nan=False, width=64))
)


class TestPhiProfile:
    def test_worked_examples(self):
        assert phi_profile([0, 1, 3], 0).phi.tolist() == [1.0, 3.0]
        assert phi_profile([0, 1, 2, 4], 0).phi.tolist() == [1.0, 2.0, 4.0]
        assert phi_profile([5, 5, 5], 0).phi.tolist() == [0.0, 0.0]

    def test_last_entry_is_range(self, rng):
        x = rng.normal(size=(50, 3))
        for j in range(3):
            assert phi_profile(x, j).at(50) == x[:, j].max() - x[:, j].min()

    def test_bad_feature(self):
        with pytest.raises(IndexError):
            phi_profile([[0, 1], [1, 2]], 2)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            phi_profile([[1.0, 2.0]], 0)

    @settings(max_examples=60, deadline=None)
    @given(small_int_matrices)
    def test_oracle_integer_exact(self, x):
        slow = oracle.brute_profiles(x)
        for j in range(x.shape[1]):
            assert phi_profile(x, j).phi.tolist() == slow[j]

    @settings(max_examples=60, deadline=None)
    @given(small_real_matrices)
    def test_oracle_real(self, x):
        slow = oracle.brute_profiles(x)
        for j in range(x.shape[1]):
            np.testing.assert_allclose(phi_profile(x, j).phi, slow[j], rtol=0, atol=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(small_real_matrices)
    def test_monotone_in_k(self, x):
        for j in range(x.shape[1]):
            phi = phi_profile(x, j).phi
            assert np.all(np.diff(phi) >= 0)
            assert np.all(phi >= 0)

    def test_row_order_irrelevant(self, rng):
        x = rng.normal(size=(40, 2))
        perm = rng.permutation(40)
        assert np.array_equal(phi_profile(x, 1).phi, phi_profile(x[perm], 1).phi)


class TestDelta:
    def test_single_feature(self):
        assert delta_exact([0, 1, 3]) == pytest.approx(4 / 3, abs=1e-15)

    def test_two_features(self, two_features):
        # phi_2 = max(1, 0), phi_3 = max(3, 2)
        assert delta_exact(two_features) == pytest.approx(4 / 3, abs=1e-15)

    def test_constant(self):
        assert delta_exact(np.full((6, 3), -2.0)) == 0.0

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            delta_exact([[1.0, 2.0]])

    @settings(max_examples=60, deadline=None)
    @given(small_int_matrices)
    def test_oracle_integer_exact(self, x):
        assert delta_exact(x) == oracle.brute_delta(x)


class TestIdExact:
    def test_worked_examples(self):
        est = id_exact([0, 1, 3])
        assert est.method == EXACT
        assert est.id_mid == pytest.approx(0.5625, abs=1e-12)
        assert est.id_lower == est.id_mid == est.id_upper
        assert est.delta_lower == est.delta_upper
        assert id_exact([0, 1, 2, 4]).id_mid == pytest.approx(16 / 49, abs=1e-12)

    def test_constant_is_infinite(self):
        est = id_exact(np.ones((4, 2)))
        assert est.infinite
        assert est.delta_lower == 0.0


class TestInvariances:
    def test_row_permutation_bit_exact(self, rng):
        x = rng.normal(size=(60, 4))
        y = x[rng.permutation(60)]
        assert delta_exact(x) == delta_exact(y)
        assert id_exact(x) == id_exact(y)

    def test_column_permutation_bit_exact(self, rng):
        x = rng.normal(size=(60, 5))
        y = x[:, rng.permutation(5)]
        assert delta_exact(x) == delta_exact(y)
        assert id_exact(x) == id_exact(y)

    @pytest.mark.parametrize("c", [0.5, 3.0, 1e3])
    def test_scaling(self, rng, c):
        x = rng.normal(size=(50, 3))
        assert delta_exact(c * x) == pytest.approx(c * delta_exact(x), rel=1e-9)
        assert id_exact(c * x).id_mid == pytest.approx(id_exact(x).id_mid / c**2, rel=1e-9)

    def test_translation_exact_on_integers(self, rng):
        x = rng.integers(-100, 100, size=(40, 3)).astype(float)
        y = x + np.array([7.0, -1000.0, 0.0])
        assert delta_exact(x) == delta_exact(y)

    def test_translation_real(self, rng):
        x = rng.normal(size=(40, 3))
        y = x + np.array([0.3, -5.0, 11.0])
        assert delta_exact(y) == pytest.approx(delta_exact(x), rel=1e-12)

    def test_adding_column_never_decreases_delta(self, rng):
        x = rng.normal(size=(30, 2))
        extra = rng.normal(scale=0.1, size=(30, 1))
        wider = np.hstack([x, extra])
        assert delta_exact(wider) >= delta_exact(x)
        assert id_exact(wider).id_mid <= id_exact(x).id_mid


class TestDatasetMatrix:
    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="row 1, column 0"):
            DatasetMatrix(np.array([[0.0], [np.nan]]))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            DatasetMatrix(np.zeros((0, 2)))

    def test_names_length(self):
        with pytest.raises(ValueError):
            DatasetMatrix(np.zeros((2, 2)), ("a",))

    def test_column_name(self):
        m = DatasetMatrix(np.zeros((2, 2)), ("a", "b"))
        assert m.column_name(1) == "b"
        assert DatasetMatrix(np.zeros((2, 2))).column_name(0) == "f0"
