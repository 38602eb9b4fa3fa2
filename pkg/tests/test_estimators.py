import numpy as np
import pytest
from hypothesis import given, strategies as st
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from oracles import ripple
from prefixsynth.estimators import CarryBitSynthesizer, DPCarrySynthesizer, PrefixAdderSynthesizer
from prefixsynth.validation import check_arrival_times, check_bit_matrix, check_operands


class TestValidation:
    @pytest.mark.parametrize("value", [[0, 1, 0], (0, 1, 0), np.array([0, 1, 0]), np.array([[0, 1, 0]]), [0.0, 1.0, 0.0]])
    def test_accepts(self, value):
        assert check_arrival_times(value) == (0, 1, 0)

    @pytest.mark.parametrize("value", [[], [1, -1], [0.5], [[0, 1], [1, 0]], [float("nan")]])
    def test_rejects_values(self, value):
        with pytest.raises(ValueError):
            check_arrival_times(value)

    @pytest.mark.parametrize("value", ["0,1", [True, 0], [None]])
    def test_rejects_types(self, value):
        with pytest.raises(TypeError):
            check_arrival_times(value)

    def test_bit_matrix(self):
        assert check_bit_matrix([1, 0], 2).shape == (1, 2)
        with pytest.raises(ValueError):
            check_bit_matrix([[2, 0]], 2)
        with pytest.raises(ValueError):
            check_bit_matrix([[1, 0, 1]], 2)

    def test_operands(self):
        assert check_operands([[1, 2], [3, 0]], 2) == ([1, 3], [2, 0])
        with pytest.raises(ValueError):
            check_operands([[4, 0]], 2)
        with pytest.raises(ValueError):
            check_operands([[1, 2, 3]], 2)


class TestCarryBitSynthesizer:
    def test_params(self):
        est = CarryBitSynthesizer(gamma=4, cap="off")
        assert est.get_params() == {"gamma": 4, "cap": "off"}
        assert clone(est).get_params() == est.get_params()
        est.set_params(cap="on")
        assert est.cap == "on"

    def test_fit_example(self):
        est = CarryBitSynthesizer().fit([0, 1, 0])
        assert est.k_ == 5 and est.delay_ == 5 and est.prefix_delay_ == 4
        assert (est.lower_bound_, est.upper_bound_) == (2, 6)
        assert est.stats_.size == 6 and est.n_features_in_ == 3

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            CarryBitSynthesizer().predict([[0, 0]])

    def test_bad_cap(self):
        with pytest.raises(ValueError):
            CarryBitSynthesizer(cap="maybe").fit([0, 0])

    @given(st.lists(st.integers(0, 6), min_size=1, max_size=12), st.integers(0, 2**32))
    def test_predict_matches_ripple(self, times, seed):
        est = CarryBitSynthesizer().fit(times)
        n = len(times)
        X = np.random.default_rng(seed).integers(0, 2, size=(33, 2 * n))
        y = est.predict(X)
        assert y.shape == (33, 2)
        for row, out in zip(X, y):
            ref = ripple(row[0::2], row[1::2])
            assert tuple(out) == (ref[f"c_{n + 1}"], ref[f"P_{n}"])


class TestDPCarrySynthesizer:
    def test_prefix_metric(self):
        est = DPCarrySynthesizer().fit([0, 1, 0])
        assert est.optimum_ == est.prefix_delay_ == 4

    def test_logic_metric(self):
        est = DPCarrySynthesizer(metric="logic").fit([4, 3, 2, 1, 0])
        assert est.optimum_ == est.delay_ == 6

    def test_bad_metric(self):
        with pytest.raises(ValueError):
            DPCarrySynthesizer(metric="area").fit([0])

    def test_never_worse_than_fibonacci(self):
        times = [3, 2, 3, 1, 0, 2, 2]
        assert DPCarrySynthesizer(metric="logic").fit(times).delay_ <= CarryBitSynthesizer().fit(times).delay_


class TestPrefixAdderSynthesizer:
    @pytest.mark.parametrize("construction", ["sqrt", "serial", "kogge-stone", "naive"])
    def test_predict_adds(self, construction):
        rng = np.random.default_rng(0)
        times = rng.integers(0, 5, size=20)
        est = PrefixAdderSynthesizer(construction=construction).fit(times)
        X = rng.integers(0, 1 << 20, size=(50, 2))
        np.testing.assert_array_equal(est.predict(X), X.sum(axis=1))

    def test_wide_operands(self):
        est = PrefixAdderSynthesizer().fit([0] * 70)
        a, b = (1 << 70) - 1, 12345
        assert est.predict([[a, b]])[0] == a + b

    def test_fitted_attributes(self):
        est = PrefixAdderSynthesizer().fit([0] * 25)
        assert est.graph_.num_gates == 61
        assert est.delay_ <= est.bounds_.delay_bound
        assert est.sum_circuit_.size == est.circuit_.size + 24

    def test_unknown_construction(self):
        with pytest.raises(ValueError):
            PrefixAdderSynthesizer(construction="brent-kung").fit([0, 0])
