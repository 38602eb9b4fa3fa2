import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import brute_prefix_optimum, fib_naive, log_phi_floor_ceil_mp
from prefixsynth.carry_synth import (
    CAP_THRESHOLD,
    cap_profile,
    delay_lower_bound,
    delay_upper_bound,
    fibonacci_budget,
    synthesize_carry,
)
from prefixsynth.circuit import expand_to_logic, logic_delay, prefix_delay, stats, validate_spans

profiles = st.lists(st.integers(0, 10), min_size=1, max_size=40).map(tuple)


def synth_delay(times, **kw):
    tree, k = synthesize_carry(times, **kw)
    return tree, k, logic_delay(expand_to_logic(tree), times)


def test_three_input_example():
    tree, k, delay = synth_delay((0, 1, 0))
    assert k == 5 and delay == 5
    assert tree.to_nested() == (3, (2, 1))
    assert prefix_delay(tree, (0, 1, 0)) == 4


def test_five_input_example():
    total, k = fibonacci_budget((3, 2, 3, 1, 0))
    assert total == 21 and k == 8
    tree, k2, delay = synth_delay((3, 2, 3, 1, 0))
    assert k2 == 8 and delay <= 8


def test_single_input():
    tree, k, delay = synth_delay((7,))
    assert tree.num_gates == 0 and delay == 7
    assert k == 10  # F(10)=55 >= F(10)-1


@given(profiles)
def test_tree_is_valid_and_delay_within_budget(times):
    tree, k, delay = synth_delay(times, cap="off")
    assert validate_spans(tree)
    assert delay <= k
    assert prefix_delay(tree, times) <= k - 1 or len(times) == 1


@given(profiles)
def test_budget_is_minimal_fibonacci_index(times):
    total, k = fibonacci_budget(times)
    assert total == sum(fib_naive(t + 3) - 1 for t in times)
    assert fib_naive(k) >= total and (k == 2 or fib_naive(k - 1) < total)


@given(profiles)
def test_delay_between_bounds(times):
    tree, k, delay = synth_delay(times, cap="off")
    assert delay_lower_bound(times) <= delay <= delay_upper_bound(times)


@given(profiles)
def test_bounds_match_high_precision(times):
    fl, ce = log_phi_floor_ceil_mp(times)
    assert delay_upper_bound(times) == fl + 4
    assert delay_lower_bound(times) == max(ce - 1, max(times))


@given(profiles)
def test_size_and_fanout(times):
    tree, _ = synthesize_carry(times)
    st_ = stats(expand_to_logic(tree))
    assert st_.size == 3 * (len(times) - 1)
    assert len(times) == 1 or st_.max_fanout <= 2


@given(st.lists(st.integers(0, 3), min_size=1, max_size=8).map(tuple))
def test_prefix_delay_not_below_optimum(times):
    tree, _ = synthesize_carry(times)
    opt = brute_prefix_optimum(np.array([times]))[0]
    assert prefix_delay(tree, times) >= opt


@given(profiles, st.integers(0, 50))
def test_bounds_shift_with_profile(times, s):
    shifted = tuple(t + s for t in times)
    assert delay_lower_bound(shifted) == delay_lower_bound(times) + s
    assert delay_upper_bound(shifted) == delay_upper_bound(times) + s
    _, k, delay = synth_delay(shifted, cap="off")
    assert delay <= k <= delay_upper_bound(times) + s


class TestCapping:
    def test_example(self):
        capped, shift = cap_profile((100, 0), gamma=3)
        assert capped.times == (5, 0) and shift == 95

    @given(st.lists(st.integers(0, 10**6), min_size=2, max_size=60).map(tuple), st.sampled_from([2, 3, 4]))
    def test_range_is_bounded(self, times, gamma):
        capped, shift = cap_profile(times, gamma)
        assert min(capped.times) == 0
        assert max(capped.times) + shift == max(times)
        # never lowers an arrival time
        assert all(c + shift >= t for c, t in zip(capped.times, times))

    @given(st.lists(st.integers(0, 10**4), min_size=2, max_size=60).map(tuple))
    def test_capped_delay_within_budget(self, times):
        tree, k = synthesize_carry(times, cap="on")
        assert validate_spans(tree)
        assert logic_delay(expand_to_logic(tree), times) <= k

    def test_auto_threshold(self):
        rng = random.Random(0)
        big = tuple(rng.randint(0, 10**5) for _ in range(CAP_THRESHOLD))
        _, k_auto = synthesize_carry(big)
        _, k_on = synthesize_carry(big, cap="on")
        assert k_auto == k_on

    def test_bad_options(self):
        with pytest.raises(ValueError):
            synthesize_carry((0, 1), cap="sometimes")
        with pytest.raises(ValueError):
            cap_profile((0, 1), gamma=1)


def test_large_instance_runs():
    rng = random.Random(5)
    times = tuple(rng.randint(0, 2**20) for _ in range(2**12))
    tree, k = synthesize_carry(times)
    assert tree.num_gates == len(times) - 1
    assert prefix_delay(tree, times) <= k


@given(st.lists(st.integers(0, 10**5), min_size=2, max_size=80).map(tuple), st.sampled_from([3, 4]))
def test_capped_delay_close_to_uncapped_bound(times, gamma):
    tree, _ = synthesize_carry(times, gamma=gamma, cap="on")
    assert logic_delay(expand_to_logic(tree), times) <= delay_upper_bound(times) + 1


@given(profiles)
def test_deterministic(times):
    assert synthesize_carry(times) == synthesize_carry(times)


@given(st.lists(st.sampled_from([0, 1, 1, 1, 2]), min_size=1, max_size=40).map(tuple))
def test_profiles_dense_in_ones(times):
    tree, k, delay = synth_delay(times)
    assert delay <= k
    assert delay <= delay_upper_bound(times)


def test_uniform_bound():
    for n in (2, 3, 10, 100):
        assert delay_upper_bound((0,) * n) == log_phi_floor_ceil_mp((0,) * n)[0] + 4
    assert delay_lower_bound((0, 0, 0)) == 2
