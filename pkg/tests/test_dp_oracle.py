import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import all_profiles, brute_logic_optimum, brute_prefix_optimum
from prefixsynth.circuit import expand_to_logic, logic_delay, prefix_delay, validate_spans
from prefixsynth.dp_oracle import DpTable, dp_logic_optimal, dp_optimal

small = st.lists(st.integers(0, 6), min_size=1, max_size=10).map(tuple)


@given(small)
def test_prefix_optimum_matches_enumeration(times):
    d, tree = dp_optimal(times)
    assert d == brute_prefix_optimum(np.array([times]))[0]
    assert validate_spans(tree)
    assert prefix_delay(tree, times) == d


@pytest.mark.parametrize("n", range(1, 7))
def test_prefix_optimum_exhaustive(n):
    profs = all_profiles(n, 3)
    ref = brute_prefix_optimum(profs)
    got = [dp_optimal(tuple(int(t) for t in p))[0] for p in profs]
    assert np.array_equal(np.array(got), ref)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=7).map(tuple))
def test_logic_optimum_matches_enumeration(times):
    d, tree = dp_logic_optimal(times)
    assert d == brute_logic_optimum(times)
    assert logic_delay(expand_to_logic(tree), times) == d


@pytest.mark.parametrize(
    "times, want",
    [((0, 0, 0, 0, 0), 4), ((4, 3, 2, 1, 0), 6), ((0, 1, 2, 3, 4), 7)],
)
def test_logic_optima_of_standard_profiles(times, want):
    assert dp_logic_optimal(times)[0] == want


def test_table_tie_break_prefers_smallest_split():
    table = DpTable((0, 0))
    assert table.optimum() == 2
    assert table.tree().to_nested() == (2, 1)


@given(small)
def test_logic_optimum_within_sandwich(times):
    d_prefix, _ = dp_optimal(times)
    d_logic, _ = dp_logic_optimal(times)
    assert d_prefix <= d_logic <= d_prefix + 1


def test_limit():
    with pytest.raises(ValueError):
        dp_optimal((0,) * 10, limit=5)
    with pytest.raises(ValueError):
        dp_logic_optimal((0,) * 10, limit=5)


def test_single_input():
    assert dp_optimal((4,))[0] == 4
    assert dp_logic_optimal((4,))[0] == 4


def test_three_zeros_split():
    d, tree = dp_optimal((0, 0, 0))
    assert d == 3 and tree.to_nested() == ((3, 2), 1)


@given(small, st.data())
def test_monotone_in_arrival_times(times, data):
    i = data.draw(st.integers(0, len(times) - 1))
    bumped = times[:i] + (times[i] + data.draw(st.integers(1, 3)),) + times[i + 1:]
    assert dp_optimal(bumped)[0] >= dp_optimal(times)[0]


@given(small)
def test_dominates_fibonacci_construction(times):
    from prefixsynth.carry_synth import synthesize_carry

    tree, _ = synthesize_carry(times)
    assert dp_optimal(times)[0] <= prefix_delay(tree, times)
