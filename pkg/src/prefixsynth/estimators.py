"""scikit-learn style wrappers: ``fit`` synthesises, ``predict`` simulates.

``fit(X)`` takes one arrival profile (1-D, ``X[0]`` is ``t_1``) and builds
the circuit; fitted attributes end in an underscore. ``predict`` evaluates
the fitted circuit on a batch of inputs, so a fitted synthesizer behaves
like any other deterministic model.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .adder_synth import adder_bounds, attach_sum_stage, kogge_stone, naive_adder, serial_graph, synthesize_adder
from .carry_synth import DEFAULT_GAMMA, _use_cap, delay_lower_bound, delay_upper_bound, synthesize_carry
from .circuit import ArrivalProfile, evaluate, expand_to_logic, prefix_delay, stats
from .dp_oracle import DEFAULT_LIMIT, dp_logic_optimal, dp_optimal
from .validation import check_arrival_times, check_bit_matrix, check_operands


def _columns(bits):
    return [int.from_bytes(np.packbits(bits[:, j], bitorder="little").tobytes(), "little")
            for j in range(bits.shape[1])]


def _lane(value, m):
    raw = value.to_bytes((m + 7) // 8 or 1, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:m]


class _CarryTreeMixin:
    """Shared fitted state and simulation for single-carry synthesizers."""

    def _finish_fit(self, times, tree):
        self.profile_ = ArrivalProfile(times)
        self.n_features_in_ = len(times)
        self.tree_ = tree
        self.circuit_ = expand_to_logic(tree)
        self.stats_ = stats(self.circuit_, self.profile_)
        self.delay_ = self.stats_.delay
        self.prefix_delay_ = prefix_delay(tree, self.profile_)
        self.lower_bound_ = delay_lower_bound(self.profile_)
        self.upper_bound_ = delay_upper_bound(self.profile_)
        return self

    def predict(self, X):
        """Rows ``[g_1, p_1, ..., g_n, p_n]`` -> columns ``[c_{n+1}, P_n]``."""
        check_is_fitted(self, "tree_")
        n = self.n_features_in_
        bits = check_bit_matrix(X, 2 * n)
        m = bits.shape[0]
        cols = _columns(bits)
        assignment = {}
        for i in range(1, n + 1):
            assignment[f"g_{i}"] = cols[2 * i - 2]
            assignment[f"p_{i}"] = cols[2 * i - 1]
        out = evaluate(self.circuit_, assignment, m)
        return np.stack([_lane(out[f"c_{n + 1}"], m), _lane(out[f"P_{n}"], m)], axis=1)


class CarryBitSynthesizer(_CarryTreeMixin, BaseEstimator):
    """Fibonacci-budget carry tree; logic delay is at most ``k_``.

    Parameters
    ----------
    gamma : float
        Capping strength, used only when capping is active.
    cap : {"auto", "on", "off"}
        ``"auto"`` caps arrival-time ranges for ``n >= 1024``.
    """

    def __init__(self, gamma=DEFAULT_GAMMA, cap="auto"):
        self.gamma = gamma
        self.cap = cap

    def fit(self, X, y=None):
        times = check_arrival_times(X)
        _use_cap(self.cap, len(times))  # validates the option early
        tree, k = synthesize_carry(times, gamma=self.gamma, cap=self.cap)
        self.k_ = k
        return self._finish_fit(times, tree)


class DPCarrySynthesizer(_CarryTreeMixin, BaseEstimator):
    """Exact optimum by interval DP, in the prefix metric or the logic metric."""

    def __init__(self, metric="prefix", limit=DEFAULT_LIMIT):
        self.metric = metric
        self.limit = limit

    def fit(self, X, y=None):
        times = check_arrival_times(X)
        if self.metric == "prefix":
            optimum, tree = dp_optimal(times, limit=self.limit)
        elif self.metric == "logic":
            optimum, tree = dp_logic_optimal(times, limit=min(self.limit, 256))
        else:
            raise ValueError(f"metric must be 'prefix' or 'logic', got {self.metric!r}")
        self.optimum_ = optimum
        return self._finish_fit(times, tree)


ADDER_CONSTRUCTIONS = ("sqrt", "serial", "kogge-stone", "naive")


class PrefixAdderSynthesizer(BaseEstimator):
    """Full adder from a parallel prefix graph.

    ``construction="sqrt"`` is the recursive grouping of
    :func:`~prefixsynth.adder_synth.synthesize_adder`; the others are
    baselines. ``predict`` maps rows ``(A, B)`` to ``A + B``.
    """

    def __init__(self, construction="sqrt", gamma=DEFAULT_GAMMA, cap="auto"):
        self.construction = construction
        self.gamma = gamma
        self.cap = cap

    def _graph(self, times):
        if self.construction == "sqrt":
            return synthesize_adder(times, gamma=self.gamma, cap=self.cap)
        if self.construction == "serial":
            return serial_graph(len(times))
        if self.construction == "kogge-stone":
            return kogge_stone(len(times))
        if self.construction == "naive":
            return naive_adder(times, gamma=self.gamma, cap=self.cap)
        raise ValueError(
            f"construction must be one of {ADDER_CONSTRUCTIONS}, got {self.construction!r}"
        )

    def fit(self, X, y=None):
        times = check_arrival_times(X)
        self.profile_ = ArrivalProfile(times)
        self.n_features_in_ = len(times)
        self.graph_ = self._graph(times)
        self.circuit_ = expand_to_logic(self.graph_)
        self.sum_circuit_ = attach_sum_stage(self.graph_)
        self.stats_ = stats(self.circuit_, self.profile_)
        self.delay_ = self.stats_.delay
        self.prefix_delay_ = prefix_delay(self.graph_, self.profile_)
        self.bounds_ = adder_bounds(self.profile_)
        return self

    def predict(self, X):
        check_is_fitted(self, "graph_")
        n = self.n_features_in_
        a_vals, b_vals = check_operands(X, n)
        m = len(a_vals)
        assignment = {}
        for i in range(n):
            a = sum(((v >> i) & 1) << lane for lane, v in enumerate(a_vals))
            b = sum(((v >> i) & 1) << lane for lane, v in enumerate(b_vals))
            assignment[f"g_{i + 1}"] = a & b
            assignment[f"p_{i + 1}"] = a ^ b
        out = evaluate(self.sum_circuit_, assignment, m)
        sums = [0] * m
        for i in range(n + 1):
            word = out[f"s_{i + 1}"]
            for lane in range(m):
                if (word >> lane) & 1:
                    sums[lane] |= 1 << i
        return np.array(sums, dtype=np.int64 if n < 63 else object)
