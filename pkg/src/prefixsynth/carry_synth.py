"""Fast single-carry prefix trees from arrival times.

Input ``z_i`` reserves ``F(t_i + 3) - 1`` consecutive leaves of an implicit
Fibonacci tree with ``F(k)`` leaves, counted from the right. A node with
budget ``m`` has ``F(m - 1)`` leaves on its left and ``F(m - 2)`` on its
right; every split only needs the one input whose leaves straddle that
boundary, found by binary search over prefix sums of the reservations.
The tree itself is never materialised.
"""

from __future__ import annotations

from bisect import bisect_left
from itertools import accumulate

from .circuit import ArrivalProfile, PrefixTree, as_profile
from .fibmath import ceil_gamma_log_phi, fib_table, leaf_weight, min_fib_index_at_least, phi_log_bounds

DEFAULT_GAMMA = 3
CAP_THRESHOLD = 1024


def cap_profile(a, gamma=DEFAULT_GAMMA):
    """Raise early inputs so the arrival-time range is at most ``ceil(gamma * log_phi n)``.

    Returns ``(capped, shift)``: the capped profile is shifted so its minimum
    is 0, and ``shift`` must be added back to any delay computed on it.
    """
    prof = as_profile(a)
    if gamma <= 1:
        raise ValueError(f"gamma must exceed 1, got {gamma}")
    top = max(prof.times)
    floor_t = top - ceil_gamma_log_phi(gamma, prof.n)
    raised = [t if t > floor_t else floor_t for t in prof.times]
    shift = max(min(raised), 0)
    return ArrivalProfile(tuple(t - shift if t > shift else 0 for t in raised)), shift


def _use_cap(cap, n):
    if cap is None or cap == "auto":
        return n >= CAP_THRESHOLD
    if isinstance(cap, str):
        if cap not in ("on", "off"):
            raise ValueError(f"cap must be 'on', 'off' or 'auto', got {cap!r}")
        return cap == "on"
    return bool(cap)


def fibonacci_budget(times):
    """Total leaf reservation and the budget index ``k`` for *times*."""
    total = sum(leaf_weight(t) for t in times)
    return total, min_fib_index_at_least(total)


def _build(times):
    n = len(times)
    table = fib_table(max(times) + 3)
    w = [table[t + 3] - 1 for t in times]
    prefix = [0]
    prefix.extend(accumulate(w))
    # prefix[i] = w_1 + ... + w_i; inputs are addressed 1-based below.
    k = min_fib_index_at_least(prefix[-1])
    if n == 1:
        return PrefixTree.leaf(), k
    F = fib_table(k)
    need = [table[t + 1] for t in times]  # F(t_i + 1): smallest subtree input i may replace

    def full(i):
        return w[i - 1]

    gates = []
    results = []
    combine = None
    # Task (lo, hi, c_lo, c_hi, m): inputs lo..hi under a budget-m node;
    # only the two end inputs may hold partial leaf counts.
    stack = [(1, n, w[0], w[n - 1], k)]
    while stack:
        task = stack.pop()
        if task is combine:
            left = results.pop()
            right = results.pop()
            gates.append((left, right))
            results.append(n + len(gates) - 1)
            continue
        lo, hi, c_lo, c_hi, m = task
        if lo == hi:
            results.append(lo - 1)
            continue
        while True:
            f_right = F[m - 2]
            base = prefix[lo - 1] + (w[lo - 1] - c_lo)
            total = prefix[hi] - base - (w[hi - 1] - c_hi)
            if total <= f_right:
                j = hi
                right_side = True
            else:
                j = bisect_left(prefix, f_right + base, lo, hi)
                c_j = c_lo if j == lo else (c_hi if j == hi else full(j))
                f = f_right - (prefix[j - 1] - base if j > lo else 0)
                right_side = f >= need[j - 1] or f == c_j
            if right_side and j == hi:
                # Nothing would be left of the boundary: keep the split
                # proper by moving the highest input to the left child.
                below = hi - 1
                right = (lo, below, c_lo, c_lo if below == lo else full(below), m - 2)
                left = (hi, hi, c_hi, c_hi, m - 1)
            elif right_side:
                right = (lo, j, c_lo if j > lo else f, f, m - 2)
                nxt = j + 1
                left = (nxt, hi, c_hi if nxt == hi else full(nxt), c_hi, m - 1)
            elif j == lo:
                # Input lo does not fit on the right; the node collapses
                # into its left child with lo's right-hand leaves dropped.
                c_lo -= f
                m -= 1
                continue
            else:
                below = j - 1
                right = (lo, below, c_lo, c_lo if below == lo else full(below), m - 2)
                rest = c_j - f
                left = (j, hi, rest, c_hi if j < hi else rest, m - 1)
            break
        stack.append(combine)
        stack.append(left)
        stack.append(right)
    return PrefixTree(n, tuple(gates), root=results.pop()), k


def synthesize_carry(a, gamma=DEFAULT_GAMMA, cap="auto"):
    """Prefix tree for ``z_n o ... o z_1`` with logic delay at most ``k``.

    Returns ``(tree, k)``. With capping enabled the construction runs on
    :func:`cap_profile` output and ``k`` is reported in the original time
    frame (shift added back).
    """
    prof = as_profile(a)
    shift = 0
    times = prof.times
    if _use_cap(cap, prof.n):
        capped, shift = cap_profile(prof, gamma)
        times = capped.times
    tree, k = _build(times)
    return tree, k + shift


def delay_upper_bound(a):
    """``floor(log_phi(sum phi**t_i)) + 4``."""
    prof = as_profile(a)
    return phi_log_bounds(prof.times)[1]


def delay_lower_bound(a):
    """``ceil(log_phi(sum phi**t_i)) - 1``, never below the latest arrival time."""
    prof = as_profile(a)
    return max(phi_log_bounds(prof.times)[0], max(prof.times))
