"""Exact Fibonacci arithmetic and golden-ratio logarithms.

Everything here works on Python integers. Powers of the golden ratio are
kept in the exact form ``a * phi + b`` (``phi**m == F(m) * phi + F(m - 1)``),
so comparisons against sums of phi-powers never touch floating point.
"""

import math
import threading
from bisect import bisect_left
from fractions import Fraction

PHI = (1 + math.sqrt(5)) / 2

_table = [0, 1]
_lock = threading.Lock()


def _extend(k):
    with _lock:
        t = _table
        while len(t) <= k:
            t.append(t[-1] + t[-2])


def fib(k):
    """Return the k-th Fibonacci number, F(0) = 0, F(1) = 1."""
    if k < 0:
        raise ValueError(f"index must be nonnegative, got {k}")
    if k >= len(_table):
        _extend(k)
    return _table[k]


def fib_table(k):
    """Return a list holding at least F(0)..F(k).

    The list is the shared cache; callers must not mutate it.
    """
    if k >= len(_table):
        _extend(k)
    return _table


def leaf_weight(t):
    """Leaves of the Fibonacci skeleton reserved for an input arriving at *t*."""
    if t < 0:
        raise ValueError(f"arrival time must be nonnegative, got {t}")
    return fib(t + 3) - 1


def min_fib_index_at_least(x):
    """Smallest k >= 2 with F(k) >= x.

    The tie F(1) == F(2) resolves to 2, which is the smallest budget that
    describes a real (one-leaf) tree.
    """
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    # F(k) >= 2**((k - 2) / 1.45) keeps the guess close without overshooting much.
    guess = int(1.45 * x.bit_length()) + 3
    table = fib_table(guess)
    while table[-1] < x:
        _extend(len(table) + 16)
        table = _table
    return bisect_left(table, x, 2)


def _sign_phi_linear(x, y):
    """Sign of ``x * phi + y`` for integers x, y, computed exactly."""
    # x*phi + y = ((x + 2y) + x*sqrt(5)) / 2
    u, v = x + 2 * y, x
    if u >= 0 and v >= 0:
        return 0 if (u == 0 and v == 0) else 1
    if u <= 0 and v <= 0:
        return -1
    d = u * u - 5 * v * v
    if u > 0:
        return (d > 0) - (d < 0)
    return (d < 0) - (d > 0)


def phi_power(m):
    """Return (a, b) with ``phi**m == a * phi + b`` for m >= 0."""
    if m == 0:
        return 0, 1
    return fib(m), fib(m - 1)


def phi_power_sum(times):
    """Exact ``sum(phi**t for t in times)`` as a pair (a, b) meaning a*phi + b."""
    top = max(times)
    table = fib_table(top + 1)
    a = b = 0
    for t in times:
        if t == 0:
            b += 1
        else:
            a += table[t]
            b += table[t - 1]
    return a, b


def compare_phi_power(a, b, m):
    """Sign of ``(a*phi + b) - phi**m``."""
    pa, pb = phi_power(m)
    return _sign_phi_linear(a - pa, b - pb)


def _log_floor_ceil(a, b, guess):
    # Walk from the float guess to the exact bracket phi**m <= S < phi**(m+1).
    m = max(guess, 0)
    while m > 0 and compare_phi_power(a, b, m) < 0:
        m -= 1
    while compare_phi_power(a, b, m + 1) >= 0:
        m += 1
    exact = compare_phi_power(a, b, m) == 0
    return m, (m if exact else m + 1)


def log_phi_floor_ceil(times):
    """Exact floor and ceiling of ``log_phi(sum(phi**t for t in times))``."""
    if not times:
        raise ValueError("need at least one arrival time")
    a, b = phi_power_sum(times)
    guess = max(times) + int(math.log(len(times)) / math.log(PHI))
    return _log_floor_ceil(a, b, guess)


def log_phi_sum(times):
    """Float value of ``log_phi(sum(phi**t))``; integer part is exact."""
    floor, _ = log_phi_floor_ceil(times)
    a, b = phi_power_sum(times)
    pa, pb = phi_power(floor)
    if a == 0:
        # All arrival times are zero: the sum is an integer.
        return math.log(b) / math.log(PHI)
    if pa == 0:
        ratio = a * PHI + b
    else:
        # (a*phi + b) / (pa*phi + pb) without converting huge ints to float
        ratio = (a / pa) * (PHI + b / a) / (PHI + pb / pa)
    return floor + math.log(ratio) / math.log(PHI)


def phi_log_bounds(times):
    """Delay window for a single carry bit over arrival *times*.

    Returns ``(lower, upper)`` where ``lower = ceil(L) - 1`` clamped at 0 and
    ``upper = floor(L) + 4`` with ``L = log_phi(sum(phi**t))``.
    """
    floor, ceil = log_phi_floor_ceil(times)
    return max(ceil - 1, 0), floor + 4


def ceil_gamma_log_phi(gamma, n):
    """Exact ``ceil(gamma * log_phi(n))`` for rational gamma > 0 and n >= 1."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    g = Fraction(gamma).limit_denominator(1000)
    if g <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    # m >= g*log_phi(n)  <=>  phi**(m*q) >= n**p
    p, q = g.numerator, g.denominator
    target = n**p
    m = max(int(float(g) * math.log(n) / math.log(PHI)) - 1, 0)
    while m > 0 and _sign_phi_linear(*_minus(phi_power((m - 1) * q), target)) >= 0:
        m -= 1
    while _sign_phi_linear(*_minus(phi_power(m * q), target)) < 0:
        m += 1
    return m


def _minus(pair, integer):
    a, b = pair
    return a, b - integer
