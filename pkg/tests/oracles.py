"""Independent reference implementations used only by the tests.

Nothing here imports the algorithms under test; each oracle recomputes its
quantity from first principles (enumeration, high-precision floats, scalar
simulation, plain integer addition).
"""

from functools import lru_cache
import itertools

import mpmath
import numpy as np

mpmath.mp.dps = 60
PHI_MP = (1 + mpmath.sqrt(5)) / 2


def fib_naive(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def log_phi_mp(times):
    return mpmath.log(mpmath.fsum(PHI_MP ** t for t in times)) / mpmath.log(PHI_MP)


def log_phi_floor_ceil_mp(times):
    x = log_phi_mp(times)
    fl = int(mpmath.floor(x))
    # exact integers come out as k +- 1e-58; snap them
    if abs(x - mpmath.nint(x)) < mpmath.mpf(10) ** -40:
        fl = int(mpmath.nint(x))
        return fl, fl
    return fl, fl + 1


@lru_cache(maxsize=None)
def bracket_costs(n):
    """Distinct per-leaf cost vectors over all bracketings of ``n`` inputs.

    In the prefix metric a leaf's contribution is its arrival time plus 2 for
    every right edge and 1 for every left edge on its path to the root, so a
    bracketing's delay is ``max_i(t_i + cost_i)``. Position 0 is input 1.
    """
    if n == 1:
        return frozenset({(0,)})
    out = set()
    for r in range(1, n):  # right child covers inputs 1..r
        for rc in bracket_costs(r):
            for lc in bracket_costs(n - r):
                out.add(tuple(c + 2 for c in rc) + tuple(c + 1 for c in lc))
    return frozenset(out)


@lru_cache(maxsize=None)
def cost_matrix(n):
    return np.array(sorted(bracket_costs(n)), dtype=np.int16)


def brute_prefix_optimum(profiles):
    """Optimal prefix-metric delay for each row of an (m, n) integer matrix."""
    profiles = np.asarray(profiles)
    m, n = profiles.shape
    costs = cost_matrix(n)
    # small values fit int8, which keeps the broadcast cheap
    dtype = np.int8 if profiles.max(initial=0) + costs.max(initial=0) < 127 else np.int32
    profiles = profiles.astype(dtype)
    costs = costs.astype(dtype)
    best = np.empty(m, dtype=dtype)
    rows = max(1, 16_000_000 // max(1, len(costs)))
    for s in range(0, m, rows):
        block = profiles[s:s + rows]
        # (rows, shapes) running max over leaves, one leaf column at a time
        acc = block[:, 0:1] + costs[None, :, 0]
        for i in range(1, n):
            np.maximum(acc, block[:, i:i + 1] + costs[None, :, i], out=acc)
        best[s:s + rows] = acc.min(axis=1)
    return best


def all_bracketings(lo, hi):
    """Nested ``(left, right)`` tuples over 1-based inputs lo..hi."""
    if lo == hi:
        yield lo
        return
    for mid in range(lo, hi):
        for right in all_bracketings(lo, mid):
            for left in all_bracketings(mid + 1, hi):
                yield (left, right)


def gadget_logic_delay(nested, times):
    """Logic delay of the AND/OR gadget expansion, as (g_arrival, p_arrival)."""
    if isinstance(nested, int):
        t = times[nested - 1]
        return t, t
    gl, pl = gadget_logic_delay(nested[0], times)
    gr, pr = gadget_logic_delay(nested[1], times)
    b = max(pl, gr) + 1
    return max(gl, b) + 1, max(pl, pr) + 1


def brute_logic_optimum(times):
    n = len(times)
    best = None
    for nested in all_bracketings(1, n):
        g, p = gadget_logic_delay(nested, times)
        d = max(g, p) if n > 1 else times[0]
        best = d if best is None else min(best, d)
    return best


def simulate_scalar(circuit, values):
    """Evaluate a LogicCircuit on one assignment ``{input name: 0/1}``."""
    val = []
    for kind, preds, name in zip(circuit.kinds, circuit.preds, circuit.names):
        if kind == "input":
            val.append(values[name])
        elif kind == "and":
            val.append(val[preds[0]] & val[preds[1]])
        elif kind == "or":
            val.append(val[preds[0]] | val[preds[1]])
        elif kind == "xor":
            val.append(val[preds[0]] ^ val[preds[1]])
        elif kind == "not":
            val.append(1 - val[preds[0]])
        else:  # repeater, output
            val.append(val[preds[0]])
    return {name: val[i] for i, (kind, name) in enumerate(zip(circuit.kinds, circuit.names)) if kind == "output"}


def ripple(g, p):
    """Carries c_2..c_{n+1} and products P_1..P_n for one scalar vector."""
    out = {}
    c, prod = 0, 1
    for i, (gi, pi) in enumerate(zip(g, p), start=1):
        c = gi | (pi & c)
        prod &= pi
        out[f"c_{i + 1}"] = c
        out[f"P_{i}"] = prod
    return out


def adder_inputs(a, b, n):
    vals = {}
    for i in range(n):
        ai, bi = (a >> i) & 1, (b >> i) & 1
        vals[f"g_{i + 1}"] = ai & bi
        vals[f"p_{i + 1}"] = ai ^ bi
    return vals


def sum_from_outputs(out, n):
    return sum(out[f"s_{i + 1}"] << i for i in range(n + 1))


def all_profiles(n, t_max):
    """Every profile in {0..t_max}^n as an (m, n) int array."""
    return np.array(list(itertools.product(range(t_max + 1), repeat=n)), dtype=np.int32)
