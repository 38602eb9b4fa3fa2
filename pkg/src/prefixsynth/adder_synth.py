"""Parallel prefix adders: the recursive square-root grouping and baselines."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .carry_synth import DEFAULT_GAMMA, synthesize_carry
from .circuit import (
    LogicCircuit,
    ParallelPrefixGraph,
    PrefixBuilder,
    _expand,
    as_profile,
    validate_spans,
)
from .fibmath import log_phi_sum

GROUP, RECURSION, COMBINE = "group", "recursion", "combine"


@dataclass(frozen=True)
class GroupPartition:
    """Consecutive groups of 0-based positions; group sizes differ by at most one."""

    l: int
    groups: tuple

    @classmethod
    def of(cls, n):
        l = math.isqrt(n - 1) + 1 if n > 1 else 1  # ceil(sqrt(n))
        base, extra = divmod(n, l)
        groups = []
        start = 0
        for g in range(l):
            size = base + (1 if g < extra else 0)
            groups.append(tuple(range(start, start + size)))
            start += size
        return cls(l, tuple(groups))


def _serial(b, ids, role):
    out = [ids[0]]
    for node in ids[1:]:
        out.append(b.add(node, out[-1], role))
    return out


def _adder(b, ids, gamma, cap, role=None):
    """Add gates computing every prefix of *ids*; return the prefix node ids."""
    n = len(ids)
    if n <= 3:
        return _serial(b, ids, role)
    values = b.values
    part = GroupPartition.of(n)
    z = []
    for group in part.groups:
        members = [ids[i] for i in group]
        if len(members) == 1:
            z.append(members[0])
            continue
        tree, _ = synthesize_carry([values[m] for m in members], gamma=gamma, cap=cap)
        z.append(b.embed(tree, members, role or GROUP))
    inner = role or RECURSION
    group_prefixes = [
        _adder(b, [ids[i] for i in group[:-1]], gamma, cap, inner) if len(group) > 1 else []
        for group in part.groups
    ]
    z_prefix = _adder(b, z[:-1], gamma, cap, inner)
    last = role or COMBINE
    out = list(group_prefixes[0]) + [z[0]]
    for g in range(1, part.l):
        carry_in = z_prefix[g - 1]
        for node in group_prefixes[g]:
            out.append(b.add(node, carry_in, last))
        out.append(z_prefix[g] if g < part.l - 1 else b.add(z[g], carry_in, last))
    return out


def synthesize_adder(a, gamma=DEFAULT_GAMMA, cap="auto") -> ParallelPrefixGraph:
    """Parallel prefix graph with all carries, built by recursive sqrt(n) grouping.

    Group aggregates come from :func:`synthesize_carry`; group prefixes and
    the prefixes of the aggregates are built recursively, with each
    aggregate entering the recursion at its prefix-metric delay.
    """
    prof = as_profile(a)
    b = PrefixBuilder(prof.n, prof.times)
    outputs = _adder(b, list(range(prof.n)), gamma, cap)
    return b.graph(outputs)


def serial_graph(n) -> ParallelPrefixGraph:
    """Ripple chain: output i is ``z_i o (output i-1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    b = PrefixBuilder(n)
    return b.graph(_serial(b, list(range(n)), None))


def kogge_stone(n) -> ParallelPrefixGraph:
    """Kogge-Stone graph; for non-power-of-two n the spans clip at index 1."""
    if n < 1:
        raise ValueError("n must be positive")
    b = PrefixBuilder(n)
    cur = list(range(n))
    dist = 1
    while dist < n:
        cur = [cur[i] if i < dist else b.add(cur[i], cur[i - dist]) for i in range(n)]
        dist *= 2
    return b.graph(cur)


def naive_adder(a, gamma=DEFAULT_GAMMA, cap="auto") -> ParallelPrefixGraph:
    """One independent carry tree per output; nothing is shared between outputs."""
    prof = as_profile(a)
    b = PrefixBuilder(prof.n)
    outputs = [0]
    for i in range(2, prof.n + 1):
        tree, _ = synthesize_carry(prof.times[:i], gamma=gamma, cap=cap)
        outputs.append(b.embed(tree, list(range(i))))
    return b.graph(outputs)


def attach_sum_stage(g: ParallelPrefixGraph) -> LogicCircuit:
    """Expand *g* and add ``s_i = c_i ^ p_i`` (carry-in is 0, so ``s_1 = p_1``)."""
    report = validate_spans(g)
    if not report:
        raise ValueError(f"invalid prefix graph: {report.message}")
    return _expand(g, sum_stage=True)


@dataclass(frozen=True)
class AdderBounds:
    delay_bound: float
    size_bound: Optional[int]  # logic gates; None when n < 3
    prefix_size_bound: Optional[int]
    fanout_floor: int


def ld_ld(n):
    return math.log2(math.log2(n))


def adder_bounds(a) -> AdderBounds:
    """Delay and size guarantees of :func:`synthesize_adder` for profile *a*.

    The delay bound is ``log_phi(sum phi**t) + 5 ld ld n + 4.5``; for a
    single input it is just that input's arrival time. Size bounds are
    ``6 n ld ld n`` logic gates and ``2 n ld ld n`` prefix gates (n >= 3).
    """
    prof = as_profile(a)
    n = prof.n
    if n == 1:
        delay = float(prof.times[0])
    else:
        delay = log_phi_sum(prof.times) + 5 * ld_ld(n) + 4.5
    if n >= 3:
        size, psize = math.floor(6 * n * ld_ld(n)), math.floor(2 * n * ld_ld(n))
    else:
        size = psize = None
    return AdderBounds(delay, size, psize, math.isqrt(n - 1) + 1 if n > 1 else 1)
