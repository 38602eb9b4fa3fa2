"""Side-by-side metrics for the available constructions on one profile."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .adder_synth import kogge_stone, naive_adder, serial_graph, synthesize_adder
from .carry_synth import DEFAULT_GAMMA, synthesize_carry
from .circuit import ArrivalProfile, PrefixTree, expand_to_logic, prefix_delay, stats
from .dp_oracle import DEFAULT_LIMIT, dp_logic_optimal, dp_optimal

THREADS_ENV = "PREFIX_SYNTH_THREADS"


def _dp(times, gamma, cap):
    return dp_optimal(times)[1]


def _dp_logic(times, gamma, cap):
    return dp_logic_optimal(times)[1]


def _fib(times, gamma, cap):
    return synthesize_carry(times, gamma=gamma, cap=cap)[0]


def _adder(times, gamma, cap):
    return synthesize_adder(times, gamma=gamma, cap=cap)


def _naive(times, gamma, cap):
    return naive_adder(times, gamma=gamma, cap=cap)


# name -> (builder, largest supported n or None)
CONSTRUCTIONS = {
    "serial": (lambda times, gamma, cap: serial_graph(len(times)), None),
    "kogge-stone": (lambda times, gamma, cap: kogge_stone(len(times)), None),
    "naive": (_naive, None),
    "adder": (_adder, None),
    "fib": (_fib, None),
    "dp": (_dp, DEFAULT_LIMIT),
    "dp-logic": (_dp_logic, 256),
}


@dataclass
class CompareRow:
    construction: str
    kind: str
    prefix_gates: int
    prefix_delay: int
    delay: int
    size: int
    max_fanout: int
    depth: int
    W: float

    def as_dict(self):
        return asdict(self)


def weight_bound(times):
    """``ld(sum 2**t_i)``, a lower bound on the delay of any adder."""
    return math.log2(sum(1 << t for t in times))


def check_constructions(names, n):
    for name in names:
        if name not in CONSTRUCTIONS:
            raise ValueError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")
        limit = CONSTRUCTIONS[name][1]
        if limit is not None and n > limit:
            raise ValueError(f"construction {name!r} is limited to n <= {limit}")


def _row(job):
    name, times, gamma, cap = job
    net = CONSTRUCTIONS[name][0](times, gamma, cap)
    prof = ArrivalProfile(times)
    st = stats(expand_to_logic(net), prof)
    return CompareRow(
        construction=name,
        kind="tree" if isinstance(net, PrefixTree) else "graph",
        prefix_gates=net.num_gates,
        prefix_delay=prefix_delay(net, prof),
        delay=st.delay,
        size=st.size,
        max_fanout=st.max_fanout,
        depth=st.depth,
        W=round(weight_bound(times), 6),
    )


def worker_count(jobs):
    cap = os.environ.get(THREADS_ENV)
    workers = os.cpu_count() or 1
    if cap:
        try:
            workers = min(workers, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return max(1, min(workers, jobs))


def compare(a, names, gamma=DEFAULT_GAMMA, cap="auto"):
    """One :class:`CompareRow` per name, in the order given."""
    times = a.times if isinstance(a, ArrivalProfile) else tuple(a)
    check_constructions(names, len(times))
    jobs = [(name, times, gamma, cap) for name in names]
    workers = worker_count(len(jobs))
    if workers == 1:
        return [_row(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_row, jobs))  # map keeps input order
