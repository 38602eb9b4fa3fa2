"""Delay-optimising synthesis of parallel prefix carry circuits and adders."""

__version__ = "0.1.0"

from .adder_synth import (
    AdderBounds,
    GroupPartition,
    adder_bounds,
    attach_sum_stage,
    kogge_stone,
    naive_adder,
    serial_graph,
    synthesize_adder,
)
from .carry_synth import cap_profile, delay_lower_bound, delay_upper_bound, synthesize_carry
from .circuit import (
    ArrivalProfile,
    CircuitStats,
    LogicCircuit,
    ParallelPrefixGraph,
    PrefixBuilder,
    PrefixTree,
    evaluate,
    expand_to_logic,
    logic_delay,
    prefix_delay,
    prefix_depth,
    stats,
    validate_spans,
)
from .dp_oracle import DpTable, dp_logic_optimal, dp_optimal
from .estimators import CarryBitSynthesizer, DPCarrySynthesizer, PrefixAdderSynthesizer
from .fibmath import fib, leaf_weight, min_fib_index_at_least, phi_log_bounds
from .netlist import NetlistError, from_dot, from_json, to_dot, to_json
from .verify import verify_exhaustive, verify_random

__all__ = [name for name in dir() if not name.startswith("_")]
