"""``prefixsynth`` command line.

Reports are ``key=value`` lines on stdout (or one JSON object with
``--json``). Exit status: 0 success, 1 verification failure, 2 invalid
input, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .adder_synth import adder_bounds, attach_sum_stage, synthesize_adder
from .carry_synth import DEFAULT_GAMMA, _use_cap, delay_lower_bound, delay_upper_bound, fibonacci_budget, synthesize_carry
from .circuit import ArrivalProfile, LogicCircuit, ParallelPrefixGraph, expand_to_logic, prefix_delay, stats
from .compare import CONSTRUCTIONS, compare
from .netlist import NetlistError, load, to_dot, to_json
from .validation import check_arrival_times
from .verify import EXHAUSTIVE_LIMIT, verify_exhaustive, verify_random

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3
GENERATORS = ("uniform", "staircase-up", "staircase-down", "random")


class InputError(ValueError):
    pass


def generate_profile(name, n, seed=None, max_t=8):
    """Named profile generators; ``t_1`` comes first."""
    if n is None or n < 1:
        raise InputError("generators need --n >= 1")
    if name == "uniform":
        return tuple([0] * n)
    if name == "staircase-up":
        return tuple(range(n))
    if name == "staircase-down":
        return tuple(range(n - 1, -1, -1))
    if name == "random":
        if max_t < 0:
            raise InputError("--max-t must be nonnegative")
        rng = np.random.default_rng(seed)
        return tuple(int(t) for t in rng.integers(0, max_t + 1, size=n))
    raise InputError(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")


def parse_profile_text(text):
    text = text.strip()
    if text.startswith("["):
        try:
            values = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON profile: {exc}") from exc
    else:
        values = []
        for tok in text.replace(",", " ").split():
            try:
                values.append(int(tok))
            except ValueError:
                raise InputError(f"bad arrival time {tok!r}") from None
    try:
        return check_arrival_times(values)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def resolve_profile(args):
    """Return ``(ArrivalProfile, seed_or_None)`` from the profile options."""
    sources = [args.profile is not None, args.profile_file is not None, args.gen is not None]
    if sum(sources) != 1:
        raise InputError("give exactly one of PROFILE, --profile-file, --gen")
    seed = None
    if args.profile is not None:
        times = parse_profile_text(args.profile)
    elif args.profile_file is not None:
        with open(args.profile_file, encoding="utf-8") as fh:
            times = parse_profile_text(fh.read())
    else:
        if args.gen == "random":
            seed = 0 if args.seed is None else args.seed
        times = generate_profile(args.gen, args.n, seed, args.max_t)
    return ArrivalProfile(times), seed


def _emit_text(obj, fmt, profile):
    return to_dot(obj, profile) if fmt == "dot" else to_json(obj, profile)


def _choose_format(args):
    if args.emit:
        return args.emit
    if args.out and args.out.endswith(".dot"):
        return "dot"
    return "json"


def write_netlist(obj, args, profile=None):
    """Write to ``--out``; ``-`` means stdout. Returns the destination or None."""
    if not args.out:
        return None
    text = _emit_text(obj, _choose_format(args), profile)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return args.out


def print_report(record, args):
    stream = sys.stderr if getattr(args, "out", None) == "-" else sys.stdout
    if args.json:
        print(json.dumps(record, sort_keys=False), file=stream)
        return
    for key, val in record.items():
        if isinstance(val, bool):
            val = str(val).lower()
        elif val is None:
            val = "none"
        print(f"{key}={val}", file=stream)


def _base_record(kind, prof, seed):
    rec = {"command": kind, "n": prof.n}
    if seed is not None:
        rec["seed"] = seed
    return rec


def cmd_synth_carry(args):
    prof, seed = resolve_profile(args)
    tree, k = synthesize_carry(prof, gamma=args.gamma, cap=args.cap)
    circuit = expand_to_logic(tree)
    st = stats(circuit, prof)
    total, _ = fibonacci_budget(prof.times)
    rec = _base_record("synth-carry", prof, seed)
    rec.update(
        capped=_use_cap(args.cap, prof.n),
        total_weight=total,
        k=k,
        delay=st.delay,
        prefix_delay=prefix_delay(tree, prof),
        lower_bound=delay_lower_bound(prof),
        upper_bound=delay_upper_bound(prof),
        size=st.size,
        prefix_gates=tree.num_gates,
        max_fanout=st.max_fanout,
        depth=st.depth,
    )
    out = write_netlist(tree if args.netlist == "prefix" else circuit, args, prof.times)
    if out:
        rec["out"] = out
    print_report(rec, args)
    return EXIT_OK


def cmd_synth_adder(args):
    prof, seed = resolve_profile(args)
    graph = synthesize_adder(prof, gamma=args.gamma, cap=args.cap)
    carries = expand_to_logic(graph)
    st = stats(carries, prof)
    bounds = adder_bounds(prof)
    rec = _base_record("synth-adder", prof, seed)
    rec.update(
        delay=st.delay,
        prefix_delay=prefix_delay(graph, prof),
        delay_bound=round(bounds.delay_bound, 6),
        within_delay_bound=st.delay <= bounds.delay_bound,
        size=st.size,
        size_bound=bounds.size_bound,
        prefix_gates=graph.num_gates,
        prefix_size_bound=bounds.prefix_size_bound,
        max_fanout=st.max_fanout,
        fanout_floor=bounds.fanout_floor,
        depth=st.depth,
    )
    for role in ("group", "recursion", "combine"):
        rec[f"gates.{role}"] = sum(1 for g in range(graph.num_gates) if graph.role(prof.n + g) == role)
    written = carries
    if args.with_sum_stage:
        written = attach_sum_stage(graph)
        full = stats(written, prof)
        rec.update(sum_delay=full.delay, sum_size=full.size)
    if args.netlist == "prefix":
        written = graph
    out = write_netlist(written, args, prof.times)
    if out:
        rec["out"] = out
    print_report(rec, args)
    return EXIT_OK


_COLUMNS = ("construction", "kind", "prefix_gates", "prefix_delay", "delay", "size", "max_fanout", "depth", "W")


def cmd_compare(args):
    prof, seed = resolve_profile(args)
    names = [s.strip() for s in args.constructions.split(",") if s.strip()]
    if not names:
        raise InputError("no constructions given")
    try:
        rows = compare(prof, names, gamma=args.gamma, cap=args.cap)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        rec = _base_record("compare", prof, seed)
        rec["rows"] = [r.as_dict() for r in rows]
        print(json.dumps(rec))
        return EXIT_OK
    head = _base_record("compare", prof, seed)
    for key, val in head.items():
        print(f"{key}={val}")
    table = [list(_COLUMNS)] + [[str(getattr(r, c)) for c in _COLUMNS] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(_COLUMNS))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return EXIT_OK


def _as_circuit(obj, sum_stage=False):
    if isinstance(obj, LogicCircuit):
        if sum_stage:
            raise InputError("--with-sum-stage needs a prefix graph netlist")
        return obj
    if sum_stage:
        if not isinstance(obj, ParallelPrefixGraph):
            raise InputError("--with-sum-stage needs a prefix graph netlist")
        return attach_sum_stage(obj)
    return expand_to_logic(obj)


def cmd_verify(args):
    obj, _ = load(args.netlist_file)
    circuit = _as_circuit(obj)
    mode = args.mode or ("exhaustive" if circuit.n <= EXHAUSTIVE_LIMIT else "random")
    if mode == "exhaustive":
        if circuit.n > EXHAUSTIVE_LIMIT:
            raise InputError(f"exhaustive mode is limited to n <= {EXHAUSTIVE_LIMIT}, got n={circuit.n}")
        report = verify_exhaustive(circuit)
    else:
        report = verify_random(circuit, count=args.count, seed=args.seed)
    lines = [f"command=verify", f"n={circuit.n}"] + report.lines()
    if args.json:
        rec = dict(line.split("=", 1) for line in lines)
        print(json.dumps(rec))
    else:
        print("\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_export(args):
    obj, profile = load(args.netlist_file)
    if args.expand or args.with_sum_stage:
        obj = _as_circuit(obj, args.with_sum_stage)
    fmt = _choose_format(args)
    text = _emit_text(obj, fmt, profile)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _profile_options(p):
    p.add_argument("profile", nargs="?", help="inline arrival times, t_1 first, e.g. 0,1,0")
    p.add_argument("--profile-file", help="file with arrival times (comma/space separated or a JSON list)")
    p.add_argument("--gen", choices=GENERATORS, help="generate a profile instead")
    p.add_argument("--n", type=int, help="number of inputs for --gen")
    p.add_argument("--seed", type=int, help="seed for --gen random (default 0)")
    p.add_argument("--max-t", type=int, default=8, help="largest arrival time for --gen random")


def _synth_options(p):
    p.add_argument("--cap", choices=("auto", "on", "off"), default="auto")
    p.add_argument("--gamma", type=float, default=DEFAULT_GAMMA)


def _output_options(p, netlist=True):
    p.add_argument("--emit", choices=("json", "dot"))
    p.add_argument("--out", help="netlist destination; '-' for stdout")
    if netlist:
        p.add_argument("--netlist", choices=("logic", "prefix"), default="logic",
                       help="write the gate-level circuit or the prefix network")


def build_parser():
    parser = argparse.ArgumentParser(prog="prefixsynth", description="Delay-driven prefix carry and adder synthesis.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth-carry", help="synthesize a single carry bit")
    _profile_options(p)
    _synth_options(p)
    _output_options(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_synth_carry)

    p = sub.add_parser("synth-adder", help="synthesize a full prefix adder")
    _profile_options(p)
    _synth_options(p)
    _output_options(p)
    p.add_argument("--with-sum-stage", action="store_true", help="add the XOR sum outputs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_synth_adder)

    p = sub.add_parser("compare", help="tabulate constructions on one profile")
    _profile_options(p)
    _synth_options(p)
    p.add_argument("--constructions", default="serial,kogge-stone,naive,adder,fib,dp",
                   help=f"comma-separated subset of: {', '.join(CONSTRUCTIONS)}")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="simulate a netlist against a reference")
    p.add_argument("netlist_file")
    p.add_argument("--mode", choices=("exhaustive", "random"))
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="convert or expand a netlist")
    p.add_argument("netlist_file")
    _output_options(p, netlist=False)
    p.add_argument("--expand", action="store_true", help="expand prefix gates to logic gates")
    p.add_argument("--with-sum-stage", action="store_true", help="expand a prefix graph with sum outputs")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"prefixsynth: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InputError, NetlistError, ValueError, TypeError) as exc:
        print(f"prefixsynth: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
