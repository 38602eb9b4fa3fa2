"""Bit-parallel functional checks against independent oracles.

Adders (outputs ``s_i``) are compared with integer addition of the
operands; carry networks (outputs ``c_i`` / ``P_i``) with the ripple
recursion ``c_{i+1} = g_i | (p_i & c_i)``. Many test vectors are packed
into one Python int per signal, one bit lane per vector.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .circuit import LogicCircuit, evaluate

EXHAUSTIVE_LIMIT = 12
CHUNK_BITS = 16

_OUT = re.compile(r"^([scP])_(\d+)$")


@dataclass
class VerifyReport:
    passed: bool
    mode: str
    checked: int
    seed: Optional[int] = None
    counterexample: Optional[dict] = field(default=None)

    def lines(self):
        out = [
            f"result={'pass' if self.passed else 'fail'}",
            f"mode={self.mode}",
            f"vectors={self.checked}",
        ]
        if self.seed is not None:
            out.append(f"seed={self.seed}")
        if self.counterexample:
            for key, val in self.counterexample.items():
                out.append(f"counterexample.{key}={val}")
        return out


def circuit_kind(c: LogicCircuit):
    """``'adder'`` when the outputs are sum bits, else ``'carry'``."""
    names = c.output_names()
    if names and all(name.startswith("s_") for name in names):
        return "adder"
    for name in names:
        if not _OUT.match(name) or name.startswith("s_"):
            raise ValueError(f"unrecognised output {name!r}")
    return "carry"


def _pack(bits):
    """Pack a 0/1 uint8 array into an int, element 0 in the lowest bit."""
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _unpack_rows(values, nbits):
    """Matrix of little-endian bits, one row per nonnegative int in *values*."""
    nbytes = (nbits + 7) // 8
    raw = b"".join(v.to_bytes(nbytes, "little") for v in values)
    arr = np.frombuffer(raw, dtype=np.uint8).reshape(len(values), nbytes)
    return np.unpackbits(arr, axis=1, bitorder="little")[:, :nbits]


def _columns(rows):
    """Lane-packed int for every column of a bit matrix."""
    return [_pack(np.ascontiguousarray(rows[:, j])) for j in range(rows.shape[1])]


def _first_lane(diff):
    return (diff & -diff).bit_length() - 1


def ripple_reference(g, p, n, mask):
    """Carries ``c_2..c_{n+1}`` and prefix ANDs ``P_1..P_n`` from packed lanes."""
    out = {}
    carry = 0
    prod = mask
    for i in range(1, n + 1):
        carry = g[i - 1] | (p[i - 1] & carry)
        prod &= p[i - 1]
        out[f"c_{i + 1}"] = carry
        out[f"P_{i}"] = prod
    return out


def _check_lanes(c, assignment, expected, width):
    got = evaluate(c, assignment, width)
    for name in sorted(got, key=_output_order):
        diff = got[name] ^ expected[name]
        if diff:
            return name, _first_lane(diff), (got[name] >> _first_lane(diff)) & 1
    return None


def _output_order(name):
    m = _OUT.match(name)
    return (m.group(1), int(m.group(2))) if m else (name, 0)


def _adder_block(c, n, a_vals, b_vals):
    """Check one block of operand pairs given as lists of ints."""
    m = len(a_vals)
    mask = (1 << m) - 1
    a_cols = _columns(_unpack_rows(a_vals, n))
    b_cols = _columns(_unpack_rows(b_vals, n))
    s_cols = _columns(_unpack_rows([x + y for x, y in zip(a_vals, b_vals)], n + 1))
    assignment = {}
    for i in range(1, n + 1):
        assignment[f"g_{i}"] = a_cols[i - 1] & b_cols[i - 1]
        assignment[f"p_{i}"] = a_cols[i - 1] ^ b_cols[i - 1]
    expected = {f"s_{i}": s_cols[i - 1] for i in range(1, n + 2)}
    bad = _check_lanes(c, assignment, expected, m)
    if bad is None:
        return None
    name, lane, got = bad
    a, b = a_vals[lane], b_vals[lane]
    return {"A": a, "B": b, "expected": a + b, "output": name, "got_bit": got}


def _carry_block(c, n, g_cols, p_cols, width, describe):
    mask = (1 << width) - 1
    assignment = {}
    for i in range(1, n + 1):
        assignment[f"g_{i}"] = g_cols[i - 1]
        assignment[f"p_{i}"] = p_cols[i - 1]
    ref = ripple_reference(g_cols, p_cols, n, mask)
    expected = {name: ref[name] for name in c.output_names()}
    bad = _check_lanes(c, assignment, expected, width)
    if bad is None:
        return None
    name, lane, got = bad
    info = describe(lane)
    info.update(output=name, got_bit=got)
    return info


def _lane_bits(start, size, bit):
    lanes = np.arange(start, start + size, dtype=np.int64)
    return _pack(((lanes >> bit) & 1).astype(np.uint8))


def verify_exhaustive(c: LogicCircuit) -> VerifyReport:
    """Every operand pair (adders) or every g/p assignment (carry networks)."""
    n = c.n
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive mode is limited to n <= {EXHAUSTIVE_LIMIT}, got {n}")
    kind = circuit_kind(c)
    total = 1 << (2 * n)
    block = min(total, 1 << CHUNK_BITS)
    for start in range(0, total, block):
        if kind == "adder":
            lanes = range(start, start + block)
            a_vals = [x & ((1 << n) - 1) for x in lanes]
            b_vals = [x >> n for x in lanes]
            bad = _adder_block(c, n, a_vals, b_vals)
        else:
            # lane x assigns g_i = bit 2(i-1) of x and p_i = bit 2(i-1)+1
            g_cols = [_lane_bits(start, block, 2 * i) for i in range(n)]
            p_cols = [_lane_bits(start, block, 2 * i + 1) for i in range(n)]

            def describe(lane, start=start):
                x = start + lane
                return {
                    "g": "".join(str((x >> (2 * i)) & 1) for i in reversed(range(n))),
                    "p": "".join(str((x >> (2 * i + 1)) & 1) for i in reversed(range(n))),
                }

            bad = _carry_block(c, n, g_cols, p_cols, block, describe)
        if bad is not None:
            return VerifyReport(False, "exhaustive", start + block, counterexample=bad)
    return VerifyReport(True, "exhaustive", total)


def verify_random(c: LogicCircuit, count=10_000, seed=0, block=1 << 14) -> VerifyReport:
    """*count* seeded random vectors, checked in blocks."""
    n = c.n
    kind = circuit_kind(c)
    rng = np.random.default_rng(seed)
    done = 0
    while done < count:
        m = min(block, count - done)
        if kind == "adder":
            a_vals = [int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1) for _ in range(m)]
            b_vals = [int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1) for _ in range(m)]
            bad = _adder_block(c, n, a_vals, b_vals)
        else:
            bits = rng.integers(0, 2, size=(m, 2 * n), dtype=np.uint8)
            g_cols = _columns(bits[:, 0::2])
            p_cols = _columns(bits[:, 1::2])

            def describe(lane, bits=bits):
                row = bits[lane]
                return {
                    "g": "".join(str(int(row[2 * i])) for i in reversed(range(n))),
                    "p": "".join(str(int(row[2 * i + 1])) for i in reversed(range(n))),
                }

            bad = _carry_block(c, n, g_cols, p_cols, m, describe)
        done += m
        if bad is not None:
            return VerifyReport(False, "random", done, seed, bad)
    return VerifyReport(True, "random", done, seed)
