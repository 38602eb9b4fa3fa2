"""Prefix trees, parallel prefix graphs and gate-level logic circuits.

Index convention
----------------
Input ``z_1`` is the *least significant* position and sits at the right
end of every prefix expression ``z_n o ... o z_1``. The prefix operator
is not commutative, so every gate has a *left* operand covering higher
indices ``[m+1, hi]`` and a *right* operand covering lower indices
``[lo, m]``.

Node numbering in prefix networks: ids ``0 .. n-1`` are the inputs
(id ``i - 1`` is ``z_i``), gate ``g`` has id ``n + g``. Gates only refer
to smaller ids, so storage order is a topological order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

INPUT, AND, OR, XOR, NOT, REPEATER, OUTPUT = (
    "input", "and", "or", "xor", "not", "repeater", "output",
)
GATE_KINDS = (AND, OR, XOR, NOT, REPEATER)
NODE_KINDS = (INPUT,) + GATE_KINDS + (OUTPUT,)


@dataclass(frozen=True)
class ArrivalProfile:
    """Per-input arrival times ``t_1 .. t_n``; ``times[0]`` is ``t_1``."""

    times: tuple

    def __post_init__(self):
        times = tuple(int(t) for t in self.times)
        if not times:
            raise ValueError("arrival profile needs at least one input")
        if min(times) < 0:
            raise ValueError("arrival times must be nonnegative")
        object.__setattr__(self, "times", times)

    @classmethod
    def zeros(cls, n):
        return cls((0,) * n)

    @property
    def n(self):
        return len(self.times)

    def t(self, i):
        """Arrival time of input ``z_i`` (1-based)."""
        return self.times[i - 1]

    def __len__(self):
        return len(self.times)

    def __iter__(self):
        return iter(self.times)


def as_profile(a, n=None) -> ArrivalProfile:
    if a is None:
        if n is None:
            raise ValueError("profile required")
        return ArrivalProfile.zeros(n)
    prof = a if isinstance(a, ArrivalProfile) else ArrivalProfile(tuple(a))
    if n is not None and prof.n != n:
        raise ValueError(f"profile has {prof.n} entries, circuit has {n} inputs")
    return prof


@dataclass(frozen=True, eq=False)
class _PrefixNetwork:
    n: int
    gates: tuple
    roles: Optional[tuple] = field(default=None, kw_only=True)

    @property
    def num_gates(self):
        return len(self.gates)

    @property
    def num_nodes(self):
        return self.n + len(self.gates)

    def role(self, node_id):
        if self.roles is None or node_id < self.n:
            return None
        return self.roles[node_id - self.n]

    def output_ids(self):
        raise NotImplementedError

    def spans(self):
        """Index interval ``(lo, hi)`` of every node, assuming valid structure."""
        out = [(i + 1, i + 1) for i in range(self.n)]
        for left, right in self.gates:
            out.append((out[right][0], out[left][1]))
        return out

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.n == other.n
            and self.gates == other.gates
            and self.output_ids() == other.output_ids()
        )

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.gates, self.output_ids()))


@dataclass(frozen=True, eq=False)
class PrefixTree(_PrefixNetwork):
    """Ordered binary tree computing ``z_n o ... o z_1`` with ``n - 1`` gates."""

    root: int = 0

    def output_ids(self):
        return (self.root,)

    @classmethod
    def leaf(cls, n=1):
        if n != 1:
            raise ValueError("a single leaf tree has exactly one input")
        return cls(1, (), root=0)

    @classmethod
    def from_nested(cls, nested):
        """Build from nested pairs ``(left, right)`` with 1-based int leaves.

        ``((3, 2), 1)`` is ``(z_3 o z_2) o z_1``.
        """
        def count(node):
            return 1 if isinstance(node, int) else count(node[0]) + count(node[1])

        n = count(nested)
        gates = []

        def build(node):
            if isinstance(node, int):
                return node - 1
            lid = build(node[0])
            rid = build(node[1])
            gates.append((lid, rid))
            return n + len(gates) - 1

        root = build(nested)
        return cls(n, tuple(gates), root=root)

    def to_nested(self):
        def walk(node):
            if node < self.n:
                return node + 1
            left, right = self.gates[node - self.n]
            return (walk(left), walk(right))

        return walk(self.root)

    def leaf_order(self):
        """Input indices of the leaves, read from right to left."""
        order = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node < self.n:
                order.append(node + 1)
            else:
                left, right = self.gates[node - self.n]
                stack.append(left)
                stack.append(right)
        return order


@dataclass(frozen=True, eq=False)
class ParallelPrefixGraph(_PrefixNetwork):
    """Prefix gate DAG whose ``outputs[i - 1]`` node spans ``[1, i]``."""

    outputs: tuple = ()

    def output_ids(self):
        return self.outputs


class PrefixBuilder:
    """Incremental construction of prefix networks in topological order."""

    def __init__(self, n, times=None):
        self.n = n
        self.gates = []
        self.roles = []
        # Prefix-metric value of every node, tracked only when times are given.
        self.values = None if times is None else list(times)

    def add(self, left, right, role=None):
        self.gates.append((left, right))
        self.roles.append(role)
        if self.values is not None:
            v = self.values
            v.append(max(v[right] + 2, v[left] + 1))
        return self.n + len(self.gates) - 1

    def embed(self, tree: PrefixTree, leaf_ids: Sequence[int], role=None):
        """Copy *tree* in, wiring its input ``z_i`` to ``leaf_ids[i - 1]``."""
        if len(leaf_ids) != tree.n:
            raise ValueError("leaf id count does not match tree inputs")
        ids = list(leaf_ids)
        for left, right in tree.gates:
            ids.append(self.add(ids[left], ids[right], role))
        return ids[tree.root]

    def _roles(self):
        return tuple(self.roles) if any(r is not None for r in self.roles) else None

    def tree(self, root):
        return PrefixTree(self.n, tuple(self.gates), root=root, roles=self._roles())

    def graph(self, outputs):
        return ParallelPrefixGraph(
            self.n, tuple(self.gates), outputs=tuple(outputs), roles=self._roles()
        )


class SpanReport(NamedTuple):
    ok: bool
    node: Optional[int] = None
    message: str = ""

    def __bool__(self):
        return self.ok


def validate_spans(g) -> SpanReport:
    """Check ordering and contiguity of every gate; report the first violation."""
    n = g.n
    if n < 1:
        return SpanReport(False, None, "network has no inputs")
    spans = [(i + 1, i + 1) for i in range(n)]
    uses = [0] * g.num_nodes
    for idx, (left, right) in enumerate(g.gates):
        node = n + idx
        for p in (left, right):
            if not 0 <= p < node:
                return SpanReport(False, node, f"gate {node} refers to node {p} out of order")
        llo, lhi = spans[left]
        rlo, rhi = spans[right]
        if llo != rhi + 1:
            return SpanReport(
                False, node,
                f"gate {node}: left span [{llo},{lhi}] does not follow right span [{rlo},{rhi}]",
            )
        spans.append((rlo, lhi))
        uses[left] += 1
        uses[right] += 1
    if isinstance(g, PrefixTree):
        if not 0 <= g.root < g.num_nodes:
            return SpanReport(False, g.root, "root id out of range")
        if spans[g.root] != (1, n):
            return SpanReport(False, g.root, f"root spans {spans[g.root]}, expected (1, {n})")
        for node in range(g.num_nodes):
            if node != g.root and uses[node] != 1:
                return SpanReport(False, node, f"node {node} used {uses[node]} times in a tree")
    else:
        if len(g.outputs) != n:
            return SpanReport(False, None, f"{len(g.outputs)} outputs for {n} inputs")
        for i, node in enumerate(g.outputs, start=1):
            if not 0 <= node < g.num_nodes:
                return SpanReport(False, node, f"output {i} refers to missing node")
            if spans[node] != (1, i):
                return SpanReport(False, node, f"output {i} spans {spans[node]}, expected (1, {i})")
    return SpanReport(True)


def prefix_delay(g, a=None) -> int:
    """Prefix-metric delay: a gate costs +2 on its right input and +1 on its left."""
    prof = as_profile(a, g.n)
    val = list(prof.times)
    for left, right in g.gates:
        tl, tr = val[left], val[right]
        val.append(tr + 2 if tr + 2 > tl + 1 else tl + 1)
    return max(val)


def prefix_depth(g) -> int:
    """Number of prefix gates on the longest input-to-output path."""
    depth = [0] * g.n
    for left, right in g.gates:
        depth.append(max(depth[left], depth[right]) + 1)
    return max(depth)


class NodeView(NamedTuple):
    id: int
    kind: str
    preds: tuple
    name: str
    role: Optional[str]


_INPUT_NAME = re.compile(r"^([gp])_(\d+)$")


@dataclass(frozen=True, eq=False)
class LogicCircuit:
    """Gate-level DAG stored as parallel per-node tuples in topological order."""

    n: int
    kinds: tuple
    preds: tuple
    names: tuple
    roles: Optional[tuple] = None

    def __post_init__(self):
        m = len(self.kinds)
        if len(self.preds) != m or len(self.names) != m:
            raise ValueError("node attribute lengths differ")
        if self.roles is not None and len(self.roles) != m:
            raise ValueError("role list length differs")

    def __len__(self):
        return len(self.kinds)

    def node(self, i) -> NodeView:
        role = self.roles[i] if self.roles is not None else None
        return NodeView(i, self.kinds[i], self.preds[i], self.names[i], role)

    def __iter__(self):
        return (self.node(i) for i in range(len(self.kinds)))

    @property
    def size(self):
        return sum(1 for k in self.kinds if k != INPUT and k != OUTPUT)

    def input_ids(self):
        return [i for i, k in enumerate(self.kinds) if k == INPUT]

    def output_ids(self):
        return [i for i, k in enumerate(self.kinds) if k == OUTPUT]

    def output_names(self):
        return [self.names[i] for i in self.output_ids()]

    def input_index(self, node_id):
        """Bit position of an input node named ``g_i`` or ``p_i``."""
        m = _INPUT_NAME.match(self.names[node_id])
        if not m:
            raise ValueError(f"input node {node_id} has unrecognised name {self.names[node_id]!r}")
        return int(m.group(2))

    def __eq__(self, other):
        return (
            isinstance(other, LogicCircuit)
            and self.n == other.n
            and self.kinds == other.kinds
            and self.preds == other.preds
            and self.names == other.names
            and self.roles == other.roles
        )

    __hash__ = None

    def validate(self):
        """Raise ValueError unless the structural invariants of a logic circuit hold."""
        if not self.kinds:
            raise ValueError("empty circuit")
        fanout = [0] * len(self)
        for i, (kind, preds) in enumerate(zip(self.kinds, self.preds)):
            if kind not in NODE_KINDS:
                raise ValueError(f"node {i}: unknown kind {kind!r}")
            arity = {INPUT: (0,), OUTPUT: (1,), NOT: (1,), REPEATER: (1,)}.get(kind, (2,))
            if len(preds) not in arity:
                raise ValueError(f"node {i}: {kind} with {len(preds)} predecessors")
            for p in preds:
                if not 0 <= p < i:
                    raise ValueError(f"node {i}: predecessor {p} breaks topological order")
                if self.kinds[p] == OUTPUT:
                    raise ValueError(f"node {i}: reads from output node {p}")
                fanout[p] += 1
        for i, kind in enumerate(self.kinds):
            if kind == INPUT and fanout[i] == 0:
                raise ValueError(f"input {self.names[i]} is unused")
        return self


def _expand(g, sum_stage=False):
    n = g.n
    kinds, preds, names, roles = [], [], [], []

    def add(kind, ps, name="", role=None):
        kinds.append(kind)
        preds.append(tuple(ps))
        names.append(name)
        roles.append(role)
        return len(kinds) - 1

    sig = []
    for i in range(1, n + 1):
        gi = add(INPUT, (), f"g_{i}")
        pi = add(INPUT, (), f"p_{i}")
        sig.append((gi, pi))
    for idx, (left, right) in enumerate(g.gates):
        role = g.role(n + idx)
        gl, pl = sig[left]
        gr, pr = sig[right]
        # Gadget: A = p_l & p_r, B = p_l & g_r, C = g_l | B
        a = add(AND, (pl, pr), role=role)
        b = add(AND, (pl, gr), role=role)
        c = add(OR, (gl, b), role=role)
        sig.append((c, a))
    outs = g.output_ids()
    if sum_stage:
        if not isinstance(g, ParallelPrefixGraph):
            raise ValueError("sum stage needs a parallel prefix graph")
        # c_1 = 0, so s_1 = p_1; s_i = c_i ^ p_i; s_{n+1} = c_{n+1}
        xors = [sig[0][1]]
        for i in range(2, n + 1):
            carry = sig[outs[i - 2]][0]
            xors.append(add(XOR, (carry, sig[i - 1][1]), role="sum"))
        for i, node in enumerate(xors, start=1):
            add(OUTPUT, (node,), f"s_{i}")
        add(OUTPUT, (sig[outs[n - 1]][0],), f"s_{n + 1}")
    elif isinstance(g, PrefixTree):
        gr, pr = sig[g.root]
        add(OUTPUT, (gr,), f"c_{n + 1}")
        add(OUTPUT, (pr,), f"P_{n}")
    else:
        for i, node in enumerate(outs, start=1):
            add(OUTPUT, (sig[node][0],), f"c_{i + 1}")
            add(OUTPUT, (sig[node][1],), f"P_{i}")
    has_roles = any(r is not None for r in roles)
    return LogicCircuit(
        n, tuple(kinds), tuple(preds), tuple(names), tuple(roles) if has_roles else None
    )


def expand_to_logic(g) -> LogicCircuit:
    """Replace every prefix gate by its AND/AND/OR gadget.

    Outputs are ``c_{i+1}`` (generate half) and ``P_i`` (propagate half) for
    each prefix output, so the gate count is exactly three per prefix gate.
    """
    report = validate_spans(g)
    if not report:
        raise ValueError(f"invalid prefix network: {report.message}")
    return _expand(g)


def logic_delay(c: LogicCircuit, a=None) -> int:
    """Longest-path delay; ``g_i`` and ``p_i`` both arrive at ``t_i``."""
    prof = as_profile(a, c.n)
    times = prof.times
    val = [0] * len(c.kinds)
    best = 0
    for i, kind in enumerate(c.kinds):
        ps = c.preds[i]
        if kind == INPUT:
            val[i] = times[c.input_index(i) - 1]
        elif kind == OUTPUT:
            val[i] = val[ps[0]]
            if val[i] > best:
                best = val[i]
        elif len(ps) == 2:
            x, y = val[ps[0]], val[ps[1]]
            val[i] = (x if x > y else y) + 1
        else:
            val[i] = val[ps[0]] + 1
    return best


@dataclass(frozen=True)
class CircuitStats:
    delay: int
    size: int
    max_fanout: int
    depth: int


def stats(c: LogicCircuit, a=None) -> CircuitStats:
    """Size, maximum out-degree, gate depth, and delay (at zero arrival if *a* is None)."""
    fanout = [0] * len(c.kinds)
    depth = [0] * len(c.kinds)
    deepest = 0
    for i, kind in enumerate(c.kinds):
        ps = c.preds[i]
        for p in ps:
            fanout[p] += 1
        if kind == INPUT:
            continue
        d = max(depth[p] for p in ps)
        if kind != OUTPUT:
            d += 1
        depth[i] = d
        if d > deepest:
            deepest = d
    return CircuitStats(
        delay=logic_delay(c, a) if a is not None else max((depth[i] for i in c.output_ids()), default=0),
        size=c.size,
        max_fanout=max(fanout, default=0),
        depth=deepest,
    )


def evaluate(c: LogicCircuit, assignment, width=None):
    """Simulate the circuit.

    *assignment* maps input names to ints. Each int may pack many
    independent evaluations as bit lanes; *width* is the lane count (needed
    for NOT). Returns a dict from output name to packed result.
    """
    missing = [c.names[i] for i in c.input_ids() if c.names[i] not in assignment]
    if missing:
        raise ValueError(f"unassigned inputs: {', '.join(missing[:8])}")
    if width is None:
        width = max([1] + [int(v).bit_length() for v in assignment.values()])
    mask = (1 << width) - 1
    val = [0] * len(c.kinds)
    result = {}
    for i, kind in enumerate(c.kinds):
        ps = c.preds[i]
        if kind == INPUT:
            val[i] = int(assignment[c.names[i]]) & mask
        elif kind == AND:
            val[i] = val[ps[0]] & val[ps[1]]
        elif kind == OR:
            val[i] = val[ps[0]] | val[ps[1]]
        elif kind == XOR:
            val[i] = val[ps[0]] ^ val[ps[1]]
        elif kind == NOT:
            val[i] = ~val[ps[0]] & mask
        elif kind == REPEATER:
            val[i] = val[ps[0]]
        elif kind == OUTPUT:
            val[i] = val[ps[0]]
            result[c.names[i]] = val[i]
        else:
            raise ValueError(f"node {i}: cannot evaluate kind {kind!r}")
    return result
