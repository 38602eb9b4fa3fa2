"""JSON and DOT serialisation of prefix networks and logic circuits.

Both writers are canonical (fixed key order, one node per line, nodes in
id order), so ``dump(load(text)) == text`` for anything they produced.
See ``docs/netlist-format.md`` for the field-by-field description.
"""

from __future__ import annotations

import json
import re

from .circuit import (
    INPUT,
    NODE_KINDS,
    OUTPUT,
    LogicCircuit,
    ParallelPrefixGraph,
    PrefixTree,
)

VERSION = 1
LOGIC, GRAPH, TREE = "logic-circuit", "prefix-graph", "prefix-tree"
PREFIX = "prefix"

ROLE_COLORS = {
    "group": "palegreen",
    "recursion": "lightcoral",
    "combine": "khaki",
    "sum": "lightblue",
}


class NetlistError(ValueError):
    pass


def _format_of(obj):
    if isinstance(obj, LogicCircuit):
        return LOGIC
    if isinstance(obj, PrefixTree):
        return TREE
    if isinstance(obj, ParallelPrefixGraph):
        return GRAPH
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _records(obj):
    """Yield ``(id, kind, name, preds, role)`` for every node, in id order."""
    if isinstance(obj, LogicCircuit):
        for node in obj:
            yield node.id, node.kind, node.name, node.preds, node.role
        return
    n = obj.n
    for i in range(n):
        yield i, INPUT, f"z_{i + 1}", (), None
    for idx, (left, right) in enumerate(obj.gates):
        yield n + idx, PREFIX, "", (left, right), obj.role(n + idx)
    base = n + len(obj.gates)
    if isinstance(obj, PrefixTree):
        yield base, OUTPUT, f"y_{n}", (obj.root,), None
    else:
        for i, node in enumerate(obj.outputs):
            yield base + i, OUTPUT, f"y_{i + 1}", (node,), None


def _profile_list(profile, n):
    if profile is None:
        return None
    times = [int(t) for t in profile]
    if len(times) != n:
        raise ValueError(f"profile has {len(times)} entries for {n} inputs")
    return times


def to_json(obj, profile=None) -> str:
    fmt = _format_of(obj)
    prof = _profile_list(profile, obj.n)
    lines = [
        "{",
        f'  "format": "{fmt}",',
        f'  "version": {VERSION},',
        f'  "n": {obj.n},',
        f'  "profile": {json.dumps(prof)},',
        '  "nodes": [',
    ]
    body = []
    for nid, kind, name, preds, role in _records(obj):
        rec = {"id": nid, "kind": kind, "name": name, "preds": list(preds)}
        if role is not None:
            rec["role"] = role
        body.append("    " + json.dumps(rec))
    lines.append(",\n".join(body))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _assemble(fmt, n, records):
    """Rebuild an object from ``(kind, name, preds, role)`` records in id order."""
    if fmt == LOGIC:
        kinds, preds, names, roles = [], [], [], []
        for i, (kind, name, ps, role) in enumerate(records):
            if kind not in NODE_KINDS:
                raise NetlistError(f"node {i}: unknown kind {kind!r}")
            kinds.append(kind)
            names.append(name)
            preds.append(tuple(ps))
            roles.append(role)
        has_roles = any(r is not None for r in roles)
        c = LogicCircuit(n, tuple(kinds), tuple(preds), tuple(names),
                         tuple(roles) if has_roles else None)
        try:
            c.validate()
        except ValueError as exc:
            raise NetlistError(str(exc)) from exc
        return c
    if fmt not in (TREE, GRAPH):
        raise NetlistError(f"unknown format {fmt!r}")
    for i in range(n):
        if i >= len(records) or records[i][0] != INPUT:
            raise NetlistError(f"node {i} should be input z_{i + 1}")
    gates, roles, outputs = [], [], []
    for i, (kind, name, ps, role) in enumerate(records[n:], start=n):
        if kind == PREFIX:
            if outputs:
                raise NetlistError(f"node {i}: prefix gate after outputs")
            if len(ps) != 2 or not all(0 <= p < i for p in ps):
                raise NetlistError(f"node {i}: bad predecessors {ps}")
            gates.append(tuple(ps))
            roles.append(role)
        elif kind == OUTPUT:
            if len(ps) != 1:
                raise NetlistError(f"node {i}: output needs one predecessor")
            outputs.append(ps[0])
        else:
            raise NetlistError(f"node {i}: kind {kind!r} not allowed in a prefix network")
    role_tuple = tuple(roles) if any(r is not None for r in roles) else None
    if fmt == TREE:
        if len(outputs) != 1:
            raise NetlistError("a prefix tree has exactly one output")
        return PrefixTree(n, tuple(gates), root=outputs[0], roles=role_tuple)
    return ParallelPrefixGraph(n, tuple(gates), outputs=tuple(outputs), roles=role_tuple)


def from_json(text):
    """Parse JSON netlist text; returns ``(obj, profile_or_None)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetlistError(f"not valid JSON: {exc}") from exc
    try:
        fmt, n, nodes = doc["format"], int(doc["n"]), doc["nodes"]
    except (KeyError, TypeError) as exc:
        raise NetlistError(f"missing header field: {exc}") from exc
    if doc.get("version") != VERSION:
        raise NetlistError(f"unsupported version {doc.get('version')!r}")
    records = []
    for i, rec in enumerate(nodes):
        if rec.get("id") != i:
            raise NetlistError(f"node ids must be 0..{len(nodes) - 1} in order")
        records.append((rec["kind"], rec.get("name", ""), tuple(rec.get("preds", ())), rec.get("role")))
    obj = _assemble(fmt, n, records)
    profile = doc.get("profile")
    if profile is not None:
        profile = tuple(int(t) for t in profile)
        if len(profile) != n:
            raise NetlistError("profile length does not match n")
    return obj, profile


def _dot_label(obj, spans, nid, kind, name):
    if kind in (INPUT, OUTPUT):
        return name
    if kind == PREFIX:
        lo, hi = spans[nid]
        return f"{hi}:{lo}"
    return kind.upper()


def to_dot(obj, profile=None) -> str:
    """Graphviz text; gates are filled by construction role."""
    fmt = _format_of(obj)
    prof = _profile_list(profile, obj.n)
    spans = None if fmt == LOGIC else obj.spans()
    graph_name = fmt.replace("-", "_")
    prof_text = "none" if prof is None else ",".join(map(str, prof))
    lines = [
        f"digraph {graph_name} {{",
        f"  // prefixsynth format={fmt} version={VERSION} n={obj.n} profile={prof_text}",
        "  rankdir=BT;",
    ]
    for nid, kind, name, preds, role in _records(obj):
        attrs = [f'kind="{kind}"', f'name="{name}"']
        if role is not None:
            attrs.append(f'role="{role}"')
        attrs.append(f'label="{_dot_label(obj, spans, nid, kind, name)}"')
        if kind in (INPUT, OUTPUT):
            attrs.append("shape=box")
        if role in ROLE_COLORS:
            attrs.append(f'style=filled, fillcolor="{ROLE_COLORS[role]}"')
        lines.append(f"  n{nid} [{', '.join(attrs)}];")
        for arg, p in enumerate(preds):
            lines.append(f"  n{p} -> n{nid} [arg={arg}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_HEADER = re.compile(r"//\s*prefixsynth format=(\S+) version=(\d+) n=(\d+) profile=(\S+)")
_DOT_NODE = re.compile(r"^\s*n(\d+)\s*\[(.*)\];\s*$")
_DOT_EDGE = re.compile(r"^\s*n(\d+)\s*->\s*n(\d+)\s*\[arg=(\d+)\];\s*$")
_DOT_ATTR = re.compile(r'(\w+)="([^"]*)"')


def from_dot(text):
    """Parse DOT written by :func:`to_dot`; returns ``(obj, profile_or_None)``."""
    header = _DOT_HEADER.search(text)
    if not header:
        raise NetlistError("missing prefixsynth header comment")
    fmt, version, n, prof_text = header.groups()
    if int(version) != VERSION:
        raise NetlistError(f"unsupported version {version}")
    n = int(n)
    nodes = {}
    edges = {}
    for line in text.splitlines():
        m = _DOT_NODE.match(line)
        if m:
            attrs = dict(_DOT_ATTR.findall(m.group(2)))
            if "kind" not in attrs:
                raise NetlistError(f"node n{m.group(1)} lacks a kind")
            nodes[int(m.group(1))] = attrs
            continue
        m = _DOT_EDGE.match(line)
        if m:
            src, dst, arg = map(int, m.groups())
            edges.setdefault(dst, {})[arg] = src
    records = []
    for i in range(len(nodes)):
        if i not in nodes:
            raise NetlistError(f"node ids are not contiguous, n{i} missing")
        attrs = nodes[i]
        args = edges.get(i, {})
        preds = tuple(args[a] for a in sorted(args))
        records.append((attrs["kind"], attrs.get("name", ""), preds, attrs.get("role")))
    obj = _assemble(fmt, n, records)
    profile = None if prof_text == "none" else tuple(int(t) for t in prof_text.split(","))
    return obj, profile


def load(path):
    """Read a netlist file, choosing the parser by content."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_dot(text)


def dump(obj, path, emit="json", profile=None):
    text = to_json(obj, profile) if emit == "json" else to_dot(obj, profile)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
