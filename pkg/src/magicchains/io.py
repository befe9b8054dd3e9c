"""Serialization: graph JSON, edge-list text, family JSON, result JSON and DOT."""

from __future__ import annotations

import json
import re
from typing import Any, Iterable, Sequence

from .chain_structures import ChainT1, T2Pair
from .graph_core import Graph, GraphError, GridCoord, Name, from_edge_list
from .magic_solver import Certificate, MagicResult
from .nbh_sequences import NbhFamily, SequenceError, nsg

__all__ = [
    "ParseError",
    "parse_label",
    "graph_to_json",
    "graph_from_json",
    "graph_from_edge_list",
    "read_graph",
    "family_from_json",
    "family_to_json",
    "result_to_json",
    "dumps",
    "export_dot",
]

_GRID = re.compile(r"^u_(\d+)\^\((\d+)\)$")


class ParseError(ValueError):
    pass


def parse_label(text: str):
    m = _GRID.match(text)
    if m:
        return GridCoord(int(m.group(1)), int(m.group(2)))
    return Name(text)


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, compact separators, trailing newline)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def graph_to_json(g: Graph) -> dict:
    out: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    labels = {str(v): str(g.labels[v]) for v in range(g.n) if g.labels and g.labels[v] is not None}
    if labels:
        out["labels"] = labels
    return out


def _field(obj: dict, key: str, kind):
    if key not in obj:
        raise ParseError(f"missing field '{key}'")
    if not isinstance(obj[key], kind) or isinstance(obj[key], bool):
        raise ParseError(f"field '{key}' has wrong type {type(obj[key]).__name__}")
    return obj[key]


def graph_from_json(obj: dict) -> Graph:
    if not isinstance(obj, dict):
        raise ParseError("graph JSON must be an object")
    n = _field(obj, "n", int)
    if n < 0:
        raise ParseError("field 'n' must be nonnegative")
    edges = _field(obj, "edges", list)
    pairs = []
    for idx, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ParseError(f"field 'edges[{idx}]' must be a pair of integers")
        pairs.append(tuple(e))
    labels: list = []
    raw = obj.get("labels") or {}
    if not isinstance(raw, dict):
        raise ParseError("field 'labels' must be an object")
    if raw:
        labels = [None] * n
        for key, text in raw.items():
            try:
                v = int(key)
            except ValueError:
                raise ParseError(f"field 'labels.{key}' is not a vertex id") from None
            if not 0 <= v < n or not isinstance(text, str):
                raise ParseError(f"field 'labels.{key}' is invalid")
            labels[v] = parse_label(text)
    try:
        return from_edge_list(n, pairs, labels)
    except GraphError as e:
        raise ParseError(f"field 'edges': {e}") from None


def graph_from_edge_list(text: str) -> Graph:
    """``u v`` per line, ``#`` comments, optional ``n N`` line for isolated vertices."""
    pairs = []
    n = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2 and parts[1].isdigit():
            n = int(parts[1])
            continue
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        pairs.append((u, v))
    if n is None:
        n = max((max(p) for p in pairs), default=-1) + 1
    try:
        return from_edge_list(n, pairs)
    except GraphError as e:
        raise ParseError(str(e)) from None


def read_graph(text: str) -> Graph:
    """Graph from JSON or edge-list text; the format is sniffed from the first character."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno}: invalid JSON ({e.msg})") from None
        return graph_from_json(obj)
    return graph_from_edge_list(text)


def family_to_json(f: NbhFamily) -> dict:
    return {"universe": f.universe_size, "terms": [sorted(t) for t in f.terms]}


def family_from_json(obj: dict) -> NbhFamily:
    if not isinstance(obj, dict):
        raise ParseError("family JSON must be an object")
    universe = _field(obj, "universe", int)
    terms = _field(obj, "terms", list)
    for idx, t in enumerate(terms):
        if not isinstance(t, list) or not all(isinstance(x, int) for x in t):
            raise ParseError(f"field 'terms[{idx}]' must be a list of integers")
    try:
        return NbhFamily.of(terms, universe)
    except SequenceError as e:
        raise ParseError(f"field 'terms': {e}") from None


def certificate_to_json(cert: Certificate | None) -> dict | None:
    return None if cert is None else cert.to_dict()


def result_to_json(res: MagicResult) -> dict:
    out: dict[str, Any] = {"verdict": res.verdict, "stats": res.stats}
    if res.magic:
        out["S"] = res.constant
        out["labeling"] = {str(v): x for v, x in enumerate(res.labeling)}
    else:
        out["certificate"] = certificate_to_json(res.certificate)
    return out


def chain_to_json(c: ChainT1) -> dict:
    return c.to_dict()


def t2_to_json(p: T2Pair) -> dict:
    return p.to_dict()


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: Graph, highlights: Sequence[Iterable[int]] = (), name: str = "G") -> str:
    """DOT text. Edges inside the closed neighbourhoods of highlighted centers
    are solid, every other edge dashed; without highlights all edges are plain.
    """
    groups = [tuple(c) for c in highlights]
    for grp in groups:
        for v in grp:
            g.check_vertex(v)
    centers = sorted({v for grp in groups for v in grp})
    solid = nsg(g, centers).edges if centers else frozenset()
    lines = [f"graph {_quote(name)} {{"]
    for v in range(g.n):
        attrs = [f"label={_quote(g.label(v))}"]
        if v in centers:
            attrs.append("style=filled")
            attrs.append("fillcolor=lightgray")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in g.edges():
        if not groups:
            lines.append(f"  {u} -- {v};")
        else:
            style = "solid" if (u, v) in solid else "dashed"
            lines.append(f"  {u} -- {v} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
