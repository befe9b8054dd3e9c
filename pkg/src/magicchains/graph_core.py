"""Finite simple undirected graphs, generators and composition operators.

Vertices are dense 0-based integer ids. Grid vertices additionally carry a
``GridCoord(i, j)`` label (1-based path index ``i``, 1-based cycle/column
index ``j``) that prints as ``u_i^(j)``.

Graphs are immutable once built. Compositions that merge vertices return the
new graph together with per-part id maps so that witnesses found in a factor
can be transported into the composite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "GraphError",
    "Name",
    "GridCoord",
    "Graph",
    "TwoTerminalGraph",
    "Composed",
    "Induced",
    "from_edge_list",
    "neighbors",
    "closed_neighborhood",
    "induced_subgraph",
    "disjoint_union",
    "cartesian_product",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "empty_graph",
    "star_graph",
    "grid_graph",
    "cylindrical_grid",
    "amalgamation",
    "series_composition",
    "parallel_composition",
    "rooted_product",
    "add_vertex",
    "relabel",
]


class GraphError(ValueError):
    """Invalid vertex id, self-loop or out-of-range generator parameter."""


@dataclass(frozen=True, order=True)
class Name:
    text: str

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True, order=True)
class GridCoord:
    i: int  # path (row) index, 1-based
    j: int  # cycle (column) index, 1-based

    def __str__(self) -> str:
        return f"u_{self.i}^({self.j})"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``.

    ``adj[v]`` is the open neighbourhood of ``v`` as a frozenset. ``labels`` is
    either empty or holds one label per vertex.
    """

    n: int
    adj: tuple[frozenset[int], ...]
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        for v, nb in enumerate(self.adj):
            if v in nb:
                raise GraphError(f"self-loop at vertex {v}")
            for u in nb:
                if not 0 <= u < self.n:
                    raise GraphError(f"vertex {v} lists neighbour {u} outside 0..{self.n - 1}")
                if v not in self.adj[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        if self.labels and len(self.labels) != self.n:
            raise GraphError(f"{len(self.labels)} labels for {self.n} vertices")

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise GraphError(f"invalid vertex id {v!r} for graph of order {self.n}")

    def label(self, v: int) -> str:
        """Human-facing name of ``v``: its label if present, else the id."""
        if self.labels and self.labels[v] is not None:
            return str(self.labels[v])
        return str(v)

    def vertex_of(self, label) -> int:
        """Inverse of :meth:`label` for labelled graphs (accepts a label object or its string)."""
        key = str(label)
        for v in range(self.n):
            if self.labels and self.labels[v] is not None and str(self.labels[v]) == key:
                return v
        raise GraphError(f"no vertex labelled {key}")

    def grid_vertex(self, i: int, j: int) -> int:
        return self.vertex_of(GridCoord(i, j))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n


@dataclass(frozen=True)
class TwoTerminalGraph:
    graph: Graph
    source: int
    sink: int

    def __post_init__(self) -> None:
        self.graph.check_vertex(self.source)
        self.graph.check_vertex(self.sink)
        if self.source == self.sink:
            raise GraphError("source and sink must differ")


@dataclass(frozen=True)
class Composed:
    """Result of a vertex-merging composition.

    ``maps[p][old_id]`` is the id in ``graph`` of vertex ``old_id`` of part ``p``.
    """

    graph: Graph
    maps: tuple[tuple[int, ...], ...]
    merged: tuple[int, ...] = ()
    collapsed_edges: tuple[tuple[int, int], ...] = ()
    source: int | None = None
    sink: int | None = None

    @property
    def two_terminal(self) -> TwoTerminalGraph:
        if self.source is None or self.sink is None:
            raise GraphError("composition has no terminals")
        return TwoTerminalGraph(self.graph, self.source, self.sink)


@dataclass(frozen=True)
class Induced:
    graph: Graph
    ids: tuple[int, ...]  # ids[new] = original id


def _build(n: int, edges: Iterable[tuple[int, int]], labels: Sequence = ()) -> Graph:
    sets: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        sets[u].add(v)
        sets[v].add(u)
    return Graph(n, tuple(frozenset(s) for s in sets), tuple(labels))


def from_edge_list(n: int, edges: Iterable[Sequence[int]], labels: Sequence = ()) -> Graph:
    """Graph on ``n`` vertices with the given edges (symmetrised, duplicates collapsed)."""
    if not isinstance(n, int) or n < 0:
        raise GraphError(f"vertex count must be a nonnegative integer, got {n!r}")
    clean = []
    for e in edges:
        u, v = e
        for x in (u, v):
            if not isinstance(x, int) or not 0 <= x < n:
                raise GraphError(f"edge {tuple(e)} has id {x!r} outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v}) rejected")
        clean.append((u, v))
    return _build(n, clean, labels)


def neighbors(g: Graph, u: int) -> list[int]:
    g.check_vertex(u)
    return sorted(g.adj[u])


def closed_neighborhood(g: Graph, u: int) -> list[int]:
    g.check_vertex(u)
    return sorted(g.adj[u] | {u})


def induced_subgraph(g: Graph, s: Iterable[int]) -> Induced:
    ids = sorted(set(s))
    for v in ids:
        g.check_vertex(v)
    index = {v: k for k, v in enumerate(ids)}
    edges = [(index[u], index[v]) for u in ids for v in g.adj[u] if v in index and u < v]
    labels = tuple(g.labels[v] for v in ids) if g.labels else ()
    return Induced(_build(len(ids), edges, labels), tuple(ids))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` followed by ``h`` with ids of ``h`` shifted by ``g.n``."""
    off = g.n
    edges = g.edges() + [(u + off, v + off) for u, v in h.edges()]
    labels: tuple = ()
    if g.labels or h.labels:
        labels = (g.labels or (None,) * g.n) + (h.labels or (None,) * h.n)
    return _build(g.n + h.n, edges, labels)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H; vertex ``(a, b)`` gets id ``a * h.n + b``."""
    m = h.n
    edges = []
    for a in range(g.n):
        for b, c in h.edges():
            edges.append((a * m + b, a * m + c))
    for a, a2 in g.edges():
        for b in range(m):
            edges.append((a * m + b, a2 * m + b))
    return _build(g.n * m, edges)


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return _build(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return _build(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 0:
        raise GraphError(f"complete graph needs n >= 0, got {n}")
    return _build(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n: int) -> Graph:
    if n < 0:
        raise GraphError(f"empty graph needs n >= 0, got {n}")
    return _build(n, [])


def star_graph(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    if k < 0:
        raise GraphError(f"star needs k >= 0, got {k}")
    return _build(k + 1, [(0, i) for i in range(1, k + 1)])


def _with_grid_labels(g: Graph, rows: int, cols: int) -> Graph:
    labels = tuple(GridCoord(i + 1, j + 1) for i in range(rows) for j in range(cols))
    return Graph(g.n, g.adj, labels)


def grid_graph(a: int, b: int) -> Graph:
    """P_a □ P_b labelled ``u_i^(j)`` with ``i`` in 1..a and ``j`` in 1..b."""
    return _with_grid_labels(cartesian_product(path_graph(a), path_graph(b)), a, b)


def cylindrical_grid(k: int, n: int) -> Graph:
    """P_k □ C_n; ``u_i^(j)`` has id ``(i-1)*n + (j-1)``."""
    if k < 1 or n < 3:
        raise GraphError(f"cylindrical grid needs k >= 1 and n >= 3, got k={k}, n={n}")
    return _with_grid_labels(cartesian_product(path_graph(k), cycle_graph(n)), k, n)


def _merge(parts: Sequence[Graph], groups: Sequence[Sequence[tuple[int, int]]]):
    """Disjoint union of ``parts`` with each group of ``(part, vertex)`` pairs identified.

    Returns the graph, per-part maps, merged ids (one per group) and the
    edges that collapsed into an existing edge.
    """
    rep: dict[tuple[int, int], int] = {}
    for gi, group in enumerate(groups):
        for p, v in group:
            parts[p].check_vertex(v)
            rep[(p, v)] = -1 - gi
    maps: list[list[int]] = []
    group_ids: dict[int, int] = {}
    nxt = 0
    for p, g in enumerate(parts):
        m = []
        for v in range(g.n):
            key = rep.get((p, v))
            if key is None:
                m.append(nxt)
                nxt += 1
            elif key in group_ids:
                m.append(group_ids[key])
            else:
                group_ids[key] = nxt
                m.append(nxt)
                nxt += 1
        maps.append(m)
    seen: set[tuple[int, int]] = set()
    collapsed = []
    edges = []
    for p, g in enumerate(parts):
        for u, v in g.edges():
            a, b = sorted((maps[p][u], maps[p][v]))
            if a == b:
                raise GraphError("composition would create a self-loop")
            if (a, b) in seen:
                collapsed.append((a, b))
                continue
            seen.add((a, b))
            edges.append((a, b))
    labels: tuple = ()
    if any(g.labels for g in parts):
        lab: list = [None] * nxt
        for p, g in enumerate(parts):
            if g.labels:
                for v in range(g.n):
                    if lab[maps[p][v]] is None:
                        lab[maps[p][v]] = g.labels[v]
        labels = tuple(lab)
    merged = tuple(group_ids[-1 - gi] for gi in range(len(groups)))
    return _build(nxt, edges, labels), tuple(tuple(m) for m in maps), merged, tuple(collapsed)


def amalgamation(parts: Sequence[tuple[Graph, int]]) -> Composed:
    """Vertex amalgamation: disjoint union with all designated vertices identified."""
    if len(parts) < 2:
        raise GraphError("amalgamation needs at least two parts")
    graphs = [g for g, _ in parts]
    g, maps, merged, collapsed = _merge(graphs, [[(p, v) for p, (_, v) in enumerate(parts)]])
    return Composed(g, maps, merged, collapsed)


def series_composition(x: TwoTerminalGraph, y: TwoTerminalGraph) -> Composed:
    """Merge the sink of ``x`` with the source of ``y``."""
    g, maps, merged, collapsed = _merge([x.graph, y.graph], [[(0, x.sink), (1, y.source)]])
    return Composed(g, maps, merged, collapsed, source=maps[0][x.source], sink=maps[1][y.sink])


def parallel_composition(x: TwoTerminalGraph, y: TwoTerminalGraph) -> Composed:
    """Merge sources and sinks; an edge present in both parts collapses and is reported."""
    g, maps, merged, collapsed = _merge(
        [x.graph, y.graph], [[(0, x.source), (1, y.source)], [(0, x.sink), (1, y.sink)]]
    )
    return Composed(g, maps, merged, collapsed, source=merged[0], sink=merged[1])


def rooted_product(g: Graph, h: Graph, root: int) -> Composed:
    """One copy of ``h`` per vertex of ``g``, attached at ``root``.

    Vertices of ``g`` keep their ids; ``maps[0]`` is the identity on ``g`` and
    ``maps[1 + v]`` maps ``h`` into the copy hanging at ``v``.
    """
    h.check_vertex(root)
    parts = [g] + [h] * g.n
    groups = [[(0, v), (1 + v, root)] for v in range(g.n)]
    graph, maps, merged, collapsed = _merge(parts, groups)
    return Composed(graph, maps, merged, collapsed)


def add_vertex(g: Graph, attach_to: Iterable[int] = (), label=None) -> Graph:
    """Supergraph with one new vertex (id ``g.n``) joined to ``attach_to``."""
    attach = sorted(set(attach_to))
    for v in attach:
        g.check_vertex(v)
    labels: tuple = ()
    if g.labels or label is not None:
        labels = (g.labels or (None,) * g.n) + (label,)
    return _build(g.n + 1, g.edges() + [(v, g.n) for v in attach], labels)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Isomorphic copy where old vertex ``v`` becomes ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("relabel needs a permutation of the vertex ids")
    labels: tuple = ()
    if g.labels:
        lab: list = [None] * g.n
        for v in range(g.n):
            lab[perm[v]] = g.labels[v]
        labels = tuple(lab)
    return _build(g.n, [(perm[u], perm[v]) for u, v in g.edges()], labels)

