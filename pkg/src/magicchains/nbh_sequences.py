"""Neighbourhood sequences: walk / trail / chain / cycle classification,
connectedness of a sequence, and neighbourhood-sequence graphs (NSG).

A family is an ordered list of nonempty vertex sets. Positions are 0-based
in this module; a family ``N_1 .. N_k`` in the usual 1-based notation is
``terms[0] .. terms[k-1]`` here.

The trail and chain conditions quantify over position pairs ``(i, j)`` with
``1 < |i - j| < k - 1``: consecutive terms are exempt, and so is the single
pair formed by the first and last term.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Sequence

from .graph_core import Graph, closed_neighborhood, induced_subgraph

__all__ = [
    "SequenceError",
    "NbhFamily",
    "SeqKind",
    "SeqClass",
    "NsgGraph",
    "Connectivity",
    "family_from_centers",
    "nsg",
    "is_walk",
    "is_trail",
    "is_chain",
    "is_cycle",
    "classify",
    "normalize_closed",
    "is_connected_sequence",
    "interior_pairs",
]


class SequenceError(ValueError):
    pass


@dataclass(frozen=True)
class NbhFamily:
    terms: tuple[frozenset[int], ...]
    universe_size: int
    graph: Graph | None = field(default=None, compare=False, repr=False)
    centers: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.terms) < 2:
            raise SequenceError(f"a neighbourhood sequence needs at least 2 terms, got {len(self.terms)}")
        for i, t in enumerate(self.terms):
            if not t:
                raise SequenceError(f"term {i} is empty")
            for v in t:
                if not 0 <= v < self.universe_size:
                    raise SequenceError(f"term {i} has element {v} outside 0..{self.universe_size - 1}")

    @classmethod
    def of(cls, terms: Iterable[Iterable[int]], universe_size: int | None = None) -> "NbhFamily":
        ts = tuple(frozenset(t) for t in terms)
        if universe_size is None:
            universe_size = max((max(t) for t in ts if t), default=-1) + 1
        return cls(ts, universe_size)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.terms[i]

    def sub(self, positions: Sequence[int]) -> "NbhFamily":
        centers = tuple(self.centers[p] for p in positions) if self.centers is not None else None
        return NbhFamily(tuple(self.terms[p] for p in positions), self.universe_size, self.graph, centers)

    def reversed(self) -> "NbhFamily":
        return self.sub(range(len(self) - 1, -1, -1))


def family_from_centers(g: Graph, centers: Sequence[int]) -> NbhFamily:
    """Open neighbourhoods of ``centers`` in ``g``, in order."""
    if len(centers) < 2:
        raise SequenceError("need at least 2 centers")
    terms = []
    for c in centers:
        g.check_vertex(c)
        if not g.adj[c]:
            raise SequenceError(f"center {g.label(c)} is isolated (empty neighbourhood)")
        terms.append(g.adj[c])
    return NbhFamily(tuple(terms), g.n, g, tuple(centers))


def interior_pairs(k: int):
    """Position pairs ``i < j`` with ``1 < j - i < k - 1``."""
    for i in range(k):
        for j in range(i + 2, k):
            if j - i < k - 1:
                yield i, j


def _first_disjoint_consecutive(f: NbhFamily):
    for i in range(len(f) - 1):
        if not f[i] & f[i + 1]:
            return i
    return None


def is_walk(f: NbhFamily) -> bool:
    return _first_disjoint_consecutive(f) is None


def _first_interior_violation(f: NbhFamily, limit: int):
    for i, j in interior_pairs(len(f)):
        shared = f[i] & f[j]
        if len(shared) > limit:
            return i, j, shared
    return None


def is_trail(f: NbhFamily) -> bool:
    return is_walk(f) and _first_interior_violation(f, 1) is None


def is_chain(f: NbhFamily) -> bool:
    return is_walk(f) and _first_interior_violation(f, 0) is None


def _ends_close(f: NbhFamily) -> bool:
    first, last = f[0], f[-1]
    if len(f) == 2:
        return bool(first & last) and first != last
    return bool(first & last)


def is_cycle(f: NbhFamily) -> bool:
    return is_chain(f) and _ends_close(f)


class SeqKind(IntEnum):
    NOT_WALK = 0
    WALK = 1
    TRAIL = 2
    OPEN_CHAIN = 3
    CYCLE = 4


@dataclass(frozen=True)
class SeqClass:
    """Strongest class that holds, plus why the next class up fails.

    ``witness`` keys: ``pair`` (positions), ``shared`` (sorted common
    elements) and, for open chains, ``reason``.
    """

    kind: SeqKind
    witness: dict

    @property
    def name(self) -> str:
        return self.kind.name.lower()


def classify(f: NbhFamily) -> SeqClass:
    i = _first_disjoint_consecutive(f)
    if i is not None:
        return SeqClass(SeqKind.NOT_WALK, {"pair": (i, i + 1), "shared": []})
    bad = _first_interior_violation(f, 1)
    if bad is not None:
        a, b, shared = bad
        return SeqClass(SeqKind.WALK, {"pair": (a, b), "shared": sorted(shared)})
    bad = _first_interior_violation(f, 0)
    if bad is not None:
        a, b, shared = bad
        return SeqClass(SeqKind.TRAIL, {"pair": (a, b), "shared": sorted(shared)})
    k = len(f)
    shared = sorted(f[0] & f[-1])
    if not _ends_close(f):
        reason = "end terms equal" if shared else "end terms disjoint"
        return SeqClass(SeqKind.OPEN_CHAIN, {"pair": (0, k - 1), "shared": shared, "reason": reason})
    return SeqClass(SeqKind.CYCLE, {"pair": (0, k - 1), "shared": shared})


def normalize_closed(f: NbhFamily) -> NbhFamily:
    """Drop a trailing term that repeats the first one (``N_a .. N_a`` -> ``N_a ..``)."""
    if len(f) < 3:
        raise SequenceError("normalize_closed needs at least 3 terms")
    if f[-1] == f[0]:
        return f.sub(range(len(f) - 1))
    return f


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    path: tuple[int, ...] | None = None  # positions, for the queried pair
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.connected


def _intersection_graph(f: NbhFamily) -> list[list[int]]:
    k = len(f)
    return [[j for j in range(k) if j != i and f[i] & f[j]] for i in range(k)]


def _bfs(adj: list[list[int]], start: int) -> dict[int, int | None]:
    parent: dict[int, int | None] = {start: None}
    q = deque([start])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                q.append(u)
    return parent


def is_connected_sequence(f: NbhFamily, pair: tuple[int, int] | None = None) -> Connectivity:
    """Decide connectedness on the term-intersection graph.

    For a connected family the witness is a shortest term-intersection path
    between ``pair`` (default: first and last term); such a path is always a
    neighbourhood chain. A disconnected family yields a bipartition of the
    positions with no intersecting term across it.
    """
    adj = _intersection_graph(f)
    reach = _bfs(adj, 0)
    if len(reach) < len(f):
        left = tuple(sorted(reach))
        right = tuple(p for p in range(len(f)) if p not in reach)
        return Connectivity(False, bipartition=(left, right))
    a, b = pair if pair is not None else (0, len(f) - 1)
    parent = _bfs(adj, a)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return Connectivity(True, path=tuple(reversed(path)))


@dataclass(frozen=True)
class NsgGraph:
    """Union of the induced subgraphs on the closed neighbourhoods of the centers.

    Vertex and edge ids are those of the origin graph.
    """

    origin: Graph = field(repr=False)
    centers: tuple[int, ...]
    closed_neighborhoods: tuple[frozenset[int], ...]
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        start = min(self.vertices)
        seen = {start}
        stack = [start]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)


def nsg(g: Graph, centers: Sequence[int]) -> NsgGraph:
    closed = []
    verts: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for c in centers:
        block = closed_neighborhood(g, c)
        closed.append(frozenset(block))
        verts.update(block)
        sub = induced_subgraph(g, block)
        for a, b in sub.graph.edges():
            edges.add((sub.ids[a], sub.ids[b]))
    return NsgGraph(g, tuple(centers), tuple(closed), frozenset(verts), frozenset(edges))
