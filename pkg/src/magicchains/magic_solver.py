"""Distance magic labelings: verification, exact search and non-magic certificates.

A labeling is a bijection ``f: V -> {1..n}`` stored as a tuple ``f[v]``. It is
distance magic with constant ``S`` when every open neighbourhood sums to ``S``.

Two independent deciders are provided: :func:`solve_exhaustive` enumerates all
``n!`` bijections (vectorised with numpy) and :func:`solve` runs a pruned
backtracking search. :func:`certify_ndm` produces cheap witnesses of
non-magicness (forbidden pair, even Type-1 chain) before falling back to
exhaustion.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Union

import numpy as np

from .chain_structures import ChainRejected, ChainT1, find_even_t1, verify_t1
from .graph_core import Graph

__all__ = [
    "LabelingError",
    "LabelingFailure",
    "ForbiddenPair",
    "EvenT1Chain",
    "Exhausted",
    "Certificate",
    "MagicResult",
    "SolverConfig",
    "verify_labeling",
    "forbidden_pair",
    "forbidden_pairs",
    "candidate_constants",
    "solve_exhaustive",
    "solve",
    "certify_ndm",
    "check_certificate",
    "equal_sum_basis",
    "sample_equal_sum_weightings",
]

DEFAULT_ORACLE_CAP = 10
DEFAULT_BUDGET = 500_000


class LabelingError(ValueError):
    """Labeling is not a bijection onto 1..n."""


class LabelingFailure(Exception):
    """Labeling is bijective but some neighbourhood sum deviates."""

    def __init__(self, vertex: int, total: int, expected: int):
        self.vertex, self.total, self.expected = vertex, total, expected
        super().__init__(f"vertex {vertex} has neighbourhood sum {total}, expected {expected}")


@dataclass(frozen=True)
class ForbiddenPair:
    u: int
    v: int

    def to_dict(self) -> dict:
        return {"type": "forbidden_pair", "u": self.u, "v": self.v}


@dataclass(frozen=True)
class EvenT1Chain:
    chain: ChainT1

    def to_dict(self) -> dict:
        return {"type": "even_t1_chain", "length": self.chain.length, "chain": self.chain.to_dict()}


@dataclass(frozen=True)
class Exhausted:
    method: str
    stats: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {"type": "exhausted", "method": self.method, "stats": dict(self.stats)}


Certificate = Union[ForbiddenPair, EvenT1Chain, Exhausted]


@dataclass(frozen=True)
class MagicResult:
    magic: bool
    constant: int | None = None
    labeling: tuple[int, ...] | None = None
    certificate: Certificate | None = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def verdict(self) -> str:
        return "magic" if self.magic else "not_magic"


@dataclass
class SolverConfig:
    oracle_cap: int = DEFAULT_ORACLE_CAP
    budget: int = DEFAULT_BUDGET
    deterministic: bool = True
    workers: int = 1


def _as_tuple(g: Graph, f: Sequence[int] | Mapping[int, int]) -> tuple[int, ...]:
    if isinstance(f, Mapping):
        if set(f) != set(range(g.n)):
            raise LabelingError("labeling must assign every vertex exactly once")
        return tuple(int(f[v]) for v in range(g.n))
    f = tuple(int(x) for x in f)
    if len(f) != g.n:
        raise LabelingError(f"labeling has {len(f)} values for {g.n} vertices")
    return f


def verify_labeling(g: Graph, f: Sequence[int] | Mapping[int, int]) -> int:
    """Return the magic constant, or raise :class:`LabelingFailure` at the first deviating vertex."""
    f = _as_tuple(g, f)
    if sorted(f) != list(range(1, g.n + 1)):
        raise LabelingError(f"labeling {f} is not a bijection onto 1..{g.n}")
    sums = [sum(f[v] for v in g.adj[u]) for u in range(g.n)]
    if not sums:
        return 0
    for u, s in enumerate(sums):
        if s != sums[0]:
            raise LabelingFailure(u, s, sums[0])
    return sums[0]


def forbidden_pairs(g: Graph):
    """Pairs ``u < v`` with ``|N(u) & N(v)| = deg(u) - 1 = deg(v) - 1``, in lexicographic order."""
    for u in range(g.n):
        du = len(g.adj[u])
        if du == 0:
            continue
        for v in range(u + 1, g.n):
            if len(g.adj[v]) == du and len(g.adj[u] & g.adj[v]) == du - 1:
                yield u, v


def forbidden_pair(g: Graph) -> tuple[int, int] | None:
    return next(forbidden_pairs(g), None)


def candidate_constants(g: Graph) -> list[int]:
    """Integers ``S`` with ``n*S`` between the extreme values of ``sum deg(v) f(v)``.

    The extremes pair the sorted degree sequence with labels in opposite and
    equal order. A vertex of degree 0 forces ``S = 0``.
    """
    n = g.n
    if n == 0:
        return [0]
    degs = sorted(g.degrees())
    labels = range(1, n + 1)
    lo = sum(d * x for d, x in zip(degs, reversed(labels)))
    hi = sum(d * x for d, x in zip(degs, labels))
    out = list(range(-(-lo // n), hi // n + 1))
    if degs[0] == 0:
        out = [s for s in out if s == 0]
    return out


# ---------------------------------------------------------------- exhaustive


@lru_cache(maxsize=4)
def _perm_block(m: int) -> np.ndarray:
    """All permutations of ``0..m-1`` in lexicographic order, one per row."""
    count = math.factorial(m)
    flat = np.fromiter(itertools.chain.from_iterable(itertools.permutations(range(m))), dtype=np.int8, count=count * m)
    return flat.reshape(count, m)


_BLOCK = 9


def _labelings(n: int):
    """Yield blocks of labelings (rows) in lexicographic order."""
    if n <= _BLOCK:
        yield _perm_block(n).astype(np.int32) + 1 if n else np.zeros((1, 0), dtype=np.int32)
        return
    base = _perm_block(_BLOCK)
    p = n - _BLOCK
    for prefix in itertools.permutations(range(1, n + 1), p):
        rest = np.array(sorted(set(range(1, n + 1)) - set(prefix)), dtype=np.int32)
        block = np.empty((base.shape[0], n), dtype=np.int32)
        block[:, :p] = prefix
        block[:, p:] = rest[base]
        yield block


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int32)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a


def solve_exhaustive(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> MagicResult:
    """Enumerate every bijection; return the lexicographically first magic one."""
    if g.n > cap:
        raise ValueError(f"graph order {g.n} exceeds oracle cap {cap}")
    a = _adjacency_matrix(g)
    checked = 0
    for block in _labelings(g.n):
        if g.n == 0:
            return MagicResult(True, 0, (), stats={"labelings": 1})
        sums = block @ a
        ok = np.all(sums == sums[:, :1], axis=1)
        hit = int(np.argmax(ok))
        if ok[hit]:
            checked += hit + 1
            f = tuple(int(x) for x in block[hit])
            return MagicResult(True, int(sums[hit, 0]), f, stats={"labelings": checked})
        checked += block.shape[0]
    stats = {"labelings": checked}
    return MagicResult(False, certificate=Exhausted("enumeration", stats), stats=stats)


# -------------------------------------------------------------- backtracking


class _Search:
    """Backtracking over label assignments for one target constant ``S``.

    After every assignment all neighbourhood constraints are re-checked
    against the sums achievable with the remaining labels; a constraint with a
    single unlabelled member forces that member's label.
    """

    def __init__(self, g: Graph, S: int, lex: bool):
        self.g, self.S, self.lex = g, S, lex
        self.n = g.n
        self.nbrs = [tuple(sorted(nb)) for nb in g.adj]
        self.label = [0] * self.n
        self.free = list(range(1, self.n + 1))
        self.psum = [0] * self.n
        self.open = [len(nb) for nb in self.nbrs]
        self.nodes = 0

    def _consistent(self):
        """Return forced assignments ``{vertex: label}`` or None on a dead end."""
        free = self.free
        pre = [0]
        for x in free:
            pre.append(pre[-1] + x)
        total = pre[-1]
        nf = len(free)
        freeset = set(free)
        forced: dict[int, int] = {}
        S = self.S
        for u in range(self.n):
            c = self.open[u]
            r = S - self.psum[u]
            if c == 0:
                if r:
                    return None
                continue
            if r < pre[c] or r > total - pre[nf - c]:
                return None
            if c == 1:
                if r not in freeset:
                    return None
                w = next(v for v in self.nbrs[u] if not self.label[v])
                if forced.setdefault(w, r) != r:
                    return None
        if len(set(forced.values())) != len(forced):
            return None
        return forced

    def _assign(self, v: int, x: int) -> None:
        self.label[v] = x
        self.free.remove(x)
        for u in self.nbrs[v]:
            self.psum[u] += x
            self.open[u] -= 1

    def _unassign(self, v: int, x: int) -> None:
        self.label[v] = 0
        self.free.insert(next((i for i, y in enumerate(self.free) if y > x), len(self.free)), x)
        for u in self.nbrs[v]:
            self.psum[u] -= x
            self.open[u] += 1

    def _choose(self, forced: dict[int, int]):
        unl = [v for v in range(self.n) if not self.label[v]]
        if self.lex:
            v = unl[0]
            return v, [forced[v]] if v in forced else list(self.free)
        if forced:
            v = min(forced)
            return v, [forced[v]]

        def tightness(v):
            opens = [self.open[u] for u in self.nbrs[v]]
            return (min(opens) if opens else self.n + 1, -len(opens), v)

        v = min(unl, key=tightness)
        return v, list(self.free)

    def run(self) -> tuple[int, ...] | None:
        self.nodes += 1
        forced = self._consistent()
        if forced is None:
            return None
        if not self.free:
            return tuple(self.label)
        v, values = self._choose(forced)
        for x in values:
            self._assign(v, x)
            found = self.run()
            if found is not None:
                return found
            self._unassign(v, x)
        return None


def _search_one(args) -> tuple[int, tuple[int, ...] | None, int]:
    g, S, lex = args
    s = _Search(g, S, lex)
    return S, s.run(), s.nodes


def solve(g: Graph, deterministic: bool = True, workers: int = 1) -> MagicResult:
    """Pruned backtracking over every candidate constant.

    Deterministic mode returns the lexicographically smallest magic labeling;
    the verdict itself never depends on mode or worker count.
    """
    cands = candidate_constants(g)
    jobs = [(g, S, False) for S in cands]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_search_one, jobs))
    else:
        results = [_search_one(j) for j in jobs]
    nodes = {S: k for S, _, k in results}
    stats = {"candidates": cands, "nodes": sum(nodes.values()), "nodes_per_constant": nodes}
    hits = [(S, f) for S, f, _ in results if f is not None]
    if not hits:
        return MagicResult(False, certificate=Exhausted("backtracking", stats), stats=stats)
    if deterministic:
        best = None
        for S, _ in hits:
            _, f, k = _search_one((g, S, True))
            stats["nodes"] += k
            if best is None or f < best[1]:
                best = (S, f)
        S, f = best
    else:
        S, f = hits[0]
    return MagicResult(True, S, f, stats=stats)


# --------------------------------------------------------------- certificates


def certify_ndm(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    stats: dict | None = None,
) -> Certificate | None:
    """Cheapest available proof that ``g`` is not distance magic, or None.

    None means inconclusive, not magic. A non-adjacent forbidden pair that
    also forms a length-2 Type-1 chain is reported as the chain.
    """
    stats = {} if stats is None else stats
    pairs = list(forbidden_pairs(g))
    stats["forbidden_pairs"] = len(pairs)
    for u, v in pairs:
        if v in g.adj[u]:
            continue
        try:
            return EvenT1Chain(verify_t1(g, (u, v)))
        except ChainRejected:
            continue
    if pairs:
        return ForbiddenPair(*pairs[0])
    search = find_even_t1(g, budget)
    stats["chain_search"] = {"complete": search.complete, "expansions": search.expansions}
    if search.chain is not None:
        return EvenT1Chain(search.chain)
    if g.n <= oracle_cap:
        res = solve_exhaustive(g, oracle_cap)
        if not res.magic:
            return res.certificate
        stats["magic"] = True
    return None


def check_certificate(g: Graph, cert: Certificate, oracle_cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """Re-check a certificate from scratch."""
    if isinstance(cert, ForbiddenPair):
        u, v = cert.u, cert.v
        if u == v:
            return False
        du, dv = len(g.adj[u]), len(g.adj[v])
        return du == dv and du >= 1 and len(g.adj[u] & g.adj[v]) == du - 1
    if isinstance(cert, EvenT1Chain):
        if cert.chain.length % 2:
            return False
        try:
            verify_t1(g, cert.chain.centers)
        except ChainRejected:
            return False
        return True
    if isinstance(cert, Exhausted):
        res = solve_exhaustive(g, oracle_cap) if g.n <= oracle_cap else solve(g)
        return not res.magic
    raise TypeError(f"unknown certificate {cert!r}")


# ------------------------------------------------------ equal-sum weightings


def equal_sum_basis(c: ChainT1) -> tuple[list[int], list[list[Fraction]]]:
    """Basis of all weightings of the chain's vertices with equal term sums.

    Returns the vertex order and basis vectors (exact rationals).
    """
    import sympy

    verts = sorted(c.universe)
    index = {v: i for i, v in enumerate(verts)}
    terms = c.terms.terms
    rows = []
    for t in terms[1:]:
        row = [0] * len(verts)
        for v in t:
            row[index[v]] += 1
        for v in terms[0]:
            row[index[v]] -= 1
        rows.append(row)
    basis = sympy.Matrix(rows).nullspace()
    if not basis:
        raise ValueError("equal-sum system has only the zero solution")
    vecs = [[Fraction(int(x.p), int(x.q)) for x in b] for b in basis]
    return verts, vecs


def sample_equal_sum_weightings(c: ChainT1, count: int, seed: int = 0) -> list[dict[int, Fraction]]:
    """Random rational weightings on the chain's vertices whose term sums all agree."""
    verts, basis = equal_sum_basis(c)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in basis]
        w = [sum((a * b[i] for a, b in zip(coeffs, basis)), Fraction(0)) for i in range(len(verts))]
        out.append(dict(zip(verts, w)))
    return out
