"""Type-1 neighbourhood chains and Type-2 pairs: verification, search and the
set identities behind the even-length non-magic argument.

A Type-1 chain is given by its centers ``u_1 .. u_n`` (here ``centers[0..n-1]``)
with terms ``N_i = N(u_i)``. It must

* be a neighbourhood chain (see :mod:`magicchains.nbh_sequences`);
* use distinct centers, none of which lies in any term;
* have singleton end differences ``N_1 \\ N_2 = {v_first}`` and
  ``N_n \\ N_{n-1} = {v_last}`` with ``v_first != v_last``;
* satisfy ``N_{i+1} \\ N_i`` subset of ``N_{i+2}`` (non-strict);
* have both one-sided differences of every consecutive pair nonempty;
* cover at least ``n + 1`` vertices with its terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph_core import Graph
from .nbh_sequences import NbhFamily, SequenceError, classify, family_from_centers, SeqKind

__all__ = [
    "ChainRejected",
    "IdentityFailure",
    "ChainT1",
    "T2Pair",
    "ChainSearch",
    "verify_t1",
    "verify_t2",
    "find_t1",
    "find_even_t1",
    "find_t2",
    "proof_identities_check",
    "canonical_centers",
]

REASONS = (
    "too_short",
    "duplicate_center",
    "empty_term",
    "not_walk",
    "not_chain",
    "center_in_terms",
    "end_difference_not_singleton",
    "endpoints_equal",
    "nesting_violated",
    "empty_difference",
    "universe_too_small",
    "length_mismatch",
    "first_not_t1",
    "second_not_t1",
    "start_condition",
    "end_condition",
    "interior_condition",
)


class ChainRejected(ValueError):
    """Centers do not form a Type-1 chain (or a Type-2 pair).

    ``reason`` is one of :data:`REASONS`; ``witness`` holds the concrete
    positions and sets that fail.
    """

    def __init__(self, reason: str, witness: dict | None = None):
        self.reason = reason
        self.witness = witness or {}
        super().__init__(f"{reason}: {self.witness}")


class IdentityFailure(AssertionError):
    pass


def _s(x) -> list[int]:
    return sorted(x)


@dataclass(frozen=True)
class ChainT1:
    centers: tuple[int, ...]
    terms: NbhFamily = field(repr=False)
    v_first: int
    v_last: int
    # positions i where N_{i+1} \ N_i == N_{i+2} (nesting holds with equality)
    equal_nesting: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.centers)

    @property
    def universe(self) -> frozenset[int]:
        return frozenset().union(*self.terms.terms)

    def to_dict(self) -> dict:
        return {
            "centers": list(self.centers),
            "v_first": self.v_first,
            "v_last": self.v_last,
            "terms": [_s(t) for t in self.terms.terms],
        }


def canonical_centers(centers: Sequence[int]) -> tuple[int, ...]:
    """Smaller of the tuple and its reverse (chains are undirected objects)."""
    t = tuple(centers)
    return min(t, t[::-1])


def verify_t1(g: Graph, centers: Sequence[int]) -> ChainT1:
    """Return the verified chain or raise :class:`ChainRejected` naming the first failed condition."""
    centers = tuple(centers)
    n = len(centers)
    if n < 2:
        raise ChainRejected("too_short", {"length": n})
    for c in centers:
        g.check_vertex(c)
    if len(set(centers)) != n:
        dup = next(c for c in centers if centers.count(c) > 1)
        raise ChainRejected("duplicate_center", {"center": dup})
    try:
        fam = family_from_centers(g, centers)
    except SequenceError:
        empty = next(i for i, c in enumerate(centers) if not g.adj[c])
        raise ChainRejected("empty_term", {"position": empty, "center": centers[empty]}) from None
    cls = classify(fam)
    if cls.kind == SeqKind.NOT_WALK:
        raise ChainRejected("not_walk", cls.witness)
    if cls.kind < SeqKind.OPEN_CHAIN:
        raise ChainRejected("not_chain", cls.witness)
    terms = fam.terms
    union = frozenset().union(*terms)
    inside = sorted(set(centers) & union)
    if inside:
        raise ChainRejected("center_in_terms", {"centers": inside})
    first = terms[0] - terms[1]
    if len(first) != 1:
        raise ChainRejected("end_difference_not_singleton", {"end": "first", "difference": _s(first)})
    last = terms[-1] - terms[-2]
    if len(last) != 1:
        raise ChainRejected("end_difference_not_singleton", {"end": "last", "difference": _s(last)})
    (v_first,) = first
    (v_last,) = last
    if v_first == v_last:
        raise ChainRejected("endpoints_equal", {"vertex": v_first})
    equal = []
    for i in range(n - 2):
        grow = terms[i + 1] - terms[i]
        if not grow <= terms[i + 2]:
            raise ChainRejected(
                "nesting_violated",
                {"position": i, "difference": _s(grow), "next_term": _s(terms[i + 2])},
            )
        if grow == terms[i + 2]:
            equal.append(i)
    for i in range(n - 1):
        for a, b in ((i, i + 1), (i + 1, i)):
            if not terms[a] - terms[b]:
                raise ChainRejected("empty_difference", {"positions": (a, b)})
    if len(union) < n + 1:
        raise ChainRejected("universe_too_small", {"size": len(union), "needed": n + 1})
    return ChainT1(centers, fam, v_first, v_last, tuple(equal))


@dataclass(frozen=True)
class T2Pair:
    first: ChainT1
    second: ChainT1
    start_witness: frozenset[int]
    end_witness: frozenset[int]
    interior_witnesses: tuple[frozenset[int], ...]

    def to_dict(self) -> dict:
        return {
            "first": self.first.to_dict(),
            "second": self.second.to_dict(),
            "witnesses": {
                "start": _s(self.start_witness),
                "end": _s(self.end_witness),
                "interior": [_s(w) for w in self.interior_witnesses],
            },
        }


def verify_t2(g: Graph, c1: Sequence[int], c2: Sequence[int]) -> T2Pair:
    try:
        a = verify_t1(g, c1)
    except ChainRejected as e:
        raise ChainRejected("first_not_t1", {"reason": e.reason, **e.witness}) from None
    try:
        b = verify_t1(g, c2)
    except ChainRejected as e:
        raise ChainRejected("second_not_t1", {"reason": e.reason, **e.witness}) from None
    n = a.length
    if b.length != n:
        raise ChainRejected("length_mismatch", {"first": n, "second": b.length})
    F, S = a.terms.terms, b.terms.terms
    start = F[0] & F[1] & S[0]
    start_diff = S[0] - S[1]
    if not start or start != start_diff:
        raise ChainRejected("start_condition", {"intersection": _s(start), "difference": _s(start_diff)})
    end = F[-1] & S[-1] & S[-2]
    end_diff = F[-1] - F[-2]
    if not end or end != end_diff:
        raise ChainRejected("end_condition", {"intersection": _s(end), "difference": _s(end_diff)})
    interior = []
    for i in range(1, n - 1):
        w = F[i] & F[i + 1] & S[i] & S[i - 1]
        if not w:
            raise ChainRejected("interior_condition", {"position": i, "intersection": []})
        interior.append(w)
    return T2Pair(a, b, start, end, tuple(interior))


@dataclass
class ChainSearch:
    """Outcome of a bounded search. ``complete`` is False when the budget ran out."""

    chains: list[ChainT1]
    complete: bool
    expansions: int

    @property
    def chain(self) -> ChainT1 | None:
        return self.chains[0] if self.chains else None


class _Budget(Exception):
    pass


class _Found(Exception):
    pass


def _extend(g: Graph, length: int, budget: int, on_found, counter: list[int]) -> None:
    """Depth-first extension of center prefixes; every check is prefix-closed."""
    adj = g.adj
    centers: list[int] = []
    terms: list[frozenset[int]] = []

    def admissible(c: int) -> bool:
        nc = adj[c]
        p = len(centers)
        if not nc or c in centers:
            return False
        if any(c in t for t in terms) or any(u in nc for u in centers):
            return False
        if p >= 1:
            prev = terms[-1]
            if not nc & prev or not prev - nc or not nc - prev:
                return False
            if p == 1 and len(prev - nc) != 1:
                return False
            if p >= 2 and not (prev - terms[-2]) <= nc:
                return False
            for q in range(p - 1):
                if q == 0 and p == length - 1:
                    continue
                if terms[q] & nc:
                    return False
        if p == length - 1:
            last = nc - terms[-1]
            if len(last) != 1:
                return False
            first = terms[0] - (terms[1] if p >= 2 else nc)
            if last == first:
                return False
            if len(frozenset().union(*terms, nc)) < length + 1:
                return False
        return True

    def dfs() -> None:
        counter[0] += 1
        if counter[0] > budget:
            raise _Budget
        if len(centers) == length:
            on_found(tuple(centers))
            return
        if centers:
            cand = sorted({y for x in terms[-1] for y in adj[x]})
        else:
            cand = range(g.n)
        for c in cand:
            if admissible(c):
                centers.append(c)
                terms.append(adj[c])
                dfs()
                centers.pop()
                terms.pop()

    dfs()


def find_t1(g: Graph, length: int, budget: int = 1_000_000) -> ChainSearch:
    """All Type-1 chains of the given length, one per reversal class, sorted by canonical centers."""
    if length < 2:
        raise ValueError("length must be at least 2")
    if budget <= 0:
        raise ValueError("budget must be positive")
    found: set[tuple[int, ...]] = set()
    counter = [0]
    complete = True
    try:
        _extend(g, length, budget, lambda t: found.add(canonical_centers(t)), counter)
    except _Budget:
        complete = False
    chains = [verify_t1(g, t) for t in sorted(found)]
    return ChainSearch(chains, complete, min(counter[0], budget))


def find_even_t1(g: Graph, budget: int = 1_000_000) -> ChainSearch:
    """First even-length Type-1 chain, trying lengths 2, 4, ... ; empty and complete means none exist."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    used = 0
    length = 2
    # a chain of length L needs L centers plus at least L + 1 term vertices
    while 2 * length + 1 <= g.n:
        hits: list[tuple[int, ...]] = []
        counter = [0]

        def stop(t, hits=hits):
            hits.append(t)
            raise _Found

        try:
            _extend(g, length, budget - used, stop, counter)
        except _Found:
            return ChainSearch([verify_t1(g, hits[0])], True, used + counter[0])
        except _Budget:
            return ChainSearch([], False, budget)
        used += counter[0]
        length += 2
    return ChainSearch([], True, used)


def find_t2(g: Graph, length: int, budget: int = 1_000_000) -> tuple[T2Pair | None, bool]:
    """First Type-2 pair of the given length; second item is False if the chain search was truncated."""
    res = find_t1(g, length, budget)
    oriented = []
    for c in res.chains:
        oriented.append(c.centers)
        oriented.append(c.centers[::-1])
    oriented.sort()
    for a in oriented:
        for b in oriented:
            if a == b:
                continue
            try:
                return verify_t2(g, a, b), res.complete
            except ChainRejected:
                continue
    return None, res.complete


@dataclass(frozen=True)
class IdentityReport:
    # (position i, N_{i+1} \ N_i, N_{i+1} & N_{i+2}) for every i with N_i & N_{i+2} empty
    difference_identities: tuple[tuple[int, frozenset[int], frozenset[int]], ...]
    # (position i, N_{i+2} \ N_{i+1}, N_{i+1} \ N_i) where N_{i+2} splits into these two
    splits: tuple[tuple[int, frozenset[int], frozenset[int]], ...]
    partitions_checked: int

    @property
    def vacuous(self) -> bool:
        return not self.difference_identities


def proof_identities_check(c: ChainT1) -> IdentityReport:
    """Check the set identities used to propagate equal term sums along a chain.

    Raises :class:`IdentityFailure` on any violation, which would mean the
    chain was accepted wrongly.
    """
    N = c.terms.terms
    n = len(N)
    checks = 0
    for i in range(n - 1):
        for a, b in ((i, i + 1), (i + 1, i)):
            only, both = N[a] - N[b], N[a] & N[b]
            if only & both or (only | both) != N[a]:
                raise IdentityFailure(f"term {a} is not split by term {b}: {_s(only)} / {_s(both)}")
            checks += 1
    diffs = []
    splits = []
    for i in range(n - 2):
        if N[i] & N[i + 2]:
            continue
        lhs, rhs = N[i + 1] - N[i], N[i + 1] & N[i + 2]
        if lhs != rhs:
            raise IdentityFailure(f"position {i}: N_(i+1)\\N_i = {_s(lhs)} but N_(i+1)&N_(i+2) = {_s(rhs)}")
        diffs.append((i, lhs, rhs))
        outer, inner = N[i + 2] - N[i + 1], N[i + 1] - N[i]
        if outer & inner or (outer | inner) != N[i + 2]:
            raise IdentityFailure(f"position {i}: N_(i+2) does not split as {_s(outer)} + {_s(inner)}")
        splits.append((i, outer, inner))
    return IdentityReport(tuple(diffs), tuple(splits), checks)
