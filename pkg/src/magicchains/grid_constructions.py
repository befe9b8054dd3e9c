"""Diagonal Type-1 chains in cylindrical grids and the Type-2 pair built from them.

In ``P_k □ C_n`` the centers ``u_1^(j0), u_2^(j0+1), ..., u_k^(j0+k-1)`` step
one row down and one column right; columns wrap modulo ``n`` with
representatives ``1..n`` while rows never wrap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph_core import Graph, GraphError, GridCoord, cylindrical_grid

__all__ = ["GridChainSpec", "col", "diagonal_chain", "construct_t2", "chain_end_sets", "grid_id"]


def col(j: int, n: int) -> int:
    """Column representative in ``1..n``."""
    return (j - 1) % n + 1


def grid_id(i: int, j: int, n: int) -> int:
    """Id of ``u_i^(j)`` in :func:`cylindrical_grid` output (``j`` taken mod ``n``)."""
    return (i - 1) * n + col(j, n) - 1


@dataclass(frozen=True)
class GridChainSpec:
    k: int
    n: int
    start_col: int
    coords: tuple[GridCoord, ...]

    @property
    def centers(self) -> tuple[int, ...]:
        return tuple(grid_id(c.i, c.j, self.n) for c in self.coords)

    def graph(self) -> Graph:
        return cylindrical_grid(self.k, self.n)

    def shifted(self, c: int) -> "GridChainSpec":
        return diagonal_chain(self.k, self.n, col(self.start_col + c, self.n))


def _check(k: int, n: int) -> None:
    if k < 2 or n < 3:
        raise GraphError(f"need k >= 2 and n >= 3, got k={k}, n={n}")


def diagonal_chain(k: int, n: int, start_col: int) -> GridChainSpec:
    _check(k, n)
    if not 1 <= start_col <= n:
        raise GraphError(f"start column must be in 1..{n}, got {start_col}")
    coords = tuple(GridCoord(i, col(start_col + i - 1, n)) for i in range(1, k + 1))
    return GridChainSpec(k, n, start_col, coords)


def construct_t2(k: int, n: int) -> tuple[GridChainSpec, GridChainSpec]:
    """Diagonals starting in columns 1 and 3."""
    _check(k, n)
    return diagonal_chain(k, n, 1), diagonal_chain(k, n, col(3, n))


def chain_end_sets(spec: GridChainSpec) -> tuple[frozenset[int], frozenset[int]]:
    """Closed-form end differences ``{u_1^(j0-1)}`` and ``{u_k^(j0+k)}``."""
    k, n, j0 = spec.k, spec.n, spec.start_col
    return frozenset({grid_id(1, j0 - 1, n)}), frozenset({grid_id(k, j0 + k, n)})
