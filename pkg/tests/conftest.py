import random
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from magicchains.graph_core import (
    Graph,
    complete_graph,
    cycle_graph,
    cylindrical_grid,
    empty_graph,
    from_edge_list,
    grid_graph,
    path_graph,
    star_graph,
)
from magicchains.magic_solver import solve_exhaustive

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion name -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return from_edge_list(n, edges)


def named_graphs(max_n: int = 9) -> list[tuple[str, Graph]]:
    out = []
    for n in range(1, max_n + 1):
        out.append((f"P{n}", path_graph(n)))
        out.append((f"K{n}", complete_graph(n)))
        out.append((f"E{n}", empty_graph(n)))
        if n >= 3:
            out.append((f"C{n}", cycle_graph(n)))
        if n >= 2:
            out.append((f"S{n - 1}", star_graph(n - 1)))
    for k in range(1, 4):
        for n in range(3, 10):
            if k * n <= max_n:
                out.append((f"P{k}xC{n}", cylindrical_grid(k, n)))
    for a in range(2, 4):
        for b in range(a, 5):
            if a * b <= max_n:
                out.append((f"P{a}xP{b}", grid_graph(a, b)))
    return out


@lru_cache(maxsize=1)
def desk_corpus() -> tuple[tuple[str, Graph], ...]:
    """Named generators plus 220 seeded random graphs on 4..9 vertices."""
    rng = random.Random(20240611)
    out = list(named_graphs())
    for idx in range(220):
        n = rng.randint(4, 9)
        p = rng.choice([0.25, 0.4, 0.5, 0.6, 0.75])
        out.append((f"rand{idx}_n{n}", random_graph(n, p, rng)))
    return tuple(out)


@lru_cache(maxsize=None)
def oracle(g: Graph):
    return solve_exhaustive(g)


@pytest.fixture(scope="session")
def corpus():
    return desk_corpus()


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edge_list(n, [e for e, keep in zip(pairs, mask) if keep])
