"""End-to-end acceptance checks.

Each test records one line into ``conftest.ACCEPTANCE``; the lines are
printed in the terminal summary as PASS/FAIL.
"""

import time

import pytest

import ns_fixtures as nsf
from conftest import ACCEPTANCE, desk_corpus, oracle
from magicchains.chain_structures import find_t1, verify_t1, verify_t2
from magicchains.graph_core import (
    TwoTerminalGraph,
    add_vertex,
    amalgamation,
    cycle_graph,
    cylindrical_grid,
    disjoint_union,
    parallel_composition,
    path_graph,
    rooted_product,
    series_composition,
)
from magicchains.grid_constructions import construct_t2
from magicchains.magic_solver import (
    EvenT1Chain,
    certify_ndm,
    check_certificate,
    sample_equal_sum_weightings,
    solve,
    solve_exhaustive,
)
from magicchains.nbh_sequences import is_trail, nsg
from test_nbh_sequences import ATTAINABLE, fixture_family, holds


def record(name: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[name] = (ok, detail)


# 1 ------------------------------------------------------------------------


def test_grid_t2_box():
    t0 = time.perf_counter()
    bad = []
    for k in range(2, 7):
        for n in range(3, 9):
            a, b = construct_t2(k, n)
            try:
                verify_t2(cylindrical_grid(k, n), a.centers, b.centers)
            except Exception as e:  # noqa: BLE001 - any rejection is a failure here
                bad.append((k, n, str(e)))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    record("grid T2 box (30 instances)", ok, f"{30 - len(bad)}/30 verified in {dt:.3f}s")
    assert ok, bad


# 2 ------------------------------------------------------------------------


def test_worked_examples():
    g = cylindrical_grid(4, 3)
    c = verify_t1(g, [g.grid_vertex(1, 1), g.grid_vertex(2, 2), g.grid_vertex(3, 3), g.grid_vertex(4, 1)])
    t = c.terms.terms
    first = {g.label(v) for v in t[0] - t[1]}
    last = {g.label(v) for v in t[3] - t[2]}
    sizes = [len(t[i] & t[i + 1]) for i in range(3)]

    h = cylindrical_grid(3, 5)
    a, b = construct_t2(3, 5)
    pair = verify_t2(h, a.centers, b.centers)
    wit = (
        {h.label(v) for v in pair.start_witness},
        {h.label(v) for v in pair.end_witness},
        [{h.label(v) for v in w} for w in pair.interior_witnesses],
    )
    ok = (
        first == {"u_1^(3)"}
        and last == {"u_4^(2)"}
        and sizes == [2, 2, 2]
        and wit == ({"u_1^(2)"}, {"u_3^(4)"}, [{"u_2^(3)"}])
    )
    record("worked examples", ok, f"P4xC3 ends {sorted(first)} {sorted(last)} overlaps {sizes}; P3xC5 witnesses {wit}")
    assert ok


# 3 ------------------------------------------------------------------------


def test_small_cylinders_not_magic_with_chain():
    rows = []
    ok = True
    for k, n, how in ((2, 3, "oracle"), (2, 4, "oracle"), (2, 5, "oracle"), (4, 3, "backtrack")):
        g = cylindrical_grid(k, n)
        t0 = time.perf_counter()
        res = solve_exhaustive(g) if how == "oracle" else solve(g)
        dt = time.perf_counter() - t0
        cert = certify_ndm(g)
        good = not res.magic and isinstance(cert, EvenT1Chain) and check_certificate(g, cert)
        good = good and (how == "oracle" or dt < 300)
        ok &= good
        length = cert.chain.length if isinstance(cert, EvenT1Chain) else None
        rows.append(f"P{k}xC{n} {how} {res.verdict} {dt:.2f}s chain={length}")
    record("cylinders P2xC3..5, P4xC3 not magic + even chain", ok, "; ".join(rows))
    assert ok


# 4 ------------------------------------------------------------------------


def test_p3c3_and_p2c4_not_magic():
    rows = []
    ok = True
    for k, n in ((3, 3), (2, 4)):
        g = cylindrical_grid(k, n)
        a, b = solve(g), solve_exhaustive(g)
        good = not a.magic and not b.magic
        ok &= good
        rows.append(f"P{k}xC{n} solve={a.verdict} oracle={b.verdict} ({b.stats['labelings']} labelings)")
    record("P3xC3 and P2xC4 not magic", ok, "; ".join(rows))
    assert ok


# 5 ------------------------------------------------------------------------


def test_certificate_soundness_sweep():
    corpus = desk_corpus()
    randoms = sum(name.startswith("rand") for name, _ in corpus)
    issued = 0
    bad = []
    for name, g in corpus:
        for cap in (10, 0):
            cert = certify_ndm(g, oracle_cap=cap)
            if cert is None:
                continue
            issued += 1
            if oracle(g).magic or not check_certificate(g, cert):
                bad.append((name, cap, type(cert).__name__))
    ok = not bad and randoms >= 200
    record("certificate soundness sweep", ok, f"{len(corpus)} graphs ({randoms} random), {issued} certificates, {len(bad)} counterexamples")
    assert ok, bad


# 6 ------------------------------------------------------------------------


def test_oracle_equivalence():
    corpus = desk_corpus()
    bad = []
    for name, g in corpus:
        a, b = solve(g), oracle(g)
        if a.magic != b.magic or (a.magic and a.labeling != b.labeling):
            bad.append(name)
    magic = sum(oracle(g).magic for _, g in corpus)
    ok = not bad
    record("solve vs oracle on corpus", ok, f"{len(corpus) - len(bad)}/{len(corpus)} agree ({magic} magic)")
    assert ok, bad


# 7 ------------------------------------------------------------------------


def corpus_even_chains():
    graphs = list(desk_corpus()) + [(f"P{k}xC{n}", cylindrical_grid(k, n)) for k, n in ((2, 3), (2, 4), (2, 5), (4, 3))]
    for name, g in graphs:
        for length in range(2, g.n + 1, 2):
            res = find_t1(g, length)
            assert res.complete
            for c in res.chains:
                yield name, c


def test_even_chain_propagation():
    samples = 50
    chains = 0
    bad = []
    for name, c in corpus_even_chains():
        chains += 1
        for w in sample_equal_sum_weightings(c, samples, seed=chains):
            if len({sum(w[v] for v in t) for t in c.terms.terms}) != 1 or w[c.v_first] != w[c.v_last]:
                bad.append((name, c.centers))
                break
    g = cylindrical_grid(3, 5)
    odd = verify_t1(g, construct_t2(3, 5)[0].centers)
    ws = sample_equal_sum_weightings(odd, samples, seed=0)
    broken = sum(w[odd.v_first] != w[odd.v_last] for w in ws)
    ok = not bad and chains > 0 and broken > 0
    record(
        "even-chain propagation",
        ok,
        f"{chains} even chains x {samples} weightings, {len(bad)} violations; odd P3xC5 chain broken by {broken}/{samples}",
    )
    assert ok, bad


# 8 ------------------------------------------------------------------------


def attainable_mismatches():
    bad = []
    for name, prop, expected in ATTAINABLE:
        for variant in ("one", "wide"):
            if holds(fixture_family(name, variant), prop) != expected:
                bad.append((name, prop, variant))
    for name, branches in nsf.CONDITIONAL_TRAIL.items():
        for variant, expected in branches.items():
            if is_trail(fixture_family(name, variant)) != expected:
                bad.append((name, "trail", variant))
    return bad


def contradictory_mismatches():
    return [(n, p) for n, p, e in nsf.UNCONDITIONAL if (n, p) in nsf.CONTRADICTORY and holds(fixture_family(n), p) != e]


def test_ns_fixture_suite():
    bad = attainable_mismatches()
    clash = contradictory_mismatches()
    total = len(nsf.UNCONDITIONAL)
    ok = not bad and not clash
    record(
        "sequence fixture suite",
        ok,
        f"{total - len(nsf.CONTRADICTORY)}/{total} unconditional verdicts and all conditional branches match; "
        f"unattainable chain verdicts: {sorted(clash)}",
    )
    # the attainable part must hold; the clashing verdicts are tracked below
    assert not bad, bad


@pytest.mark.xfail(strict=True, reason="these chain verdicts contradict other verdicts for any choice of sets")
def test_ns_contradictory_chain_verdicts():
    assert contradictory_mismatches() == []


# 9 ------------------------------------------------------------------------

FACTOR = cylindrical_grid(2, 5)
CENTERS = (0, 6)


def outside_nsg():
    inside = nsg(FACTOR, CENTERS).vertices
    return sorted(set(range(FACTOR.n)) - inside)


def compositions():
    out_a, out_b, *_ = outside_nsg()
    ident = tuple(range(FACTOR.n))
    tt = TwoTerminalGraph(FACTOR, out_a, out_b)
    p3 = TwoTerminalGraph(path_graph(3), 0, 2)
    rooted = rooted_product(path_graph(2), FACTOR, out_a)
    return [
        ("union", disjoint_union(FACTOR, cycle_graph(5)), ident),
        ("amalgamation", *_composed(amalgamation([(FACTOR, out_a), (cycle_graph(4), 0)]), 0)),
        ("supergraph", add_vertex(FACTOR, outside_nsg()[:2]), ident),
        ("series", *_composed(series_composition(tt, p3), 0)),
        ("parallel", *_composed(parallel_composition(tt, p3), 0)),
        ("rooted product", *_composed(rooted, 2)),
        ("union with P4xC3", disjoint_union(cylindrical_grid(4, 3), cycle_graph(5)), None),
    ]


def _composed(comp, part):
    return comp.graph, comp.maps[part]


def test_composition_preservation():
    assert outside_nsg() == [2, 3, 8, 9]
    rows = []
    ok = True
    for family, g, m in compositions():
        if m is None:
            centers = construct_t2(4, 3)[0].centers
        else:
            centers = tuple(m[v] for v in CENTERS)
        try:
            chain = verify_t1(g, centers)
            good = chain.length % 2 == 0
        except Exception:  # noqa: BLE001
            good = False
        cert = certify_ndm(g, oracle_cap=0)
        good = good and cert is not None and check_certificate(g, cert, oracle_cap=0)
        ok &= good
        rows.append(f"{family}: n={g.n} {'ok' if good else 'FAILED'} ({type(cert).__name__})")
    record("composition preservation", ok, "; ".join(rows))
    assert ok, rows
