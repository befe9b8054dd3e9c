import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from magicchains.chain_structures import (
    REASONS,
    ChainRejected,
    canonical_centers,
    find_even_t1,
    find_t1,
    find_t2,
    proof_identities_check,
    verify_t1,
    verify_t2,
)
from magicchains.graph_core import (
    complete_graph,
    cycle_graph,
    cylindrical_grid,
    disjoint_union,
    empty_graph,
    from_edge_list,
    relabel,
    star_graph,
)
from magicchains.grid_constructions import construct_t2
from magicchains.nbh_sequences import is_chain

# vertex names used in the worked examples
P4C3_V = {1: (1, 3), 2: (2, 1), 3: (3, 2), 4: (4, 2), 5: (4, 3), 6: (1, 2), 7: (2, 3), 8: (3, 1)}
P3C5_V = {1: (1, 5), 2: (2, 1), 3: (3, 4), 4: (3, 2), 5: (1, 2), 6: (3, 1), 7: (2, 3), 8: (1, 4), 9: (2, 5)}


def vs(g, table, *idx):
    return frozenset(g.grid_vertex(*table[i]) for i in idx)


def at(g, *coords):
    return tuple(g.grid_vertex(i, j) for i, j in coords)


@pytest.fixture
def p4c3():
    g = cylindrical_grid(4, 3)
    return g, at(g, (1, 1), (2, 2), (3, 3), (4, 1))


@pytest.fixture
def p3c5():
    g = cylindrical_grid(3, 5)
    return g, at(g, (1, 1), (2, 2), (3, 3)), at(g, (1, 3), (2, 4), (3, 5))


# --------------------------------------------------------------- worked examples


def test_p4c3_terms(p4c3):
    g, centers = p4c3
    c = verify_t1(g, centers)
    V = P4C3_V
    assert c.terms.terms == (vs(g, V, 1, 2, 6), vs(g, V, 2, 6, 3, 7), vs(g, V, 3, 7, 5, 8), vs(g, V, 4, 5, 8))


def test_p4c3_end_vertices(p4c3):
    g, centers = p4c3
    c = verify_t1(g, centers)
    assert g.label(c.v_first) == "u_1^(3)"
    assert g.label(c.v_last) == "u_4^(2)"


def test_p4c3_consecutive_overlaps(p4c3):
    g, centers = p4c3
    t = verify_t1(g, centers).terms.terms
    V = P4C3_V
    assert [t[i] & t[i + 1] for i in range(3)] == [vs(g, V, 2, 6), vs(g, V, 3, 7), vs(g, V, 5, 8)]


def test_p4c3_nesting_is_proper(p4c3):
    g, centers = p4c3
    c = verify_t1(g, centers)
    t = c.terms.terms
    V = P4C3_V
    assert t[1] - t[0] == vs(g, V, 3, 7) and t[2] - t[1] == vs(g, V, 5, 8)
    assert c.equal_nesting == ()


def test_p3c5_chains(p3c5):
    g, first, second = p3c5
    V = P3C5_V
    a, b = verify_t1(g, first), verify_t1(g, second)
    assert a.terms.terms == (vs(g, V, 1, 2, 5), vs(g, V, 2, 5, 4, 7), vs(g, V, 4, 7, 3))
    assert b.terms.terms == (vs(g, V, 5, 8, 7), vs(g, V, 8, 7, 9, 3), vs(g, V, 9, 3, 6))
    assert (a.v_first, a.v_last) == (g.grid_vertex(1, 5), g.grid_vertex(3, 4))
    assert (g.label(b.v_first), g.label(b.v_last)) == ("u_1^(2)", "u_3^(1)")


def test_p3c5_pair_witnesses(p3c5):
    g, first, second = p3c5
    pair = verify_t2(g, first, second)
    V = P3C5_V
    assert pair.start_witness == vs(g, V, 5) == frozenset({g.grid_vertex(1, 2)})
    assert pair.end_witness == vs(g, V, 3) == frozenset({g.grid_vertex(3, 4)})
    assert pair.interior_witnesses == (vs(g, V, 7),)


def test_same_chain_twice_is_not_a_pair(p3c5):
    g, first, _ = p3c5
    with pytest.raises(ChainRejected) as e:
        verify_t2(g, first, first)
    assert e.value.reason == "start_condition"


def test_pair_length_mismatch():
    g = disjoint_union(cylindrical_grid(3, 5), cylindrical_grid(2, 5))
    a = at(g, (1, 1), (2, 2), (3, 3))
    b = (15, 21)
    verify_t1(g, b)
    with pytest.raises(ChainRejected) as e:
        verify_t2(g, a, b)
    assert e.value.reason == "length_mismatch"


def test_pair_with_bad_first_chain(p3c5):
    g, _, second = p3c5
    with pytest.raises(ChainRejected) as e:
        verify_t2(g, (0, 1), second)
    assert e.value.reason == "first_not_t1"


# ---------------------------------------------------------------- rejections


def test_c4_equal_neighbourhoods_rejected():
    with pytest.raises(ChainRejected) as e:
        verify_t1(cycle_graph(4), (0, 2))
    assert e.value.reason == "end_difference_not_singleton"
    assert e.value.witness["difference"] == []


@pytest.mark.parametrize(
    "centers,reason",
    [
        ((0,), "too_short"),
        ((0, 0), "duplicate_center"),
        ((0, 3), "not_walk"),
    ],
)
def test_rejection_reasons_on_c6(centers, reason):
    with pytest.raises(ChainRejected) as e:
        verify_t1(cycle_graph(6), centers)
    assert e.value.reason == reason
    assert e.value.reason in REASONS


def test_rejects_nesting_violation():
    # N_1 = {1, 2}, N_2 = {2, 3, 4}, N_3 = {4, 5}: the new part {3, 4} of N_2 is not inside N_3
    g = from_edge_list(8, [(0, 1), (0, 2), (6, 2), (6, 3), (6, 4), (7, 4), (7, 5)])
    with pytest.raises(ChainRejected) as e:
        verify_t1(g, (0, 6, 7))
    assert e.value.reason == "nesting_violated"
    assert e.value.witness["difference"] == [3, 4]


def test_rejects_adjacent_centers_in_triangle():
    g = complete_graph(3)
    with pytest.raises(ChainRejected) as e:
        verify_t1(g, (0, 1))
    assert e.value.reason == "center_in_terms"


def test_empty_term_rejected():
    with pytest.raises(ChainRejected) as e:
        verify_t1(empty_graph(3), (0, 1))
    assert e.value.reason == "empty_term"


# ------------------------------------------------------------------- search


def test_find_t1_p2c3_contains_construction():
    g = cylindrical_grid(2, 3)
    res = find_t1(g, 2)
    a, _ = construct_t2(2, 3)
    assert res.complete
    assert canonical_centers(a.centers) in [c.centers for c in res.chains]


def test_find_t1_c4_empty():
    res = find_t1(cycle_graph(4), 2)
    assert res.complete and res.chains == []


def test_find_t1_p4c3_contains_worked_example(p4c3):
    g, centers = p4c3
    res = find_t1(g, 4)
    assert res.complete
    assert canonical_centers(centers) in [c.centers for c in res.chains]


def test_find_even_t1_p2c5():
    res = find_even_t1(cylindrical_grid(2, 5))
    assert res.chain is not None and res.chain.length == 2


def test_find_even_t1_p4c3():
    res = find_even_t1(cylindrical_grid(4, 3))
    assert res.complete and res.chain.length in (2, 4)


def test_find_even_t1_c6_has_length_two_chain():
    # N(0) = {1, 5} and N(2) = {1, 3}: a length-2 chain with ends 5 and 3
    res = find_even_t1(cycle_graph(6))
    assert res.chain is not None and res.chain.centers == (0, 2)
    assert (res.chain.v_first, res.chain.v_last) == (5, 3)


def test_find_even_t1_none_in_c4():
    res = find_even_t1(cycle_graph(4))
    assert res.complete and res.chain is None


def test_budget_exhaustion_is_flagged():
    res = find_t1(cylindrical_grid(4, 5), 4, budget=5)
    assert not res.complete and res.expansions == 5
    even = find_even_t1(cylindrical_grid(4, 5), budget=3)
    assert not even.complete and even.chain is None


def test_search_argument_checks():
    with pytest.raises(ValueError):
        find_t1(cycle_graph(5), 1)
    with pytest.raises(ValueError):
        find_even_t1(cycle_graph(5), budget=0)


def test_find_t2_in_p3c5():
    g = cylindrical_grid(3, 5)
    pair, complete = find_t2(g, 3)
    assert complete and pair is not None
    assert verify_t2(g, pair.first.centers, pair.second.centers) == pair


def test_find_t2_none_in_star():
    pair, complete = find_t2(star_graph(4), 2)
    assert pair is None and complete


def brute_t1(g, length):
    """Reference enumeration of every center tuple (canonical up to reversal)."""
    from itertools import permutations

    out = set()
    for t in permutations(range(g.n), length):
        try:
            verify_t1(g, t)
        except ChainRejected:
            continue
        out.add(canonical_centers(t))
    return sorted(out)


@settings(max_examples=60)
@given(graphs(min_n=3, max_n=7), st.integers(2, 3))
def test_search_matches_brute_force(g, length):
    res = find_t1(g, length)
    assert res.complete
    assert [c.centers for c in res.chains] == brute_t1(g, length)


@given(graphs(min_n=3, max_n=8))
def test_found_chains_verify_and_reverse(g):
    for length in (2, 3, 4):
        for c in find_t1(g, length, budget=20_000).chains:
            assert verify_t1(g, c.centers).centers == c.centers
            rev = verify_t1(g, c.centers[::-1])
            assert (rev.v_first, rev.v_last) == (c.v_last, c.v_first)
            assert is_chain(c.terms)
            proof_identities_check(c)


@given(graphs(min_n=4, max_n=8), st.randoms(use_true_random=False))
def test_relabel_invariance(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    for length in (2, 3):
        mapped = sorted(canonical_centers(tuple(perm[v] for v in c.centers)) for c in find_t1(g, length).chains)
        assert mapped == [c.centers for c in find_t1(h, length).chains]


# --------------------------------------------------------- proof identities


def test_identities_p4c3(p4c3):
    g, centers = p4c3
    rep = proof_identities_check(verify_t1(g, centers))
    V = P4C3_V
    first = rep.difference_identities[0]
    assert first[0] == 0 and first[1] == first[2] == vs(g, V, 3, 7)
    assert not rep.vacuous


def test_identities_p3c5(p3c5):
    g, first, _ = p3c5
    rep = proof_identities_check(verify_t1(g, first))
    assert rep.difference_identities[0][1] == vs(g, P3C5_V, 4, 7)


def test_identities_vacuous_for_length_two():
    c = verify_t1(cylindrical_grid(2, 5), (0, 6))
    assert proof_identities_check(c).vacuous


def test_identities_on_every_grid_chain():
    for k in range(2, 7):
        for n in range(3, 9):
            for diag in construct_t2(k, n):
                proof_identities_check(verify_t1(diag.graph(), diag.centers))


def test_witness_dict_shape(p4c3):
    g, centers = p4c3
    d = verify_t1(g, centers).to_dict()
    assert set(d) == {"centers", "v_first", "v_last", "terms"}
    assert d["centers"] == list(centers)
    assert all(t == sorted(t) for t in d["terms"])
