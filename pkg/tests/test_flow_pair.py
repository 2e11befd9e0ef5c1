from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from candc.flow_pair import (BUDGET, WITNESS, FlowValidationError, IntegerFlowPair,
                             Phi4Search, brute_force_exists, cycle_space_basis, enumerate_pairs,
                             eulerian_orientation, even_subgraphs, find_flow_pair, net_flow,
                             phi4_domains, validate_pair)
from candc.graph import Graph, GraphError, bridges, complete_graph, cycle_graph, prism
from candc.named import named


def _theta(k: int) -> Graph:
    """Two vertices joined by k parallel edges."""
    return Graph(2, tuple((0, 1) for _ in range(k)))


@st.composite
def bridgeless_graphs(draw, max_n=6, max_beta=4):
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(n, n - 1 + max_beta))
    es = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                       .filter(lambda e: e[0] != e[1]), min_size=m, max_size=m))
    g = Graph(n, tuple(es))
    assume(len(g.components()) == 1 and not bridges(g))
    return g


def test_validate_examples():
    g = cycle_graph(3)  # edges (0,1), (1,2), (0,2)
    pair = IntegerFlowPair((1, 1, -1), (1, 1, -1))
    cert = validate_pair(g, pair)
    assert cert.values == (Fraction(3), Fraction(3), Fraction(-3))
    with pytest.raises(FlowValidationError, match="edge 0"):
        validate_pair(g, IntegerFlowPair((0, 0, 0), (1, 1, -1)))
    with pytest.raises(FlowValidationError, match="vertex"):
        validate_pair(g, IntegerFlowPair((1, 1, 1), (2, 2, -2)))
    with pytest.raises(FlowValidationError, match="not a 4-flow"):
        validate_pair(g, IntegerFlowPair((1, 1, -1), (4, 4, -4)))
    with pytest.raises(FlowValidationError):
        validate_pair(g, IntegerFlowPair((1, 1), (1, 1)))


def test_certificate_range_enforced():
    # phi2 = 1, phi4 = -3 gives (5 - 3) / 2 = 1, fine; (1, 3) gives 4, fine
    g = _theta(2)
    assert validate_pair(g, IntegerFlowPair((1, -1), (3, -3))).values == (4, -4)
    assert validate_pair(g, IntegerFlowPair((1, -1), (-3, 3))).values == (1, -1)
    # phi2 = 0 with |phi4| = 2 gives magnitude 1
    assert validate_pair(g, IntegerFlowPair((0, 0), (2, -2))).values == (1, -1)


@pytest.mark.parametrize("name", ["K4", "K33", "prism3", "cube", "Petersen", "Tietze", "J5"])
def test_named_graphs_have_pairs(name):
    g = named(name)
    res = find_flow_pair(g)
    assert res.status == WITNESS
    cert = validate_pair(g, res.pair)
    assert all(1 <= abs(x) <= 4 for x in cert.values)


@pytest.mark.parametrize("name", ["K4", "Petersen", "prism3"])
def test_tampering_is_detected(name):
    g = named(name)
    pair = find_flow_pair(g).pair
    for e in range(g.m):
        bad = list(pair.phi4)
        bad[e] = bad[e] + 1 if bad[e] < 3 else bad[e] - 1
        with pytest.raises(FlowValidationError):
            validate_pair(g, IntegerFlowPair(pair.phi2, tuple(bad)))


def test_bridge_rejected():
    g = Graph(6, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)))
    with pytest.raises(GraphError, match="bridge"):
        find_flow_pair(g)
    assert not brute_force_exists(g)


def test_cycle_space():
    for g in (complete_graph(4), named("Petersen"), _theta(4), prism(4)):
        beta = g.m - g.n + len(g.components())
        assert len(cycle_space_basis(g)) == beta
        ev = even_subgraphs(g)
        assert len(ev) == 2 ** beta
        assert len(set(ev)) == len(ev)
        sizes = [bin(s).count("1") for s in ev]
        assert sizes == sorted(sizes, reverse=True)
        for s in ev:
            o = eulerian_orientation(g, s)
            assert not any(net_flow(g, o))
            assert [e for e in range(g.m) if o[e]] == [e for e in range(g.m) if s >> e & 1]


@given(bridgeless_graphs())
@settings(max_examples=60, deadline=None)
def test_search_agrees_with_brute_force(g):
    res = find_flow_pair(g)
    assert (res.status == WITNESS) == brute_force_exists(g)
    if res.pair:
        validate_pair(g, res.pair)


@pytest.mark.parametrize("g", [complete_graph(4), _theta(2), _theta(3), _theta(4), cycle_graph(4)],
                         ids=["K4", "theta2", "theta3", "theta4", "C4"])
def test_phi4_search_agrees_with_enumeration(g):
    pairs = list(enumerate_pairs(g))
    search = Phi4Search(g)
    for s in even_subgraphs(g):
        got = search.run(phi4_domains(g.m, s), 0, [0])
        dom = phi4_domains(g.m, s)
        want = any(all(p.phi4[e] in dom[e] for e in range(g.m)) for p in pairs)
        assert (got is not None) == want
        if got is not None:
            assert not any(net_flow(g, got))
            assert all(got[e] in dom[e] for e in range(g.m))


def test_enumeration_finds_search_witness():
    g = _theta(3)
    res = find_flow_pair(g)
    assert res.pair in set(enumerate_pairs(g))


def test_all_supports_and_budget():
    g = named("Petersen")
    res = find_flow_pair(g, all_supports=True)
    assert res.supports_tried == 2 ** 6
    assert 0 < res.extendable <= res.supports_tried
    assert find_flow_pair(g, budget=1).status in (BUDGET, WITNESS)
    assert find_flow_pair(complete_graph(4), budget=0).status == WITNESS


def test_pair_round_trip():
    p = IntegerFlowPair((1, -1, 0), (3, -2, 2))
    assert IntegerFlowPair.from_dict(p.as_dict()) == p
