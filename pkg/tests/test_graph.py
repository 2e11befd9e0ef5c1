import itertools
import math
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from candc.coloring import three_edge_coloring
from candc.graph import (Graph, Graph6Error, GraphError, all_two_cycle_unions, bridges,
                         classify, complete_bipartite, complete_graph, cube, cycle_graph,
                         girth, labeled_cycles, parse_graph6, prism, random_two_cycle_union,
                         read_graph6_file, to_graph6, truncate)
from candc.named import load_corpus, named


def _nx(g: Graph) -> nx.MultiGraph:
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@st.composite
def simple_graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, tuple(sorted(chosen)))


# ------------------------------------------------------------ graph6

@given(simple_graphs(max_n=70))
@settings(max_examples=60, deadline=None)
def test_graph6_round_trip_matches_networkx(g):
    s = to_graph6(g)
    assert parse_graph6(s).edges == g.canonical().edges
    assert parse_graph6(s).n == g.n
    ref = nx.to_graph6_bytes(nx.Graph(_nx(g)), header=False).decode().strip()
    assert s == ref


def test_graph6_known_strings():
    assert parse_graph6("C~").edges == complete_graph(4).edges
    assert to_graph6(named("Petersen")) == nx.to_graph6_bytes(
        nx.Graph(_nx(named("Petersen"))), header=False).decode().strip()
    assert parse_graph6(">>graph6<<C~").n == 4


@pytest.mark.parametrize("text,offset", [
    ("C~ ", None),  # trailing whitespace is stripped, so this parses
    ("C\x7f", 1),
    ("D~", 2),
    ("C~~", 2),
    ("", 0),
])
def test_graph6_error_offsets(text, offset):
    if offset is None:
        assert parse_graph6(text).n == 4
        return
    with pytest.raises(Graph6Error) as err:
        parse_graph6(text)
    assert err.value.offset == offset


def test_graph6_rejects_multigraph():
    with pytest.raises(GraphError):
        to_graph6(Graph(2, ((0, 1), (0, 1))))


def test_read_file_names_by_line(tmp_path):
    p = tmp_path / "x.g6"
    p.write_text("C~\n\nBw\n")
    got = list(read_graph6_file(str(p)))
    assert [ln for ln, _ in got] == [1, 3]
    assert got[1][1].name.endswith(":3")


def test_graph_rejects_loops_and_range():
    with pytest.raises(GraphError):
        Graph(3, ((0, 0),))
    with pytest.raises(GraphError):
        Graph(3, ((0, 3),))


# ------------------------------------------------------------ truncate

@pytest.mark.parametrize("name", ["K4", "K33", "prism3", "cube", "Petersen"])
def test_truncation_shape(name):
    g = named(name)
    t = truncate(g)
    assert t.n == 3 * g.n
    assert t.m == g.m + 3 * g.n
    f = classify(t)
    assert f.cubic and f.claw_free and f.diamond_free
    assert all(d == 3 for d in t.degrees())
    tri = sum(nx.triangles(nx.Graph(_nx(t))).values()) // 3
    assert tri == g.n
    # contracting the triangles gives back g
    back = nx.quotient_graph(nx.Graph(_nx(t)), [set(range(3 * v, 3 * v + 3)) for v in range(g.n)],
                             relabel=True)
    assert nx.is_isomorphic(back, nx.Graph(_nx(g)))


def test_truncate_rejects_non_cubic():
    with pytest.raises(GraphError):
        truncate(cycle_graph(5))


# ------------------------------------------------------------ cycle unions

def test_two_cycle_union_n3_is_doubled_triangle():
    g = random_two_cycle_union(3, seed=7)
    assert sorted(g.edges) == [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]


def test_two_cycle_union_deterministic_and_4_regular():
    a = random_two_cycle_union(9, seed=42)
    b = random_two_cycle_union(9, seed=42)
    assert a.edges == b.edges
    assert all(d == 4 for d in a.degrees())
    assert random_two_cycle_union(9, seed=43).edges != a.edges


def test_labeled_cycle_counts():
    for n in range(3, 8):
        assert len(list(labeled_cycles(n))) == math.factorial(n - 1) // 2
        assert len(list(labeled_cycles(n, directed=True))) == math.factorial(n - 1)
    assert sum(1 for _ in all_two_cycle_unions(5)) == 144


def _cycle_key(edges):
    return frozenset(edges)


def test_two_cycle_union_support_and_uniformity():
    # each undirected labeled 5-cycle should appear with probability 1/12
    n, trials = 5, 100_000
    cycles = {_cycle_key([(min(a, b), max(a, b)) for a, b in zip(c, c[1:] + c[:1])])
              for c in (list(x) for x in labeled_cycles(n))}
    counts = Counter()
    for seed in range(trials):
        g = random_two_cycle_union(n, seed)
        first = _cycle_key(g.edges[:n])
        assert first in cycles
        counts[first] += 1
    assert set(counts) == cycles
    p = 1 / len(cycles)
    sd = math.sqrt(trials * p * (1 - p))
    for c in cycles:
        assert abs(counts[c] - trials * p) < 3 * sd + 1, (counts[c], trials * p)


# ------------------------------------------------------------ classify

def test_classify_examples():
    p = classify(named("Petersen"))
    assert p.cubic and p.bridgeless and p.connected and not p.bipartite
    assert p.girth == 5 and p.class1 is False
    assert classify(named("K33")).bipartite
    assert classify(named("K33")).class1 is True
    assert classify(named("prism3")).girth == 3
    # induced diamonds only: K4 has none, K4 minus an edge is one
    assert classify(named("K4")).diamond_free
    assert not classify(Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)))).diamond_free
    assert classify(named("K4")).claw_free
    assert not classify(complete_bipartite(1, 3)).claw_free
    path = Graph(3, ((0, 1), (1, 2)))
    assert bridges(path) == [0, 1]
    assert girth(path) == math.inf
    assert classify(path).class1 is None
    assert not classify(Graph(4, ((0, 1), (2, 3)))).connected


@given(simple_graphs(max_n=10))
@settings(max_examples=80, deadline=None)
def test_classify_agrees_with_networkx(g):
    h = nx.Graph(_nx(g))
    f = classify(g)
    assert f.bipartite == nx.is_bipartite(h)
    assert f.connected == (g.n == 0 or nx.is_connected(h))
    nx_bridges = {tuple(sorted(e)) for e in nx.bridges(h)}
    assert {g.edges[e] for e in bridges(g)} == nx_bridges
    cyc = nx.girth(h)
    assert f.girth == cyc


def _has_perfect_matching_avoiding(g: Graph):
    """Class 1 oracle for cubic graphs: a perfect matching whose complement
    (a 2-factor) has only even cycles."""
    es = list(g.edges)
    for mt in itertools.combinations(range(len(es)), g.n // 2):
        vs = [v for i in mt for v in es[i]]
        if len(set(vs)) != g.n:
            continue
        rest = nx.Graph([es[i] for i in range(len(es)) if i not in mt])
        if all(len(c) % 2 == 0 for c in nx.connected_components(rest)):
            return True
    return False


@pytest.mark.parametrize("corpus", ["cubic04.g6", "cubic06.g6", "cubic08.g6", "cubic10.g6"])
def test_class1_matches_matching_oracle(corpus):
    for g in load_corpus(corpus):
        ok = _has_perfect_matching_avoiding(g)
        assert classify(g).class1 == ok
        col = three_edge_coloring(g)
        assert (col is not None) == ok
        if col is not None:
            for v, inc in enumerate(g.incidence()):
                assert len({col[e] for e in inc}) == 3


def test_named_snarks_are_class2():
    for name in ("Petersen", "Blanusa1", "Blanusa2", "J5"):
        f = classify(named(name))
        assert f.cubic and f.bridgeless and f.class1 is False, name
    assert classify(named("Tietze")).class1 is False


def test_blanusa_snarks_are_distinct():
    a, b = nx.Graph(_nx(named("Blanusa1"))), nx.Graph(_nx(named("Blanusa2")))
    assert a.number_of_nodes() == b.number_of_nodes() == 18
    assert not nx.is_isomorphic(a, b)
    assert nx.girth(a) == nx.girth(b) == 5


def test_corpus_counts_match_known_enumerations():
    # connected cubic graphs on 4..12 vertices: 1, 2, 5, 19, 85
    for name, cnt in [("cubic04.g6", 1), ("cubic06.g6", 2), ("cubic08.g6", 5),
                      ("cubic10.g6", 19), ("cubic12.g6", 85)]:
        gs = load_corpus(name)
        assert len(gs) == cnt
        hs = [nx.Graph(_nx(g)) for g in gs]
        for a, b in itertools.combinations(hs, 2):
            assert not nx.is_isomorphic(a, b)


def test_prism_and_cube():
    assert prism(5).n == 10 and all(d == 3 for d in prism(5).degrees())
    assert nx.is_isomorphic(nx.Graph(_nx(cube())), nx.hypercube_graph(3))
