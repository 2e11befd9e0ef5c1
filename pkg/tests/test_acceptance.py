"""Acceptance criteria 1-10.  Each test carries a ``criterion`` marker; the
terminal summary prints one PASS/FAIL line per criterion."""
import os
import time
from fractions import Fraction

import pytest
import sympy

from candc.alon_tarsi import (at_coefficient, balanced_exponents, expectation_experiment,
                              random_multigraph)
from candc.cli import main
from candc.flow_pair import WITNESS as FP_WITNESS, find_flow_pair, validate_pair
from candc.graph import Graph, bridges, classify, complete_bipartite, complete_graph, cube, cycle_graph, \
    prism, truncate, write_graph6_file
from candc.group_conn import (BICRITICAL, Z2Z2, Z4, almost_connected, count_solutions,
                              criticality_class)
from candc.homogeneous import EXHAUSTED as H_EXHAUSTED, has_obstruction, is_homogeneous, \
    min_homogeneous_colors
from candc.named import load_corpus, named
from candc.ramsey import EXHAUSTED, all_colorings, brute_force_value, has_mono_nonnested, \
    ramsey_value
from candc.reports import deterministic_body, read_reports, revalidate
from candc.strong_color import brute_force_colorable, hunt_counterexample
from candc.strong_edge import is_strong_edge_coloring, strong_chromatic_index

criterion = pytest.mark.criterion


def complete_multipartite_222():
    return Graph(6, tuple((a, b) for a in range(6) for b in range(a + 1, 6) if b != a + 3))


def _elapsed(t0):
    return time.perf_counter() - t0


# ------------------------------------------------------------ 1

@criterion(1, "ordered Ramsey values for n = 1, 2, 3")
def test_criterion_1_ramsey_values():
    t0 = time.perf_counter()
    r1 = ramsey_value(1)
    assert r1.value == 2 and _elapsed(t0) < 1

    t0 = time.perf_counter()
    r2 = ramsey_value(2)
    # full exhaustion of every 2-coloring of K_4, K_5, K_6
    avoiders = {m: sum(1 for c in all_colorings(m) if not has_mono_nonnested(c, 2))
                for m in (4, 5, 6)}
    assert avoiders[4] > 0 and avoiders[5] == 0 and avoiders[6] == 0
    oracle = brute_force_value(2, 6)
    assert r2.value == oracle == 5
    assert 5 <= r2.value <= 6
    assert _elapsed(t0) < 60

    t0 = time.perf_counter()
    r3 = ramsey_value(3)
    assert r3.status == "resolved"
    assert r3.steps[-1].status == EXHAUSTED
    assert 8 <= r3.value <= 10
    assert _elapsed(t0) < 3600


# ------------------------------------------------------------ 2

@criterion(2, "exhaustive two-cycle-union mean coefficient is 0 for n = 5, 6")
@pytest.mark.parametrize("n,count", [(5, 144), (6, 3600)])
def test_criterion_2_alon_tarsi_mean(n, count):
    t0 = time.perf_counter()
    st = expectation_experiment(n, "exhaustive")
    assert st.count == count
    assert isinstance(st.mean, Fraction)
    assert _elapsed(t0) < 300
    assert st.mean == 0, f"n={n}: exact mean {st.mean}"


# ------------------------------------------------------------ 3

def _sympy_coefficient(g, exponent):
    xs = sympy.symbols(f"x0:{g.n}")
    poly = sympy.Integer(1)
    for a, b in g.edges:
        a, b = min(a, b), max(a, b)
        poly *= xs[a] - xs[b]
    p = sympy.Poly(sympy.expand(poly), *xs)
    return int(p.coeff_monomial(sympy.Mul(*[x ** e for x, e in zip(xs, exponent)])))


@criterion(3, "signed orientation count equals symbolic expansion on 50 multigraphs")
def test_criterion_3_alon_tarsi_oracle():
    t0 = time.perf_counter()
    nonzero = 0
    for seed in range(50):
        n = 3 + seed % 5
        m = 6 + seed % 7  # 6..12 edges
        g = random_multigraph(n, m, seed)
        x = balanced_exponents(g, seed)
        ours = at_coefficient(g, x).coefficient
        assert ours == _sympy_coefficient(g, x), (seed, g.edges, x)
        nonzero += ours != 0
    assert nonzero > 0
    assert _elapsed(t0) < 300


# ------------------------------------------------------------ 4

@criterion(4, "strong coloring: s=5 always 5-colorable to n=15, s=3 hunter finds a 3-uncolorable case")
def test_criterion_4_strong_coloring():
    t0 = time.perf_counter()
    five = hunt_counterexample(5, 5, 15)
    assert five.status == "exhausted-none"
    assert set(five.per_n) == {5, 10, 15}
    three = hunt_counterexample(3, 3, 12)
    assert three.status == "witness-found"
    assert three.witness.n <= 12
    assert not brute_force_colorable(three.witness, 3)
    assert _elapsed(t0) < 1800


# ------------------------------------------------------------ 5

@criterion(5, "strong chromatic index: prism 9, truncations 6")
def test_criterion_5_strong_edge():
    t0 = time.perf_counter()
    res = strong_chromatic_index(prism(3))
    assert res.k == 9 and _elapsed(t0) < 60
    graphs = [g for name in ("cubic04.g6", "cubic06.g6", "cubic08.g6", "cubic10.g6")
              for g in load_corpus(name)]
    assert len(graphs) == 1 + 2 + 5 + 19
    graphs += [prism(q) for q in range(3, 9)]
    for g in graphs:
        t0 = time.perf_counter()
        tg = truncate(g)
        res = strong_chromatic_index(tg)
        assert res.k == 6, g.name
        assert is_strong_edge_coloring(tg, res.witness.colors)
        assert _elapsed(t0) < 60


# ------------------------------------------------------------ 6

@criterion(6, "homogeneous: bipartite cubic <= 6 colors, obstruction graphs and K4 excluded")
def test_criterion_6_homogeneous():
    t0 = time.perf_counter()
    bip = [g for n in (6, 8, 10, 12, 14) for g in load_corpus(f"bipartite_cubic{n:02d}.g6")]
    assert len(bip) == 1 + 1 + 2 + 5 + 13
    for g in bip:
        c, res = min_homogeneous_colors(g, 2, 6)
        assert c is not None and c <= 6, g.name
        assert is_homogeneous(g, res.coloring.colors, 2)
    hosts = [g for name in ("cubic04.g6", "cubic06.g6", "cubic08.g6", "cubic10.g6", "cubic12.g6")
             for g in load_corpus(name) if has_obstruction(g)]
    assert hosts
    for g in hosts:
        # a coloring never needs more colors than vertices, so c_max = n is exhaustive
        c, res = min_homogeneous_colors(g, 2, g.n)
        assert c is None and res.status == H_EXHAUSTED, g.name
    c, res = min_homogeneous_colors(complete_graph(4), 2, 4)
    assert c is None and res.status == H_EXHAUSTED
    assert _elapsed(t0) < 1800


# ------------------------------------------------------------ 7

@criterion(7, "flow pairs on Petersen and every bridgeless class-2 cubic graph up to 20 vertices")
def test_criterion_7_flow_pairs():
    t0 = time.perf_counter()
    graphs = [named(x) for x in ("Petersen", "Tietze", "Blanusa1", "Blanusa2", "J5")]
    for name in ("cubic04.g6", "cubic06.g6", "cubic08.g6", "cubic10.g6", "cubic12.g6"):
        for g in load_corpus(name):
            if classify(g).class1 is False and not bridges(g):
                graphs.append(g)
    assert len(graphs) > 5
    for g in graphs:
        assert g.n <= 20
        res = find_flow_pair(g)
        assert res.status == FP_WITNESS, g.name
        cert = validate_pair(g, res.pair)
        assert all(1 <= abs(x) <= 4 for x in cert.values)
    assert _elapsed(t0) < 1800


# ------------------------------------------------------------ 8

@criterion(8, "Petersen almost connected for both groups, Tietze not, counting identity")
def test_criterion_8_group_connectivity():
    g = named("Petersen")
    for group in (Z4, Z2Z2):
        t0 = time.perf_counter()
        res = almost_connected(g, group)
        assert res.inadmissible == ["0" * 10]
        assert res.verdict is True
        assert _elapsed(t0) < 600
    for group in (Z4, Z2Z2):
        assert almost_connected(named("Tietze"), group).verdict is False
    small = [cycle_graph(3), cycle_graph(4), cycle_graph(5), complete_graph(4),
             complete_bipartite(2, 3), prism(3), named("K33"), cube(), prism(4),
             complete_bipartite(2, 4)]
    for h in small:
        assert h.m <= 12
        for group in (Z4, Z2Z2):
            assert int(count_solutions(h, group).sum()) == 3 ** h.m


# ------------------------------------------------------------ 9

@criterion(9, "Petersen and both Blanusa snarks bicritical; Blanusa almost connected")
def test_criterion_9_criticality_petersen():
    assert criticality_class(named("Petersen")).cls == BICRITICAL


@criterion(9, "Petersen and both Blanusa snarks bicritical; Blanusa almost connected")
@pytest.mark.slow
@pytest.mark.parametrize("which", ["Blanusa1", "Blanusa2"])
def test_criterion_9_blanusa(which, tmp_path):
    g = named(which)
    assert criticality_class(g).cls == BICRITICAL
    for group in (Z4, Z2Z2):
        res = almost_connected(g, group, checkpoint=str(tmp_path / group.kind))
        assert res.inadmissible == ["0" * 18], (which, group.kind)
        assert res.verdict is True
        assert os.path.exists(tmp_path / group.kind / "state.json")


# ------------------------------------------------------------ 10

RUNS = [
    ["ramsey", "--n", "2", "--find-value"],
    ["ramsey", "--n", "3", "--m", "10"],
    ["alon-tarsi", "--n", "5", "--exhaustive"],
    ["alon-tarsi", "--n", "6", "--samples", "200", "--seed", "11"],
    ["alon-tarsi", "--graph", "EVEN"],
    ["strong-color", "--s", "3", "--k", "3", "--nmax", "12"],
    ["strong-color", "--s", "4", "--k", "4", "--nmax", "12", "--random", "40", "--seed", "3"],
    ["strong-edge", "--graph", "prism3", "--truncate-corpus", "cubic10.g6", "--prisms", "8"],
    ["homogeneous", "--scan", "bipartite_cubic14.g6"],
    ["homogeneous", "--graph", "cubic12.g6", "--cmax", "4"],
    ["flow-pair", "--graph", "cubic12.g6"],
    ["flow-pair", "--graph", "Petersen", "--all"],
    ["group-conn", "--graph", "Petersen", "--group", "both"],
    ["group-conn", "--graph", "Tietze", "--group", "both"],
    ["group-conn", "--graph", "prism4", "--group", "z2z2", "--method", "per-boundary"],
    ["group-conn", "--classify", "cubic10.g6"],
]


@criterion(10, "identical configs give identical reports; revalidate passes on every witness")
def test_criterion_10_determinism_and_revalidation(tmp_path):
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    even = tmp_path / "even.g6"
    # K5 and the octahedron: every degree even
    write_graph6_file(str(even), [complete_graph(5), complete_multipartite_222()])
    for argv in RUNS:
        argv = [str(even) if x == "EVEN" else x for x in argv]
        main(argv + ["--out", a])
        main(argv + ["--out", b])
    la = open(os.path.join(a, "results.jsonl"), encoding="utf-8").read().splitlines()
    lb = open(os.path.join(b, "results.jsonl"), encoding="utf-8").read().splitlines()
    assert len(la) == len(lb) > len(RUNS)
    assert [deterministic_body(x) for x in la] == [deterministic_body(x) for x in lb]
    reps = [r for _, r in read_reports(os.path.join(a, "results.jsonl"))]
    witnessed = [r for r in reps if r.witness is not None]
    assert len(witnessed) > len(RUNS)
    verdicts = revalidate(os.path.join(a, "results.jsonl"))
    assert len(verdicts) == len(reps)
    failed = [v.message for v in verdicts if not v.ok]
    assert failed == []
