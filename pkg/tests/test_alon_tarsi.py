from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from candc.alon_tarsi import (TRIVIAL_ZERO, at_coefficient, balanced_exponents,
                              expectation_experiment, random_multigraph, reference_coefficient,
                              relabel_sign, symbolic_coefficient)
from candc.graph import Graph, GraphError, complete_graph, cycle_graph, random_two_cycle_union


def _sympy_coefficient(g: Graph, exponent):
    xs = sympy.symbols(f"x0:{g.n}")
    poly = sympy.Integer(1)
    for a, b in g.edges:
        a, b = min(a, b), max(a, b)
        poly *= xs[a] - xs[b]
    p = sympy.Poly(sympy.expand(poly), *xs)
    return int(p.coeff_monomial(sympy.Mul(*[x ** e for x, e in zip(xs, exponent)])))


@st.composite
def multigraph_and_exponent(draw, max_n=6, max_m=9):
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(1, max_m))
    seed = draw(st.integers(0, 10 ** 6))
    g = random_multigraph(n, m, seed)
    return g, balanced_exponents(g, seed)


@given(multigraph_and_exponent())
@settings(max_examples=40, deadline=None)
def test_matches_sympy_expansion(ge):
    g, x = ge
    assert at_coefficient(g, x).coefficient == _sympy_coefficient(g, x)


@given(multigraph_and_exponent(max_n=7, max_m=12))
@settings(max_examples=120, deadline=None)
def test_matches_naive_expansion(ge):
    g, x = ge
    r = at_coefficient(g, x)
    assert r.coefficient == symbolic_coefficient(g, x)
    assert r.coefficient == r.even_count - r.odd_count


def test_known_values():
    # the two cyclic orientations of C_n carry signs -1 and (-1)**(n-1)
    assert at_coefficient(cycle_graph(3), [1, 1, 1]).coefficient == 0
    assert at_coefficient(cycle_graph(4), [1, 1, 1, 1]).coefficient == -2
    assert at_coefficient(cycle_graph(5), [1] * 5).coefficient == 0
    k5 = complete_graph(5)
    assert at_coefficient(k5).coefficient == _sympy_coefficient(k5, [2] * 5)


def test_trivial_zero_and_errors():
    g = cycle_graph(4)
    r = at_coefficient(g, [2, 2, 2, 2])
    assert r.status == TRIVIAL_ZERO and r.coefficient == 0
    with pytest.raises(GraphError):
        at_coefficient(Graph(3, ((0, 1), (1, 2))))
    with pytest.raises(ValueError):
        at_coefficient(g, [1, 1, 1])


def _disjoint(a: Graph, b: Graph) -> Graph:
    return Graph(a.n + b.n, a.edges + tuple((x + a.n, y + a.n) for x, y in b.edges))


@given(multigraph_and_exponent(max_n=4, max_m=6), multigraph_and_exponent(max_n=4, max_m=6))
@settings(max_examples=60, deadline=None)
def test_multiplicative_over_disjoint_union(ga, gb):
    (a, xa), (b, xb) = ga, gb
    u = _disjoint(a, b)
    assert at_coefficient(u, xa + xb).coefficient == \
        at_coefficient(a, xa).coefficient * at_coefficient(b, xb).coefficient


@given(multigraph_and_exponent(max_n=6, max_m=10), st.randoms())
@settings(max_examples=80, deadline=None)
def test_relabel_changes_only_sign(ge, rnd):
    g, x = ge
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = Graph(g.n, tuple((perm[a], perm[b]) for a, b in g.edges))
    y = [0] * g.n
    for v in range(g.n):
        y[perm[v]] = x[v]
    assert at_coefficient(h, y).coefficient == relabel_sign(perm, g) * at_coefficient(g, x).coefficient


def test_reference_orientation_flip():
    g = cycle_graph(4)
    canon = at_coefficient(g, [1] * 4).coefficient
    one_flip = Graph(4, ((1, 0),) + g.edges[1:])
    two_flips = Graph(4, ((1, 0), (2, 1)) + g.edges[2:])
    assert reference_coefficient(one_flip, [1] * 4) == -canon != 0
    assert reference_coefficient(two_flips, [1] * 4) == canon


def test_two_cycle_union_against_sympy():
    for seed in range(6):
        g = random_two_cycle_union(5, seed)
        assert at_coefficient(g).coefficient == _sympy_coefficient(g, [2] * 5)


def test_expectation_stats_bookkeeping():
    s = expectation_experiment(4)
    assert s.count == 9
    assert sum(s.histogram.values()) == 9
    assert s.mean == Fraction(sum(k * v for k, v in s.histogram.items()), 9)
    t = expectation_experiment(5, mode="sampled", samples=50, seed=3)
    assert t.count == 50
    assert expectation_experiment(5, mode="sampled", samples=50, seed=3).histogram == t.histogram
    with pytest.raises(ValueError):
        expectation_experiment(8)
    assert s.histogram_csv().startswith("coefficient,count\n")


def test_traversal_convention_is_odd_symmetric():
    # reversing one directed cycle negates the coefficient when n is odd,
    # so the traversal mean vanishes for odd n
    for n in (3, 5):
        assert expectation_experiment(n, orientation="traversal").mean == 0
