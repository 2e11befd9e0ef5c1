import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from candc.graph import GraphError
from candc.strong_color import (UnionInstance, block_partitions, brute_force_colorable,
                                build_union, check_strong_coloring, consecutive_cycles,
                                cycle_types, exhaustive_instances, hunt_counterexample,
                                random_instance, strong_colorable)


def test_partition_counts():
    # partitions of n into parts >= 3 (OEIS A008483)
    assert [sum(1 for _ in cycle_types(n)) for n in range(3, 13)] == [1, 1, 1, 2, 2, 3, 4, 5, 6, 9]
    # (n)! / ((s!)**(n/s) (n/s)!)
    for n, s in [(6, 3), (9, 3), (10, 5), (12, 4)]:
        want = math.factorial(n) // (math.factorial(s) ** (n // s) * math.factorial(n // s))
        assert sum(1 for _ in block_partitions(n, s)) == want
    assert list(block_partitions(7, 3)) == []


def test_instance_validation():
    with pytest.raises(GraphError):
        UnionInstance(4, ((0, 1, 2),), ((0, 1), (2, 3)))
    with pytest.raises(GraphError):
        UnionInstance(6, ((0, 1, 2, 3, 4, 5),), ((0, 1, 2), (3, 4), (5,)))
    with pytest.raises(GraphError):
        UnionInstance(4, ((0, 1), (2, 3)), ((0, 1), (2, 3)))
    inst = UnionInstance(4, ((0, 1), (2, 3)), ((0, 2), (1, 3)), d=1)
    assert UnionInstance.from_dict(inst.as_dict()) == inst


@st.composite
def instances(draw, max_n=9):
    s = draw(st.sampled_from([2, 3]))
    n = draw(st.sampled_from([n for n in range(3, max_n + 1) if n % s == 0 and n >= 3]))
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    return random_instance(s, n, rng)


@given(instances(), st.integers(2, 4))
@settings(max_examples=100, deadline=None)
def test_search_agrees_with_brute_force(inst, k):
    res = strong_colorable(inst, k)
    if k < inst.s:
        assert res.status == "precondition-failed"
        return
    ok = brute_force_colorable(inst, k)
    assert (res.status == "witness-found") == ok
    if ok:
        assert check_strong_coloring(inst, res.coloring, k)


def test_checker_rejects_bad_colorings():
    inst = UnionInstance(6, ((0, 1, 2, 3, 4, 5),), ((0, 2, 4), (1, 3, 5)))
    good = strong_colorable(inst, 3)
    assert good.status == "witness-found"
    cols = list(good.coloring)
    assert check_strong_coloring(inst, cols, 3)
    bad = cols[:]
    bad[0] = bad[1]
    assert not check_strong_coloring(inst, bad, 3)
    assert not check_strong_coloring(inst, cols, 2)


def test_union_graph_degree():
    for inst in exhaustive_instances(3, 9):
        g = build_union(inst)
        assert g.is_simple()
        assert all(d <= 4 for d in g.degrees())


def test_consecutive_cycles():
    assert consecutive_cycles((4, 3)) == ((0, 1, 2, 3), (4, 5, 6))


def test_hunt_s3_finds_uncolorable_instance():
    res = hunt_counterexample(3, 3, 12)
    assert res.status == "witness-found"
    assert res.witness.n <= 12
    assert not brute_force_colorable(res.witness, 3)


def test_hunt_s2_k2_and_matching_variant():
    # s = 2 with cycles: an odd cycle already needs 3 colors
    assert hunt_counterexample(2, 2, 6).status == "witness-found"
    # a perfect matching plus disjoint edges is a union of even cycles
    assert hunt_counterexample(2, 2, 8, d=1).status == "exhausted-none"


def test_hunt_budget_and_errors():
    assert hunt_counterexample(3, 4, 12, max_instances=3).status == "budget-exceeded"
    with pytest.raises(ValueError):
        hunt_counterexample(3, 2, 6)
    r = hunt_counterexample(3, 4, 9, strategy="random", seed=5, trials=20)
    assert r.instances == 20
