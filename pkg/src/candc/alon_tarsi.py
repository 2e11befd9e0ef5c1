"""Coefficients of the graph polynomial via signed orientation counts.

For P_G = prod over edges of (a - b) with a < b, choosing ``a`` from a factor
orients the edge a -> b (sign +1), choosing ``b`` orients it b -> a (sign -1).
So the coefficient of prod v^{x(v)} is the signed number of orientations
with out-degree x(v) at every vertex.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .graph import Graph, GraphError, all_two_cycle_unions, random_two_cycle_union

COMPUTED = "computed"
TRIVIAL_ZERO = "trivial-zero"


@dataclass(frozen=True)
class CoefficientResult:
    coefficient: int
    even_count: int
    odd_count: int
    status: str = COMPUTED
    nodes: int = 0

    @property
    def orientation_count(self) -> int:
        return self.even_count + self.odd_count


def _edge_order(g: Graph) -> list[tuple[int, int]]:
    """Canonical (a < b) edges, ordered so vertices close out early."""
    es = [(a, b) if a < b else (b, a) for a, b in g.edges]
    inc = g.incidence()
    # BFS over vertices, emitting edges whose both ends have been reached
    seen = [False] * g.n
    rank = [0] * g.n
    order = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            v = queue.pop(0)
            rank[v] = len(order)
            order.append(v)
            for eid in inc[v]:
                a, b = es[eid]
                w = b if a == v else a
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return sorted(es, key=lambda e: (max(rank[e[0]], rank[e[1]]), min(rank[e[0]], rank[e[1]])))


def at_coefficient(g: Graph, exponent: Sequence[int] | None = None) -> CoefficientResult:
    """Coefficient of prod v^exponent(v) in the graph polynomial of g.

    Default exponent is half the degree.  An exponent vector whose sum is not
    |E| gives a structurally zero coefficient, reported as TRIVIAL_ZERO.
    """
    deg = g.degrees()
    if exponent is None:
        if any(d % 2 for d in deg):
            raise GraphError("default exponents need all degrees even")
        exponent = [d // 2 for d in deg]
    exponent = list(exponent)
    if len(exponent) != g.n:
        raise ValueError("one exponent per vertex")
    if sum(exponent) != g.m or any(x < 0 for x in exponent):
        return CoefficientResult(0, 0, 0, TRIVIAL_ZERO)
    es = _edge_order(g)
    ea = [a for a, _ in es]
    eb = [b for _, b in es]
    if g.m < 63:
        even, odd, nodes = kernels.at_count(g.n, ea, eb, exponent)
    else:
        # Python ints cannot overflow
        from . import _pykernels
        even, odd, nodes = _pykernels.at_count(g.n, ea, eb, exponent)
    return CoefficientResult(even - odd, even, odd, COMPUTED, nodes)


def reference_coefficient(g: Graph, exponent: Sequence[int] | None = None) -> int:
    """Coefficient of prod (a - b) over the stored pairs (a, b), i.e. with the
    graph's own reference orientation instead of the a < b convention."""
    flips = sum(1 for a, b in g.edges if a > b)
    c = at_coefficient(g, exponent).coefficient
    return -c if flips % 2 else c


def symbolic_coefficient(g: Graph, exponent: Sequence[int] | None = None) -> int:
    """Expand prod (a - b) monomial by monomial and read off one coefficient.

    Kept deliberately naive: a dict from exponent tuples to coefficients,
    multiplied factor by factor.  Used as the oracle for at_coefficient.
    """
    if exponent is None:
        exponent = [d // 2 for d in g.degrees()]
    target = tuple(exponent)
    poly: dict[tuple[int, ...], int] = {tuple([0] * g.n): 1}
    for a, b in g.edges:
        if a > b:
            a, b = b, a
        nxt: dict[tuple[int, ...], int] = {}
        for mono, coef in poly.items():
            for v, sgn in ((a, 1), (b, -1)):
                if mono[v] >= target[v]:
                    continue  # cannot reach the target monomial
                key = mono[:v] + (mono[v] + 1,) + mono[v + 1:]
                nxt[key] = nxt.get(key, 0) + sgn * coef
        poly = {k: c for k, c in nxt.items() if c}
    return poly.get(target, 0)


@dataclass
class ExpectationStats:
    n: int
    mode: str
    count: int
    mean: Fraction
    variance: Fraction
    fraction_nonzero: Fraction
    histogram: dict[int, int]

    def histogram_csv(self) -> str:
        rows = ["coefficient,count"]
        rows += [f"{k},{v}" for k, v in sorted(self.histogram.items())]
        return "\n".join(rows) + "\n"

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "count": self.count,
            "mean": str(self.mean),
            "variance": str(self.variance),
            "fraction_nonzero": str(self.fraction_nonzero),
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def _stats(n: int, mode: str, values: Iterable[int]) -> ExpectationStats:
    hist = Counter(values)
    count = sum(hist.values())
    total = sum(k * v for k, v in hist.items())
    mean = Fraction(total, count)
    var = Fraction(sum(v * k * k for k, v in hist.items()), count) - mean * mean
    nz = Fraction(sum(v for k, v in hist.items() if k != 0), count)
    return ExpectationStats(n, mode, count, mean, var, nz, dict(hist))


EXHAUSTIVE_CAP = 7


def expectation_experiment(n: int, mode: str = "exhaustive", samples: int = 0,
                           seed: int = 0, orientation: str = "canonical") -> ExpectationStats:
    """Distribution of the prod v^2 coefficient over unions of two Hamiltonian
    cycles: every ordered labeled pair (exhaustive) or seeded samples.

    ``orientation="canonical"`` signs every factor as (smaller - larger).
    ``"traversal"`` uses directed cycles, each edge signed along its cycle;
    exhaustive mode then runs over ((n-1)!)**2 ordered pairs.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if orientation not in ("canonical", "traversal"):
        raise ValueError(f"unknown orientation {orientation!r}")
    directed = orientation == "traversal"
    if mode == "exhaustive":
        if n > EXHAUSTIVE_CAP:
            raise ValueError(f"exhaustive mode is capped at n <= {EXHAUSTIVE_CAP}")
        graphs: Iterable[Graph] = all_two_cycle_unions(n, directed=directed)
    elif mode == "sampled":
        if samples <= 0:
            raise ValueError("sampled mode needs samples > 0")
        rng = random.Random(seed)
        graphs = (random_two_cycle_union(n, rng.getrandbits(64), directed=directed)
                  for _ in range(samples))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    coef = reference_coefficient if directed else (lambda g: at_coefficient(g).coefficient)
    label = mode if not directed else f"{mode}/traversal"
    return _stats(n, label, (coef(g) for g in graphs))


def random_multigraph(n: int, m: int, seed: int) -> Graph:
    """Loopless multigraph with m uniformly chosen vertex pairs (test instances)."""
    rng = random.Random(seed)
    es = []
    for _ in range(m):
        a, b = rng.sample(range(n), 2)
        es.append((a, b))
    return Graph(n, tuple(es))


def balanced_exponents(g: Graph, seed: int) -> list[int] | None:
    """A random exponent vector with sum |E| and 0 <= x(v) <= deg(v)."""
    rng = random.Random(seed)
    deg = g.degrees()
    x = [0] * g.n
    slots = [v for v in range(g.n) for _ in range(deg[v])]
    for v in rng.sample(slots, g.m):
        x[v] += 1
    return x


def relabel_sign(perm: Sequence[int], g: Graph) -> int:
    """Sign change of the coefficient under v -> perm[v]: each edge whose
    canonical direction flips contributes a factor -1."""
    flips = sum(1 for a, b in g.edges if (a < b) != (perm[a] < perm[b]))
    return -1 if flips % 2 else 1

