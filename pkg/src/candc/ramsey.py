"""Monochromatic non-nested matchings in 2-colored ordered complete graphs.

Vertices are 1..m in their natural order.  Colors are 0 (red) and 1 (blue);
a coloring stores one color per pair i < j in lexicographic order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import kernels

RED, BLUE = 0, 1

WITNESS = "witness-found"
EXHAUSTED = "exhausted-none"
BUDGET = "budget-exceeded"

_STATUS = {kernels.FOUND: WITNESS, kernels.EXHAUSTED: EXHAUSTED, kernels.BUDGET: BUDGET}


def pairs(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]


@dataclass(frozen=True)
class OrderedTwoColoring:
    m: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.colors) != self.m * (self.m - 1) // 2:
            raise ValueError(f"need {self.m * (self.m - 1) // 2} pair colors, got {len(self.colors)}")
        if any(c not in (RED, BLUE) for c in self.colors):
            raise ValueError("colors must be 0 or 1")

    @classmethod
    def from_function(cls, m: int, fn: Callable[[int, int], int]) -> "OrderedTwoColoring":
        return cls(m, tuple(fn(i, j) for i, j in pairs(m)))

    def index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        # pairs before row i, then offset within the row
        return (i - 1) * self.m - (i - 1) * i // 2 + (j - i - 1)

    def color(self, i: int, j: int) -> int:
        return self.colors[self.index(i, j)]

    def reversed(self) -> "OrderedTwoColoring":
        m = self.m
        return OrderedTwoColoring.from_function(m, lambda i, j: self.color(m + 1 - j, m + 1 - i))

    def swapped(self) -> "OrderedTwoColoring":
        return OrderedTwoColoring(self.m, tuple(1 - c for c in self.colors))

    def restrict(self, k: int) -> "OrderedTwoColoring":
        """Coloring induced on vertices 1..k."""
        return OrderedTwoColoring.from_function(k, self.color)

    def as_string(self) -> str:
        return "".join(str(c) for c in self.colors)

    @classmethod
    def from_string(cls, m: int, s: str) -> "OrderedTwoColoring":
        return cls(m, tuple(int(ch) for ch in s))


@dataclass(frozen=True)
class NonNestedMatching:
    edges: tuple[tuple[int, int], ...]
    color: int


def nested(e: tuple[int, int], f: tuple[int, int]) -> bool:
    (i, j), (s, t) = sorted(e), sorted(f)
    return i < s < t < j or s < i < j < t


def check_matching(c: OrderedTwoColoring, mt: NonNestedMatching) -> bool:
    """Independent check of the three matching invariants."""
    verts = [v for e in mt.edges for v in e]
    if len(verts) != len(set(verts)):
        return False
    if any(not (1 <= v <= c.m) for v in verts):
        return False
    if any(c.color(i, j) != mt.color for i, j in mt.edges):
        return False
    return not any(nested(e, f) for e, f in itertools.combinations(mt.edges, 2))


def max_mono_nonnested(c: OrderedTwoColoring) -> tuple[int, NonNestedMatching]:
    if c.m < 2:
        raise ValueError("need m >= 2")
    size, color, edges = kernels.nonnested_max(c.m, list(c.colors))
    mt = NonNestedMatching(tuple((i + 1, j + 1) for i, j in edges), color)
    return size, mt


def has_mono_nonnested(c: OrderedTwoColoring, n: int) -> bool:
    """Independent check: is there a monochromatic non-nested n-matching?
    Plain search over n-subsets of each color class (fine for small n)."""
    for color in (RED, BLUE):
        es = [p for p in pairs(c.m) if c.color(*p) == color]
        for sub in itertools.combinations(es, n):
            if check_matching(c, NonNestedMatching(sub, color)):
                return True
    return False


def brute_force_max(c: OrderedTwoColoring) -> int:
    """Oracle: try every edge subset of each color class, largest first."""
    best = 0
    for color in (RED, BLUE):
        es = [p for p in pairs(c.m) if c.color(*p) == color]
        for k in range(c.m // 2, best, -1):
            if any(check_matching(c, NonNestedMatching(sub, color))
                   for sub in itertools.combinations(es, k)):
                best = k
                break
    return best


@dataclass
class AvoidResult:
    m: int
    n: int
    status: str
    coloring: OrderedTwoColoring | None
    nodes: int


def find_avoiding_coloring(m: int, n: int, budget: int = 0,
                           prefix: Sequence[int] = ()) -> AvoidResult:
    """Search for a coloring of ordered K_m without a monochromatic
    non-nested n-matching.  ``budget`` caps DFS nodes (0 = none)."""
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    if m > 62:
        raise ValueError("m > 62 is outside the bitmask kernels")
    status, colors, nodes = kernels.ramsey_avoid(m, n, budget, list(prefix))
    col = OrderedTwoColoring(m, tuple(colors)) if status == kernels.FOUND else None
    return AvoidResult(m, n, _STATUS[status], col, nodes)


def split_search(m: int, n: int, depth: int, budget: int = 0) -> AvoidResult:
    """Same answer as find_avoiding_coloring, run as 2**(depth-1) subtasks
    pinned on the first ``depth`` pairs (pair 1 is fixed red)."""
    total = 0
    over = False
    for tail in itertools.product((RED, BLUE), repeat=max(depth - 1, 0)):
        res = find_avoiding_coloring(m, n, budget, (RED,) + tail)
        total += res.nodes
        if res.status == WITNESS:
            res.nodes = total
            return res
        over = over or res.status == BUDGET
    return AvoidResult(m, n, BUDGET if over else EXHAUSTED, None, total)


@dataclass
class RamseyValue:
    n: int
    value: int | None
    status: str  # "resolved" or "unresolved"
    largest_avoidable: int | None
    steps: list[AvoidResult] = field(default_factory=list)

    @property
    def nodes(self) -> int:
        return sum(s.nodes for s in self.steps)


def ramsey_value(n: int, m_cap: int | None = None, budget: int = 0) -> RamseyValue:
    """Least m such that every 2-coloring of ordered K_m has a monochromatic
    non-nested n-matching.

    Scans upward from 3n-2.  An avoiding coloring at m restricts to one at
    every smaller m, so a witness at 3n-2 settles everything below.
    """
    if n < 1:
        raise ValueError("n >= 1")
    if m_cap is None:
        m_cap = 4 * n - 2
    if m_cap < 3 * n - 1:
        raise ValueError("m_cap must be at least 3n-1")
    steps: list[AvoidResult] = []
    largest = None
    start = max(3 * n - 2, 2)
    for m in range(start, m_cap + 1):
        res = find_avoiding_coloring(m, n, budget)
        steps.append(res)
        if res.status == WITNESS:
            largest = m
            continue
        if res.status == EXHAUSTED:
            return RamseyValue(n, m, "resolved", largest, steps)
        return RamseyValue(n, None, "unresolved", largest, steps)
    return RamseyValue(n, None, "unresolved", largest, steps)


def all_colorings(m: int) -> Iterable[OrderedTwoColoring]:
    for bits in itertools.product((RED, BLUE), repeat=m * (m - 1) // 2):
        yield OrderedTwoColoring(m, bits)


def brute_force_value(n: int, m_max: int) -> int | None:
    """Oracle for small n: exhaust every coloring of K_m for m = 2, 3, ..."""
    for m in range(2, m_max + 1):
        if all(brute_force_max(c) >= n for c in all_colorings(m)):
            return m
    return None


def prop12_threshold(n: int) -> int:
    """Smallest integer m with m > (2 + sqrt 3) n."""
    return math.floor((2 + math.sqrt(3)) * n) + 1
