"""Exact vertex coloring on adjacency lists, plus the edge-coloring helpers
built on it (line graph, 3-edge-colorability)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .graph import Graph

Adjacency = Sequence[Sequence[int]]


@dataclass
class ColorResult:
    status: int  # kernels.FOUND / EXHAUSTED / BUDGET
    colors: list[int] | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == kernels.FOUND


def to_csr(adj: Adjacency) -> tuple[list[int], list[int]]:
    indptr = [0]
    indices: list[int] = []
    for nbrs in adj:
        indices.extend(sorted(set(nbrs)))
        indptr.append(len(indices))
    return indptr, indices


def k_color(adj: Adjacency, k: int, precolor: dict[int, int] | None = None,
            node_limit: int = 0) -> ColorResult:
    """Decide k-colorability exactly; ``precolor`` pins some vertices."""
    n = len(adj)
    if n == 0:
        return ColorResult(kernels.FOUND, [], 0)
    if k <= 0:
        return ColorResult(kernels.EXHAUSTED, None, 0)
    init = [-1] * n
    for v, c in (precolor or {}).items():
        init[v] = c
    indptr, indices = to_csr(adj)
    status, colors, nodes = kernels.color_search(n, indptr, indices, k, init, node_limit)
    return ColorResult(status, colors if status == kernels.FOUND else None, nodes)


def is_proper(adj: Adjacency, colors: Sequence[int], k: int | None = None) -> bool:
    for v, nbrs in enumerate(adj):
        if colors[v] < 0 or (k is not None and colors[v] >= k):
            return False
        for w in nbrs:
            if colors[w] == colors[v]:
                return False
    return True


def greedy_clique(adj: Adjacency) -> list[int]:
    """A maximal clique grown greedily from every start vertex; the largest wins."""
    sets = [set(a) for a in adj]
    best: list[int] = []
    order = sorted(range(len(adj)), key=lambda v: -len(sets[v]))
    for s in order:
        if len(sets[s]) + 1 <= len(best):
            continue
        clique = [s]
        cand = set(sets[s])
        while cand:
            v = max(cand, key=lambda u: (len(sets[u] & cand), -u))
            clique.append(v)
            cand &= sets[v]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def dsatur_greedy(adj: Adjacency) -> list[int]:
    n = len(adj)
    colors = [-1] * n
    seen: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if colors[u] < 0),
                key=lambda u: (len(seen[u]), len(adj[u]), -u))
        c = 0
        while c in seen[v]:
            c += 1
        colors[v] = c
        for w in adj[v]:
            seen[w].add(c)
    return colors


def chromatic_number(adj: Adjacency, lower: int = 0, upper: int | None = None,
                     node_limit: int = 0) -> tuple[int, list[int], list[int], int]:
    """Exact chromatic number.

    Lower bound: greedy clique (pre-colored 0..w-1 to break color symmetry).
    Upper bound: DSATUR greedy.  Returns (chi, coloring, clique, nodes).
    """
    n = len(adj)
    if n == 0:
        return 0, [], [], 0
    clique = greedy_clique(adj)
    pre = {v: i for i, v in enumerate(clique)}
    greedy = dsatur_greedy(adj)
    hi = max(greedy) + 1
    if upper is not None and upper < hi:
        hi = upper
    best = greedy if max(greedy) + 1 <= hi else None
    lo = max(lower, len(clique), 1)
    nodes = 0
    # ascending scan: the first k that colors is optimal
    for k in range(lo, hi + 1):
        if best is not None and k == max(best) + 1:
            return k, best, clique, nodes
        res = k_color(adj, k, pre, node_limit)
        nodes += res.nodes
        if res.status == kernels.BUDGET:
            raise TimeoutError(f"node budget exhausted while deciding k={k}")
        if res.found:
            return k, res.colors, clique, nodes
    if best is None:
        raise ValueError("upper bound below chromatic number")
    return max(best) + 1, best, clique, nodes


def line_graph(g: Graph) -> list[list[int]]:
    """Edges sharing an endpoint are adjacent (parallel edges included)."""
    inc = g.incidence()
    adj: list[set[int]] = [set() for _ in range(g.m)]
    for v in range(g.n):
        for e in inc[v]:
            for f in inc[v]:
                if e != f:
                    adj[e].add(f)
    return [sorted(a) for a in adj]


def three_edge_coloring(g: Graph) -> list[int] | None:
    """A proper 3-edge-coloring by edge id, or None."""
    if any(d > 3 for d in g.degrees()):
        return None
    adj = line_graph(g)
    pre = {}
    inc = g.incidence()
    # the edges at a max-degree vertex get distinct colors anyway
    hub = max(range(g.n), key=lambda v: len(inc[v]), default=None)
    if hub is not None:
        pre = {e: i for i, e in enumerate(inc[hub])}
    res = k_color(adj, 3, pre)
    return res.colors if res.found else None


def is_three_edge_colorable(g: Graph) -> bool:
    return three_edge_coloring(g) is not None
