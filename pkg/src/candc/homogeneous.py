"""k-homogeneous colorings: proper colorings in which every open
neighborhood shows exactly k colors."""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, GraphError, bridges, is_bipartite
from .named import subdivided_prism

WITNESS = "witness-found"
EXHAUSTED = "exhausted-none"
BUDGET = "budget-exceeded"


@dataclass(frozen=True)
class HomogeneousColoring:
    colors: tuple[int, ...]
    k: int

    @property
    def c(self) -> int:
        return len(set(self.colors))


@dataclass
class HomogeneousResult:
    status: str
    coloring: HomogeneousColoring | None
    nodes: int


def is_homogeneous(g: Graph, colors: Sequence[int], k: int) -> bool:
    """Independent checker: proper, and |colors(N(v))| == k for every v."""
    if len(colors) != g.n:
        return False
    adj = g.neighbor_sets()
    for v in range(g.n):
        if any(colors[w] == colors[v] for w in adj[v]):
            return False
        if len({colors[w] for w in adj[v]}) != k:
            return False
    return True


class _Budget(Exception):
    pass


def _search_component(adj: list[list[int]], k: int, c: int, node_limit: int,
                      nodes: list[int]) -> list[int] | None:
    """Backtracking on one connected component (vertex 0 first, color 0).

    Fresh-color rule: a vertex may take any used color or the next unused
    one, which fixes vertex 0's color and canonicalizes the pattern of its
    neighborhood.  Per vertex we keep the multiset of assigned neighbor
    colors and the number of still-free neighbors; a branch dies once some
    vertex already sees more than k colors, or can no longer reach k.
    """
    n = len(adj)
    color = [-1] * n
    cnt = [[0] * c for _ in range(n)]
    seen = [0] * n  # distinct colors among assigned neighbors
    free = [len(a) for a in adj]
    placed = [0] * n  # assigned-neighbor count, drives vertex choice
    if any(f < k for f in free):
        return None

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if color[v] < 0:
                kv = (placed[v], len(adj[v]), -v)
                if key is None or kv > key:
                    best, key = v, kv
        return best

    def rec(done: int, used: int) -> bool:
        nodes[0] += 1
        if node_limit and nodes[0] > node_limit:
            raise _Budget
        if done == n:
            return True
        v = pick() if done else 0
        for x in range(min(used + 1, c)):
            ok = True
            for w in adj[v]:
                if color[w] == x:
                    ok = False
                    break
                s = seen[w] + (cnt[w][x] == 0)
                if s > k or s + free[w] - 1 < k:
                    ok = False
                    break
                # w already shows k colors: a new one here would be a (k+1)-th
            if not ok:
                continue
            color[v] = x
            for w in adj[v]:
                if cnt[w][x] == 0:
                    seen[w] += 1
                cnt[w][x] += 1
                free[w] -= 1
                placed[w] += 1
            if rec(done + 1, max(used, x + 1)):
                return True
            for w in adj[v]:
                cnt[w][x] -= 1
                if cnt[w][x] == 0:
                    seen[w] -= 1
                free[w] += 1
                placed[w] -= 1
            color[v] = -1
        return False

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 100)
    return list(color) if rec(0, 0) else None


def find_homogeneous(g: Graph, k: int, c: int, node_limit: int = 0) -> HomogeneousResult:
    """Exact search for a k-homogeneous coloring with at most c colors.

    Components are solved independently; every component reuses the same
    palette 0..c-1, which is harmless because the condition is local.
    """
    if not g.is_simple():
        raise GraphError("homogeneous coloring needs a simple graph")
    if c < k:
        return HomogeneousResult(EXHAUSTED, None, 0)
    adj_sets = g.neighbor_sets()
    colors = [0] * g.n
    nodes = [0]
    for comp in g.components():
        local = {v: i for i, v in enumerate(comp)}
        adj = [sorted(local[w] for w in adj_sets[v]) for v in comp]
        try:
            sol = _search_component(adj, k, c, node_limit, nodes)
        except _Budget:
            return HomogeneousResult(BUDGET, None, nodes[0])
        if sol is None:
            return HomogeneousResult(EXHAUSTED, None, nodes[0])
        for v, x in zip(comp, sol):
            colors[v] = x
    if not is_homogeneous(g, colors, k):
        raise AssertionError("search returned an invalid homogeneous coloring")
    return HomogeneousResult(WITNESS, HomogeneousColoring(tuple(colors), k), nodes[0])


def min_homogeneous_colors(g: Graph, k: int, c_max: int,
                           node_limit: int = 0) -> tuple[int | None, HomogeneousResult]:
    """Least c <= c_max with a k-homogeneous coloring (None if there is none).

    Returns the deciding result too: the witness at the minimum, or the
    exhausted proof at c_max.
    """
    res = HomogeneousResult(EXHAUSTED, None, 0)
    total = 0
    for c in range(max(k, 1), c_max + 1):
        res = find_homogeneous(g, k, c, node_limit)
        total += res.nodes
        res.nodes = total
        if res.status == WITNESS:
            return c, res
        if res.status == BUDGET:
            return None, res
    return None, res


# ------------------------------------------------------------ obstruction

def find_subgraph(pattern: Graph, host: Graph) -> dict[int, int] | None:
    """Injective map of pattern vertices into host vertices carrying every
    pattern edge onto a host edge (not necessarily induced)."""
    padj = pattern.neighbor_sets()
    hadj = host.neighbor_sets()
    pdeg = [len(a) for a in padj]
    # pattern order: each vertex after as many of its neighbors as possible
    order = [max(range(pattern.n), key=lambda v: (pdeg[v], -v))]
    while len(order) < pattern.n:
        rest = [v for v in range(pattern.n) if v not in order]
        order.append(max(rest, key=lambda v: (len(padj[v] & set(order)), pdeg[v], -v)))
    image: dict[int, int] = {}
    used: set[int] = set()

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        mapped = [image[q] for q in padj[p] if q in image]
        cands = set(hadj[mapped[0]]) if mapped else set(range(host.n))
        for h in mapped[1:]:
            cands &= hadj[h]
        for h in sorted(cands - used):
            if len(hadj[h]) < pdeg[p]:
                continue
            image[p] = h
            used.add(h)
            if rec(i + 1):
                return True
            del image[p]
            used.discard(h)
        return False

    return dict(image) if rec(0) else None


def has_obstruction(g: Graph) -> bool:
    """Does g contain the triangular prism with one triangle edge subdivided?"""
    return find_subgraph(subdivided_prism(), g) is not None


# ------------------------------------------------------------ corpus scan

@dataclass
class ScanRow:
    graph_id: str
    n: int
    bridgeless: bool
    bipartite: bool
    obstruction: bool
    status: str
    admits: bool
    min_colors: int | None
    witness: tuple[int, ...] | None
    nodes: int


@dataclass
class ScanReport:
    k: int
    c_max: int
    rows: list[ScanRow] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def admitters(self) -> list[ScanRow]:
        return [r for r in self.rows if r.admits]

    @property
    def non_admitters(self) -> list[ScanRow]:
        return [r for r in self.rows if r.status == EXHAUSTED]

    @property
    def violations(self) -> list[ScanRow]:
        """Graphs holding the obstruction that still admit a coloring."""
        return [r for r in self.rows if r.obstruction and r.admits]

    def populations(self) -> dict[str, dict[str, int]]:
        """Admitter counts and worst min-colors, for all graphs and for the
        bridgeless ones separately."""
        out = {}
        for label, rows in (("all", self.rows), ("bridgeless", [r for r in self.rows if r.bridgeless])):
            mins = [r.min_colors for r in rows if r.min_colors is not None]
            out[label] = {"graphs": len(rows), "admitters": len(mins),
                          "max_min_colors": max(mins, default=0)}
        return out

    def csv(self) -> str:
        out = ["graph_id,bridgeless,admits,min_colors"]
        for r in self.rows:
            mc = "" if r.min_colors is None else str(r.min_colors)
            out.append(f"{r.graph_id},{int(r.bridgeless)},{int(r.admits)},{mc}")
        return "\n".join(out) + "\n"


def scan_graph(g: Graph, k: int, c_max: int, node_limit: int = 0,
               graph_id: str = "") -> ScanRow:
    mc, res = min_homogeneous_colors(g, k, c_max, node_limit)
    return ScanRow(graph_id or g.name, g.n, not bridges(g), is_bipartite(g),
                   has_obstruction(g), res.status, mc is not None, mc,
                   res.coloring.colors if res.coloring else None, res.nodes)


def scan_cubic_corpus(corpus: Iterable[Graph], k: int = 2, c_max: int = 8,
                      node_limit: int = 0) -> ScanReport:
    rep = ScanReport(k, c_max)
    for idx, g in enumerate(corpus):
        gid = g.name or f"#{idx}"
        if not g.is_simple() or any(d != 3 for d in g.degrees()):
            rep.skipped.append(gid)
            continue
        rep.rows.append(scan_graph(g, k, c_max, node_limit, gid))
    return rep
