"""Pairs (phi2, phi4) of integer 2- and 4-flows with phi2(e) = 0 forcing
|phi4(e)| >= 2, and the circular 5-flow (5 phi2 + phi4) / 2 they induce.

All values are relative to the reference orientation a -> b of each edge.
"""
from __future__ import annotations

import itertools
import sys
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .graph import Graph, GraphError, bridges

WITNESS = "witness-found"
EXHAUSTED = "exhausted-none"
BUDGET = "budget-exceeded"


class FlowValidationError(ValueError):
    pass


@dataclass(frozen=True)
class IntegerFlowPair:
    phi2: tuple[int, ...]
    phi4: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"phi2": list(self.phi2), "phi4": list(self.phi4)}

    @classmethod
    def from_dict(cls, d: dict) -> "IntegerFlowPair":
        return cls(tuple(d["phi2"]), tuple(d["phi4"]))


@dataclass(frozen=True)
class CircularFlowCertificate:
    values: tuple[Fraction, ...]


def net_flow(g: Graph, f: Sequence) -> list:
    """Outflow minus inflow at each vertex."""
    out = [0] * g.n
    for (a, b), x in zip(g.edges, f):
        out[a] += x
        out[b] -= x
    return out


def validate_pair(g: Graph, pair: IntegerFlowPair) -> CircularFlowCertificate:
    """Recheck every invariant of the pair, then build and check the
    certificate.  Raises FlowValidationError naming the offending edge or
    vertex."""
    if len(pair.phi2) != g.m or len(pair.phi4) != g.m:
        raise FlowValidationError(f"expected {g.m} values per flow")
    for e, (x2, x4) in enumerate(zip(pair.phi2, pair.phi4)):
        if x2 not in (-1, 0, 1):
            raise FlowValidationError(f"edge {e}: phi2 = {x2} is not a 2-flow value")
        if not -3 <= x4 <= 3:
            raise FlowValidationError(f"edge {e}: phi4 = {x4} is not a 4-flow value")
        if x2 == 0 and abs(x4) < 2:
            raise FlowValidationError(f"edge {e}: forbidden pair (0, {x4})")
    for name, f in (("phi2", pair.phi2), ("phi4", pair.phi4)):
        for v, s in enumerate(net_flow(g, f)):
            if s:
                raise FlowValidationError(f"vertex {v}: {name} not conserved (net {s})")
    vals = tuple(Fraction(5 * x2 + x4, 2) for x2, x4 in zip(pair.phi2, pair.phi4))
    for v, s in enumerate(net_flow(g, vals)):
        if s:
            raise FlowValidationError(f"vertex {v}: certificate not conserved (net {s})")
    for e, x in enumerate(vals):
        if not 1 <= abs(x) <= 4:
            raise FlowValidationError(f"edge {e}: certificate value {x} outside [1, 4]")
    return CircularFlowCertificate(vals)


# ------------------------------------------------------------ cycle space

def _spanning_forest(g: Graph) -> tuple[list[int], list[int], list[int], list[int]]:
    """BFS forest from each component's max-degree vertex.

    Returns (parent vertex, parent edge id, BFS order, tree flags by edge).
    """
    inc = g.incidence()
    parent = [-1] * g.n
    pedge = [-1] * g.n
    seen = [False] * g.n
    order: list[int] = []
    tree = [0] * g.m
    deg = [len(x) for x in inc]
    for comp in g.components():
        r = max(comp, key=lambda v: (deg[v], -v))
        seen[r] = True
        queue = deque([r])
        while queue:
            u = queue.popleft()
            order.append(u)
            for e in inc[u]:
                a, b = g.edges[e]
                w = b if a == u else a
                if not seen[w]:
                    seen[w] = True
                    parent[w], pedge[w] = u, e
                    tree[e] = 1
                    queue.append(w)
    return parent, pedge, order, tree


def cycle_space_basis(g: Graph) -> list[int]:
    """Fundamental cycles (edge bitmasks) of a BFS spanning forest."""
    parent, pedge, order, tree = _spanning_forest(g)
    depth = [0] * g.n
    for v in order:
        if parent[v] >= 0:
            depth[v] = depth[parent[v]] + 1
    basis = []
    for e, (a, b) in enumerate(g.edges):
        if tree[e]:
            continue
        mask = 1 << e
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            mask ^= 1 << pedge[a]
            a = parent[a]
        basis.append(mask)
    return basis


def even_subgraphs(g: Graph) -> list[int]:
    """Every element of the cycle space, largest first (ties by mask)."""
    basis = cycle_space_basis(g)
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    out.sort(key=lambda s: (-bin(s).count("1"), s))
    return out


def eulerian_orientation(g: Graph, support: int) -> list[int]:
    """+1/-1 on support edges (0 elsewhere) along Euler circuits of each
    component of the even subgraph."""
    phi = [0] * g.m
    inc: list[list[int]] = [[] for _ in range(g.n)]
    for e in range(g.m):
        if support >> e & 1:
            a, b = g.edges[e]
            inc[a].append(e)
            inc[b].append(e)
    used = [False] * g.m
    ptr = [0] * g.n
    for s in range(g.n):
        # Hierholzer, iterative; each edge is oriented as it is walked
        stack = [s]
        while stack:
            u = stack[-1]
            while ptr[u] < len(inc[u]) and used[inc[u][ptr[u]]]:
                ptr[u] += 1
            if ptr[u] == len(inc[u]):
                stack.pop()
                continue
            e = inc[u][ptr[u]]
            used[e] = True
            a, b = g.edges[e]
            phi[e] = 1 if a == u else -1
            stack.append(b if a == u else a)
    return phi


# ------------------------------------------------------------ phi4 search

class _Budget(Exception):
    pass


class Phi4Search:
    """Integer 4-flows with per-edge allowed value sets.

    Cotree edges are branched on; the tree edge above a vertex is forced by
    conservation once everything else at that vertex is known (deepest
    vertices close first).  Each vertex also keeps an interval test: the
    unassigned edges there can absorb at most 3 units each.
    """

    def __init__(self, g: Graph):
        self.g = g
        parent, pedge, order, tree = _spanning_forest(g)
        self.pedge = pedge
        self.parent = parent
        self.inc = g.incidence()
        pos = {v: i for i, v in enumerate(reversed(order))}
        cot = [e for e in range(g.m) if not tree[e]]
        cot.sort(key=lambda e: (min(pos[g.edges[e][0]], pos[g.edges[e][1]]),
                                max(pos[g.edges[e][0]], pos[g.edges[e][1]]), e))
        self.cotree = cot

    def run(self, allowed: Sequence[Sequence[int]], node_limit: int = 0,
            nodes: list[int] | None = None) -> list[int] | None:
        g = self.g
        nodes = nodes if nodes is not None else [0]
        val: list[int | None] = [None] * g.m
        net = [0] * g.n
        left = [len(x) for x in self.inc]
        allowed_sets = [frozenset(a) for a in allowed]
        if any(not a for a in allowed_sets):
            return None

        def assign(e: int, x: int, trail: list[int]) -> bool:
            val[e] = x
            trail.append(e)
            a, b = g.edges[e]
            net[a] += x
            net[b] -= x
            left[a] -= 1
            left[b] -= 1
            for v in (a, b):
                if abs(net[v]) > 3 * left[v]:
                    return False
                if left[v] == 1 and self.pedge[v] >= 0 and val[self.pedge[v]] is None:
                    # only the parent edge remains: conservation forces it
                    f = self.pedge[v]
                    fa, _ = g.edges[f]
                    y = -net[v] if fa == v else net[v]
                    if y not in allowed_sets[f] or not assign(f, y, trail):
                        return False
                elif left[v] == 0 and net[v] != 0:
                    return False
            return True

        def undo(trail: list[int], start: int) -> None:
            while len(trail) > start:
                e = trail.pop()
                a, b = g.edges[e]
                x = val[e]
                net[a] -= x
                net[b] += x
                left[a] += 1
                left[b] += 1
                val[e] = None

        trail: list[int] = []
        # leaves of the forest with no cotree edges close immediately
        for v in range(g.n):
            if left[v] == 1 and self.pedge[v] >= 0 and val[self.pedge[v]] is None:
                f = self.pedge[v]
                if 0 not in allowed_sets[f] or not assign(f, 0, trail):
                    return None

        cot = self.cotree

        def rec(i: int) -> bool:
            nodes[0] += 1
            if node_limit and nodes[0] > node_limit:
                raise _Budget
            if i == len(cot):
                return all(x is not None for x in val) and not any(net)
            e = cot[i]
            if val[e] is not None:
                return rec(i + 1)
            for x in sorted(allowed_sets[e], key=lambda t: (abs(t), t)):
                mark = len(trail)
                if assign(e, x, trail) and rec(i + 1):
                    return True
                undo(trail, mark)
            return False

        limit = sys.getrecursionlimit()
        if limit < len(cot) + 100:
            sys.setrecursionlimit(len(cot) + 100)
        return [int(x) for x in val] if rec(0) else None


ANY = tuple(range(-3, 4))
BIG = (-3, -2, 2, 3)


def phi4_domains(m: int, support: int) -> list[tuple[int, ...]]:
    return [ANY if support >> e & 1 else BIG for e in range(m)]


@dataclass
class FlowPairResult:
    status: str
    pair: IntegerFlowPair | None
    supports_tried: int
    nodes: int
    extendable: int = 0  # with all=True: supports admitting some phi4


def find_flow_pair(g: Graph, budget: int = 0, all_supports: bool = False) -> FlowPairResult:
    """First (phi2, phi4) pair, supports by decreasing size.

    Only supp(phi2) constrains phi4, so one Eulerian orientation per support
    is enough for completeness.  ``all_supports`` keeps going and counts the
    supports that extend.
    """
    if g.m and bridges(g):
        raise GraphError(f"graph has a bridge (edge {bridges(g)[0]}); no flow pair exists")
    search = Phi4Search(g)
    nodes = [0]
    found: IntegerFlowPair | None = None
    tried = extendable = 0
    for s in even_subgraphs(g):
        tried += 1
        try:
            phi4 = search.run(phi4_domains(g.m, s), budget, nodes)
        except _Budget:
            return FlowPairResult(BUDGET, found, tried, nodes[0], extendable)
        if phi4 is None:
            continue
        extendable += 1
        if found is None:
            found = IntegerFlowPair(tuple(eulerian_orientation(g, s)), tuple(phi4))
            validate_pair(g, found)
        if not all_supports:
            break
    status = WITNESS if found else EXHAUSTED
    return FlowPairResult(status, found, tried, nodes[0], extendable)


def brute_force_exists(g: Graph) -> bool:
    """Independent oracle, phi4 first: enumerate all 7**beta cotree values,
    derive tree values by linear algebra, and ask whether the edges with
    |phi4| <= 1 fit inside some even subgraph (found by brute force over all
    edge subsets with even degrees)."""
    import numpy as np

    m, n = g.m, g.n
    _, _, _, tree = _spanning_forest(g)
    cot = [e for e in range(m) if not tree[e]]
    tre = [e for e in range(m) if tree[e]]
    # incidence matrix D (n x m); D_T x_T = -D_C x_C on all but one vertex per component
    D = np.zeros((n, m), dtype=np.int64)
    for e, (a, b) in enumerate(g.edges):
        D[a, e] += 1
        D[b, e] -= 1
    roots = {comp[0] for comp in g.components()}
    rows = [v for v in range(n) if v not in roots]
    DT = D[np.ix_(rows, tre)].astype(float)
    DC = D[np.ix_(rows, cot)].astype(float)
    M = -np.linalg.solve(DT, DC) if tre else np.zeros((0, len(cot)))
    M = np.rint(M).astype(np.int64)

    if m > 24:
        raise ValueError("brute force oracle is limited to 24 edges")
    absD = np.abs(D).T  # m x n
    evens = []
    for start in range(0, 1 << m, 1 << 18):
        masks = np.arange(start, min(start + (1 << 18), 1 << m), dtype=np.int64)
        bits = (masks[:, None] >> np.arange(m, dtype=np.int64)[None, :]) & 1
        par = (bits @ absD) % 2
        evens.append(masks[~par.any(axis=1)])
    even_arr = np.concatenate(evens)

    weights = np.int64(1) << np.arange(m, dtype=np.int64)
    k = len(cot)
    total = 7 ** k
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        xc = (idx[:, None] // (7 ** np.arange(k, dtype=np.int64))[None, :]) % 7 - 3
        full = np.zeros((len(idx), m), dtype=np.int64)
        full[:, cot] = xc
        if tre:
            full[:, tre] = xc @ M.T
        ok = np.all(np.abs(full) <= 3, axis=1)
        if not ok.any():
            continue
        small = (np.abs(full[ok]) <= 1).astype(np.int64) @ weights
        for z in np.unique(small):
            if np.any((z & ~even_arr) == 0):
                return True
    return False


def enumerate_pairs(g: Graph) -> Iterator[IntegerFlowPair]:
    """Every pair on a tiny graph (test oracle; exponential)."""
    for phi2 in itertools.product((-1, 0, 1), repeat=g.m):
        if any(net_flow(g, phi2)):
            continue
        for phi4 in itertools.product(ANY, repeat=g.m):
            if any(x2 == 0 and abs(x4) < 2 for x2, x4 in zip(phi2, phi4)):
                continue
            if not any(net_flow(g, phi4)):
                yield IntegerFlowPair(phi2, phi4)
