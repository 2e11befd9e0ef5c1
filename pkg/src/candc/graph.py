"""Multigraph model, graph6 I/O, instance generators and structural flags.

Edges keep their position in ``Graph.edges`` as a stable identity.  The
stored pair order ``(a, b)`` doubles as the reference orientation ``a -> b``
used by the flow modules.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

INFINITY = math.inf


class GraphError(ValueError):
    pass


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("negative vertex count")
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        for eid, (a, b) in enumerate(edges):
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise GraphError(f"edge {eid} endpoint out of range: {(a, b)}")
            if a == b:
                raise GraphError(f"edge {eid} is a loop at {a}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], name: str = "") -> "Graph":
        return cls(n, tuple((a, b) for a, b in edges), name)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def incidence(self) -> list[list[int]]:
        """Edge ids incident to each vertex, in edge-id order."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for eid, (a, b) in enumerate(self.edges):
            inc[a].append(eid)
            inc[b].append(eid)
        return inc

    def neighbor_sets(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_simple(self) -> bool:
        seen = set()
        for a, b in self.edges:
            key = (a, b) if a < b else (b, a)
            if key in seen:
                return False
            seen.add(key)
        return True

    def canonical(self) -> "Graph":
        """Same multigraph with edges as (min, max) pairs in lexicographic order."""
        es = sorted((a, b) if a < b else (b, a) for a, b in self.edges)
        return Graph(self.n, tuple(es), self.name)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex v becomes perm[v]; edge identities are kept."""
        return Graph(self.n, tuple((perm[a], perm[b]) for a, b in self.edges), self.name)

    def delete_vertices(self, vs: Iterable[int]) -> "Graph":
        drop = set(vs)
        keep = [v for v in range(self.n) if v not in drop]
        new = {v: i for i, v in enumerate(keep)}
        es = tuple((new[a], new[b]) for a, b in self.edges if a in new and b in new)
        return Graph(len(keep), es)

    def components(self) -> list[list[int]]:
        adj = self.neighbor_sets()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        es = self.edges + tuple((a + shift, b + shift) for a, b in other.edges)
        return Graph(self.n + other.n, es)


# ---------------------------------------------------------------- graph6

def _n_encode(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    if not g.is_simple():
        raise GraphError("graph6 encodes simple graphs only")
    adj = g.neighbor_sets()
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if j in adj[i] else 0)
    bits.extend([0] * (-len(bits) % 6))
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for bit in bits[k:k + 6]:
            val = (val << 1) | bit
        chars.append(chr(val + 63))
    return _n_encode(g.n) + "".join(chars)


def parse_graph6(text: str, name: str = "") -> Graph:
    """Decode one graph6 line.  Edges come out in canonical (a < b) order."""
    s = text.strip()
    base = 0
    if s.startswith(">>graph6<<"):
        s = s[10:]
        base = 10
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range", base + k)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise Graph6Error("truncated vertex-count header", base + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    else:
        if len(vals) < 8:
            raise Graph6Error("truncated vertex-count header", base + len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) < need:
        raise Graph6Error(f"bit vector truncated: need {need} chars, have {len(body)}",
                          base + len(vals))
    if len(body) > need:
        raise Graph6Error("trailing characters after bit vector", base + pos + need)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(sorted(edges)), name)


def read_graph6_file(path: str) -> Iterator[tuple[int, Graph]]:
    """Yield (line number, graph) for each non-blank, non-header line."""
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line == ">>graph6<<":
                continue
            yield lineno, parse_graph6(line, name=f"{path}:{lineno}")


def write_graph6_file(path: str, graphs: Iterable[Graph]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")


# ------------------------------------------------------------ generators

def truncate(g: Graph, must_be_cubic: bool = True) -> Graph:
    """Replace every vertex by a clique on its edge slots (a triangle when cubic).

    Slot ``offset[v] + i`` of the result stands for the i-th edge at v in
    edge-id order.  Clique edges come first, then the original edges in id
    order.  With ``must_be_cubic`` the input has to be simple and cubic.
    """
    deg = g.degrees()
    if must_be_cubic and (not g.is_simple() or any(d != 3 for d in deg)):
        raise GraphError("truncate needs a simple cubic graph")
    inc = g.incidence()
    offset = [0] * g.n
    for v in range(1, g.n):
        offset[v] = offset[v - 1] + deg[v - 1]
    slot = {}
    edges = []
    for v in range(g.n):
        for i, eid in enumerate(inc[v]):
            slot[(v, eid)] = offset[v] + i
        edges += [(offset[v] + i, offset[v] + j)
                  for i, j in itertools.combinations(range(deg[v]), 2)]
    for eid, (a, b) in enumerate(g.edges):
        edges.append((slot[(a, eid)], slot[(b, eid)]))
    return Graph(sum(deg), tuple(edges), f"T({g.name})" if g.name else "")


def _cycle_edges(seq: Sequence[int], directed: bool = False) -> list[tuple[int, int]]:
    k = len(seq)
    out = []
    for i in range(k):
        a, b = seq[i], seq[(i + 1) % k]
        out.append((a, b) if a < b or directed else (b, a))
    return out


def labeled_cycles(n: int, directed: bool = False) -> Iterator[tuple[int, ...]]:
    """Hamiltonian cycles on 0..n-1 as vertex sequences from 0: all (n-1)!/2
    undirected ones, or all (n-1)! directed ones."""
    for rest in itertools.permutations(range(1, n)):
        if directed or rest[0] < rest[-1]:
            yield (0,) + rest


def two_cycle_union(c1: Sequence[int], c2: Sequence[int], directed: bool = False) -> Graph:
    n = len(c1)
    return Graph(n, tuple(_cycle_edges(c1, directed) + _cycle_edges(c2, directed)))


def random_two_cycle_union(n: int, seed: int, directed: bool = False) -> Graph:
    """Union of two independent uniform Hamiltonian cycles on 0..n-1.

    Edges are stored as (min, max) pairs, or along the traversal direction
    of each cycle when ``directed``.
    """
    if n < 3:
        raise GraphError("random_two_cycle_union needs n >= 3")
    rng = random.Random(seed)
    p1 = list(range(n))
    p2 = list(range(n))
    rng.shuffle(p1)
    rng.shuffle(p2)
    return Graph(n, tuple(_cycle_edges(p1, directed) + _cycle_edges(p2, directed)),
                 name=f"two-cycle(n={n},seed={seed})")


def all_two_cycle_unions(n: int, directed: bool = False) -> Iterator[Graph]:
    """Exhaustive counterpart of random_two_cycle_union: every ordered cycle pair."""
    if n < 3:
        raise GraphError("need n >= 3")
    cycles = list(labeled_cycles(n, directed))
    for c1 in cycles:
        for c2 in cycles:
            yield two_cycle_union(c1, c2, directed)


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple(_cycle_edges(range(n))), f"C{n}")


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)), f"K{n}")


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph(p + q, tuple((i, p + j) for i in range(p) for j in range(q)), f"K{p},{q}")


def prism(q: int) -> Graph:
    """C_q x K_2: outer cycle 0..q-1, inner cycle q..2q-1, spokes i -- q+i."""
    if q < 3:
        raise GraphError("prism needs q >= 3")
    outer = [(i, (i + 1) % q) for i in range(q)]
    inner = [(q + i, q + (i + 1) % q) for i in range(q)]
    spokes = [(i, q + i) for i in range(q)]
    es = [(min(a, b), max(a, b)) for a, b in outer + inner + spokes]
    return Graph(2 * q, tuple(es), f"prism{q}")


def cube() -> Graph:
    es = [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1]
    return Graph(8, tuple(es), "Q3")


# -------------------------------------------------------------- classify

@dataclass(frozen=True)
class PropertyFlags:
    connected: bool
    bipartite: bool
    cubic: bool
    bridgeless: bool
    girth: float  # INFINITY for forests
    claw_free: bool
    diamond_free: bool
    class1: bool | None  # None unless cubic

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["girth"] = 0 if self.girth == INFINITY else int(self.girth)
        return d


def bridges(g: Graph) -> list[int]:
    """Edge ids of bridges.  Parallel edges are never bridges."""
    inc = g.incidence()
    disc = [-1] * g.n
    low = [0] * g.n
    out = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(inc[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == via:
                    continue
                a, b = g.edges[eid]
                w = b if a == v else a
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, iter(inc[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        out.append(via)
    return sorted(out)


def girth(g: Graph) -> float:
    if not g.is_simple():
        return 2
    adj = g.neighbor_sets()
    best = INFINITY
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def is_bipartite(g: Graph) -> bool:
    adj = g.neighbor_sets()
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def claw_free(g: Graph) -> bool:
    adj = g.neighbor_sets()
    for v in range(g.n):
        for x, y, z in itertools.combinations(sorted(adj[v]), 3):
            if y not in adj[x] and z not in adj[x] and z not in adj[y]:
                return False
    return True


def diamond_free(g: Graph) -> bool:
    adj = g.neighbor_sets()
    for u in range(g.n):
        for v in adj[u]:
            if v < u:
                continue
            common = sorted(adj[u] & adj[v])
            for x, y in itertools.combinations(common, 2):
                if y not in adj[x]:
                    return False
    return True


def classify(g: Graph) -> PropertyFlags:
    # late import: coloring depends on this module
    from .coloring import is_three_edge_colorable

    deg = g.degrees()
    cubic = g.n > 0 and all(d == 3 for d in deg)
    return PropertyFlags(
        connected=len(g.components()) <= 1,
        bipartite=is_bipartite(g),
        cubic=cubic,
        bridgeless=not bridges(g),
        girth=girth(g),
        claw_free=claw_free(g),
        diamond_free=diamond_free(g),
        class1=is_three_edge_colorable(g) if cubic else None,
    )
