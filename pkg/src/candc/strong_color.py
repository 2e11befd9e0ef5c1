"""Strong coloring of G u H: G a disjoint union of cycles (or a perfect
matching), H a disjoint union of cliques of equal size s on the same vertices.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import kernels
from .coloring import is_proper, k_color
from .graph import Graph, GraphError


@dataclass(frozen=True)
class UnionInstance:
    n: int
    cycles: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]
    d: int = 2  # 2: cycles, 1: perfect matching

    def __post_init__(self) -> None:
        verts = sorted(v for c in self.cycles for v in c)
        if verts != list(range(self.n)):
            raise GraphError("cycles must partition 0..n-1")
        if self.d not in (1, 2):
            raise GraphError("only d = 1 (matching) and d = 2 (cycles) are supported")
        for c in self.cycles:
            if self.d == 2 and len(c) < 3:
                raise GraphError(f"cycle {c} shorter than 3")
            if self.d == 1 and len(c) != 2:
                raise GraphError("matching variant needs parts of two vertices")
        bverts = sorted(v for b in self.blocks for v in b)
        if bverts != list(range(self.n)):
            raise GraphError("clique blocks must partition 0..n-1")
        if len({len(b) for b in self.blocks}) > 1:
            raise GraphError("clique blocks must have equal size")

    @property
    def s(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    def as_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "cycles": [list(c) for c in self.cycles],
                "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_dict(cls, d: dict) -> "UnionInstance":
        return cls(d["n"], tuple(tuple(c) for c in d["cycles"]),
                   tuple(tuple(b) for b in d["blocks"]), d.get("d", 2))


def union_edges(inst: UnionInstance) -> set[tuple[int, int]]:
    es = set()
    for c in inst.cycles:
        k = len(c)
        pairs = [(c[0], c[1])] if k == 2 else [(c[i], c[(i + 1) % k]) for i in range(k)]
        for a, b in pairs:
            es.add((min(a, b), max(a, b)))
    for b in inst.blocks:
        for x, y in itertools.combinations(b, 2):
            es.add((min(x, y), max(x, y)))
    return es


def build_union(inst: UnionInstance) -> Graph:
    return Graph(inst.n, tuple(sorted(union_edges(inst))))


def _adjacency(inst: UnionInstance) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(inst.n)]
    for a, b in union_edges(inst):
        adj[a].append(b)
        adj[b].append(a)
    return adj


@dataclass
class StrongColorResult:
    status: str  # witness-found / exhausted-none / budget-exceeded / precondition-failed
    coloring: list[int] | None
    nodes: int


def strong_colorable(inst: UnionInstance, k: int, node_limit: int = 0) -> StrongColorResult:
    if k < inst.s:
        return StrongColorResult("precondition-failed", None, 0)
    adj = _adjacency(inst)
    # one clique block pinned to 0..s-1 breaks the color symmetry
    pre = {v: i for i, v in enumerate(inst.blocks[0])} if inst.blocks else {}
    res = k_color(adj, k, pre, node_limit)
    status = {kernels.FOUND: "witness-found", kernels.EXHAUSTED: "exhausted-none",
              kernels.BUDGET: "budget-exceeded"}[res.status]
    return StrongColorResult(status, res.colors, res.nodes)


def check_strong_coloring(inst: UnionInstance, colors: Sequence[int], k: int) -> bool:
    """Independent checker: proper on G u H, < k colors, rainbow blocks."""
    adj = [[] for _ in range(inst.n)]
    for a, b in union_edges(inst):
        adj[a].append(b)
        adj[b].append(a)
    if not is_proper(adj, colors, k):
        return False
    return all(len({colors[v] for v in b}) == len(b) for b in inst.blocks)


def brute_force_colorable(inst: UnionInstance, k: int) -> bool:
    """Oracle: scan all k**n colorings (vectorised over numpy rows)."""
    import numpy as np

    n = inst.n
    es = np.array(sorted(union_edges(inst)), dtype=np.int64)
    chunk = max(1, min(k ** n, 1 << 18))
    total = k ** n
    powers = k ** np.arange(n, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        cols = (idx[:, None] // powers[None, :]) % k
        ok = np.all(cols[:, es[:, 0]] != cols[:, es[:, 1]], axis=1)
        if ok.any():
            return True
    return False


# ------------------------------------------------------------ enumeration

def cycle_types(n: int, minpart: int = 3) -> Iterator[tuple[int, ...]]:
    """Partitions of n into parts >= minpart, parts non-increasing."""
    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), minpart - 1, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail
    yield from rec(n, n)


def consecutive_cycles(ctype: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    out, start = [], 0
    for length in ctype:
        out.append(tuple(range(start, start + length)))
        start += length
    return tuple(out)


def block_partitions(n: int, s: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Set partitions of 0..n-1 into blocks of size s; each block is sorted
    and contains the smallest vertex not yet covered, so blocks come sorted."""
    if n % s:
        return

    def rec(remaining):
        if not remaining:
            yield ()
            return
        first, rest = remaining[0], remaining[1:]
        for others in itertools.combinations(rest, s - 1):
            block = (first,) + others
            left = tuple(v for v in rest if v not in others)
            for tail in rec(left):
                yield (block,) + tail

    yield from rec(tuple(range(n)))


def exhaustive_instances(s: int, n_max: int, d: int = 2) -> Iterator[UnionInstance]:
    """Every (cycle type, block partition) pair with s | n <= n_max.

    Cycles are laid out on consecutive labels; any instance is isomorphic to
    one of these, so the sweep is complete (isomorphic repeats may occur).
    """
    for n in range(s, n_max + 1, s):
        if d == 1:
            if n % 2:
                continue
            ctypes = [(2,) * (n // 2)]
        else:
            ctypes = list(cycle_types(n))
        for ct in ctypes:
            cycles = consecutive_cycles(ct)
            for blocks in block_partitions(n, s):
                yield UnionInstance(n, cycles, blocks, d)


def random_instance(s: int, n: int, rng: random.Random) -> UnionInstance:
    perm = list(range(n))
    rng.shuffle(perm)
    # random composition of n into parts >= 3
    parts = []
    rest = n
    while rest:
        if rest < 6:
            parts.append(rest)
            break
        p = rng.randint(3, rest - 3) if rng.random() < 0.7 else rest
        parts.append(p)
        rest -= p
    cycles, start = [], 0
    for p in parts:
        cycles.append(tuple(perm[start:start + p]))
        start += p
    perm2 = list(range(n))
    rng.shuffle(perm2)
    blocks = [tuple(sorted(perm2[i:i + s])) for i in range(0, n, s)]
    return UnionInstance(n, tuple(cycles), tuple(sorted(blocks)))


@dataclass
class HuntResult:
    s: int
    k: int
    n_max: int
    strategy: str
    status: str  # witness-found (counterexample) / exhausted-none / budget-exceeded
    witness: UnionInstance | None = None
    instances: int = 0
    nodes: int = 0
    per_n: dict[int, int] = field(default_factory=dict)


def hunt_counterexample(s: int, k: int, n_max: int, strategy: str = "exhaustive",
                        seed: int = 0, trials: int = 0, budget: int = 0,
                        d: int = 2, max_instances: int = 0) -> HuntResult:
    """Look for a k-uncolorable G u H.  The first hit in enumeration order
    (n, cycle type, partition) is returned, which is the smallest canonical
    instance for the exhaustive strategy."""
    if k < s:
        raise ValueError("k >= s required (otherwise every instance is trivially uncolorable)")
    out = HuntResult(s, k, n_max, strategy, "exhausted-none")
    if strategy == "exhaustive":
        source: Iterator[UnionInstance] = exhaustive_instances(s, n_max, d)
    elif strategy == "random":
        rng = random.Random(seed)
        sizes = [n for n in range(s, n_max + 1, s) if n >= 3]
        source = (random_instance(s, rng.choice(sizes), rng) for _ in range(trials))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    for inst in source:
        if max_instances and out.instances >= max_instances:
            out.status = "budget-exceeded"
            break
        res = strong_colorable(inst, k, budget)
        out.instances += 1
        out.nodes += res.nodes
        out.per_n[inst.n] = out.per_n.get(inst.n, 0) + 1
        if res.status == "exhausted-none":
            out.status = "witness-found"
            out.witness = inst
            break
        if res.status == "budget-exceeded":
            out.status = "budget-exceeded"
            break
    return out
