"""Boundaries, admissibility and almost-A-connectivity for A = Z4 and Z2^2.

Elements are encoded 0..3: addition mod 4 for Z4, XOR for Z2^2.  A flow f
on the reference orientation a -> b has boundary
    (df)(v) = sum f(e) over edges leaving v - sum f(e) over edges entering v.

Two routes decide which zero-sum boundaries are admissible:

* ``admissible`` answers one boundary at a time by a spanning-tree search;
* ``sweep`` builds the whole set {df : f nowhere zero} as a packed bitset,
  adding one edge at a time (S <- union over x != 0 of S + x * d_e).

``almost_connected`` runs the sweep (or, on request, the per-boundary scan
in Gray-code order) and confirms every inadmissible boundary it reports with
the per-boundary search.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import logging
import os
import random
import sys
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .coloring import is_three_edge_colorable
from .graph import Graph, GraphError

log = logging.getLogger(__name__)

ADMISSIBLE = "admissible"
INADMISSIBLE = "inadmissible"
TRIVIAL = "inadmissible-trivially"

COMPLETED = "completed"
BUDGET = "budget-exceeded"


@dataclass(frozen=True)
class FlowGroup:
    kind: str  # "Z4" or "Z2xZ2"

    def __post_init__(self) -> None:
        if self.kind not in ("Z4", "Z2xZ2"):
            raise ValueError(f"unknown group {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FlowGroup":
        key = text.strip().lower().replace("_", "").replace("^", "")
        if key in ("z4",):
            return cls("Z4")
        if key in ("z2z2", "z2xz2", "z22", "klein"):
            return cls("Z2xZ2")
        raise ValueError(f"unknown group {text!r} (use z4 or z2z2)")

    @property
    def code(self) -> int:
        return kernels.Z4 if self.kind == "Z4" else kernels.Z2Z2

    @property
    def elements(self) -> tuple[int, ...]:
        return (0, 1, 2, 3)

    @property
    def nonzero(self) -> tuple[int, ...]:
        return (1, 2, 3)

    def add(self, x: int, y: int) -> int:
        return (x + y) & 3 if self.kind == "Z4" else x ^ y

    def neg(self, x: int) -> int:
        return (-x) & 3 if self.kind == "Z4" else x

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def total(self, xs: Iterable[int]) -> int:
        s = 0
        for x in xs:
            s = self.add(s, x)
        return s


Z4 = FlowGroup("Z4")
Z2Z2 = FlowGroup("Z2xZ2")


@dataclass(frozen=True)
class Boundary:
    b: tuple[int, ...]

    def as_string(self) -> str:
        return "".join(str(x) for x in self.b)

    @classmethod
    def from_string(cls, s: str) -> "Boundary":
        if any(ch not in "0123" for ch in s):
            raise ValueError(f"boundary string {s!r} must use digits 0-3")
        return cls(tuple(int(ch) for ch in s))

    def is_zero(self) -> bool:
        return not any(self.b)


@dataclass(frozen=True)
class GroupFlow:
    f: tuple[int, ...]


def boundary_of(g: Graph, group: FlowGroup, f: Sequence[int]) -> tuple[int, ...]:
    out = [0] * g.n
    for (a, b), x in zip(g.edges, f):
        out[a] = group.add(out[a], x)
        out[b] = group.sub(out[b], x)
    return tuple(out)


def check_flow(g: Graph, group: FlowGroup, b: Sequence[int], f: Sequence[int]) -> bool:
    """Independent checker: nowhere zero, right length, boundary equals b."""
    if len(f) != g.m or any(x not in (1, 2, 3) for x in f):
        return False
    return boundary_of(g, group, f) == tuple(b)


def zero_sum_ok(g: Graph, group: FlowGroup, b: Sequence[int]) -> bool:
    return all(group.total(b[v] for v in comp) == 0 for comp in g.components())


# ------------------------------------------------------ per-boundary route

class TreeSearch:
    """Spanning-tree parametrization of flows with a prescribed boundary.

    BFS forest from a max-degree vertex.  Cotree edges range over every group
    element; the tree edge above a vertex is forced as soon as all its other
    edges are known, deepest vertices first.  Zero values are rejected on
    every edge as they appear.
    """

    def __init__(self, g: Graph, group: FlowGroup):
        self.g, self.group = g, group
        inc = g.incidence()
        self.inc = inc
        deg = [len(x) for x in inc]
        self.parent = [-1] * g.n
        self.pedge = [-1] * g.n
        self.depth = [0] * g.n
        seen = [False] * g.n
        order: list[int] = []
        tree = [False] * g.m
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
                        self.parent[w], self.pedge[w] = u, e
                        self.depth[w] = self.depth[u] + 1
                        tree[e] = True
                        queue.append(w)
        pos = {v: i for i, v in enumerate(reversed(order))}
        cot = [e for e in range(g.m) if not tree[e]]
        # cotree edges that complete the deepest vertices go first
        cot.sort(key=lambda e: (min(pos[g.edges[e][0]], pos[g.edges[e][1]]),
                                max(pos[g.edges[e][0]], pos[g.edges[e][1]]), e))
        self.cotree = cot

    def solve(self, b: Sequence[int], node_limit: int = 0,
              nodes: list[int] | None = None) -> list[int] | None:
        g, A = self.g, self.group
        nodes = nodes if nodes is not None else [0]
        val = [-1] * g.m
        net = [0] * g.n
        left = [len(x) for x in self.inc]
        trail: list[int] = []

        def assign(e: int, x: int) -> bool:
            if x == 0:
                return False
            val[e] = x
            trail.append(e)
            a, bb = g.edges[e]
            net[a] = A.add(net[a], x)
            net[bb] = A.sub(net[bb], x)
            left[a] -= 1
            left[bb] -= 1
            for v in (a, bb):
                if left[v] == 1 and self.pedge[v] >= 0 and val[self.pedge[v]] < 0:
                    f = self.pedge[v]
                    need = A.sub(b[v], net[v])
                    y = need if g.edges[f][0] == v else A.neg(need)
                    if not assign(f, y):
                        return False
                elif left[v] == 0 and net[v] != b[v]:
                    return False
            return True

        def undo(mark: int) -> None:
            while len(trail) > mark:
                e = trail.pop()
                a, bb = g.edges[e]
                x = val[e]
                net[a] = A.sub(net[a], x)
                net[bb] = A.add(net[bb], x)
                left[a] += 1
                left[bb] += 1
                val[e] = -1

        for v in range(g.n):
            if left[v] == 1 and self.pedge[v] >= 0 and val[self.pedge[v]] < 0:
                f = self.pedge[v]
                need = A.sub(b[v], net[v])
                if not assign(f, need if g.edges[f][0] == v else A.neg(need)):
                    return None
        for v in range(g.n):
            if left[v] == 0 and net[v] != b[v]:
                return None
        cot = self.cotree

        def rec(i: int) -> bool:
            nodes[0] += 1
            if node_limit and nodes[0] > node_limit:
                raise TimeoutError("node budget exhausted")
            if i == len(cot):
                return all(x > 0 for x in val) and all(net[v] == b[v] for v in range(g.n))
            e = cot[i]
            if val[e] >= 0:
                return rec(i + 1)
            for x in A.elements:
                mark = len(trail)
                if assign(e, x) and rec(i + 1):
                    return True
                undo(mark)
            return False

        if sys.getrecursionlimit() < len(cot) + 100:
            sys.setrecursionlimit(len(cot) + 100)
        return list(val) if rec(0) else None

    def tree_path(self, u: int, v: int) -> list[tuple[int, int]]:
        """(edge id, +1/-1) along the tree path u -> v; +1 when walked tail to head."""
        up_u, up_v = [], []
        while u != v:
            if self.depth[u] >= self.depth[v]:
                e = self.pedge[u]
                up_u.append((e, 1 if self.g.edges[e][0] == u else -1))
                u = self.parent[u]
            else:
                e = self.pedge[v]
                # walked from parent down to v
                up_v.append((e, 1 if self.g.edges[e][1] == v else -1))
                v = self.parent[v]
        return up_u + up_v[::-1]


@dataclass
class AdmissibleResult:
    status: str
    flow: GroupFlow | None
    nodes: int


def admissible(g: Graph, group: FlowGroup, b: Sequence[int] | Boundary,
               node_limit: int = 0) -> AdmissibleResult:
    bb = tuple(b.b if isinstance(b, Boundary) else b)
    if len(bb) != g.n or any(x not in (0, 1, 2, 3) for x in bb):
        raise ValueError("boundary needs one element 0..3 per vertex")
    if not zero_sum_ok(g, group, bb):
        return AdmissibleResult(TRIVIAL, None, 0)
    nodes = [0]
    f = TreeSearch(g, group).solve(bb, node_limit, nodes)
    if f is None:
        return AdmissibleResult(INADMISSIBLE, None, nodes[0])
    if not check_flow(g, group, bb, f):
        raise AssertionError("tree search returned an invalid flow")
    return AdmissibleResult(ADMISSIBLE, GroupFlow(tuple(f)), nodes[0])


def gray_boundaries(n: int, group: FlowGroup, start: int = 0,
                    stop: int | None = None) -> Iterator[tuple[int, tuple[int, ...]]]:
    """(rank, boundary) for ranks in [start, stop) of the modular Gray code
    over the first n-1 vertices; the last vertex takes the forced value.
    Consecutive ranks differ at one free vertex (and the last one)."""
    free = n - 1
    total = 4 ** free
    stop = total if stop is None else min(stop, total)
    for i in range(start, stop):
        d = [(i >> (2 * j)) & 3 for j in range(free)] + [0]
        code = [(d[j] - d[j + 1]) & 3 for j in range(free)]
        yield i, tuple(code) + (group.neg(group.total(code)),)


@dataclass
class ScanState:
    """Progress of a per-boundary scan; serialisable for resume."""
    next_rank: int = 0
    inadmissible: list[str] = field(default_factory=list)
    warm_hits: int = 0
    searches: int = 0
    nodes: int = 0


def per_boundary_scan(g: Graph, group: FlowGroup, start: int = 0, stop: int | None = None,
                      state: ScanState | None = None, checkpoint=None,
                      checkpoint_every: int = 1 << 16, max_boundaries: int = 0) -> ScanState:
    """Every zero-sum boundary in Gray-code order, one tree search each.

    The previous flow is reused when possible: a Gray step changes b at one
    vertex v by delta (and at the last vertex by -delta), so pushing delta
    along the tree path v -> last is a candidate; only if that creates a zero
    is a fresh search run.  ``checkpoint(state)`` is called every
    ``checkpoint_every`` boundaries.
    """
    if g.n < 1:
        raise GraphError("empty graph")
    if len(g.components()) != 1:
        raise GraphError("per-boundary scan expects a connected graph")
    st = state or ScanState(next_rank=start)
    ts = TreeSearch(g, group)
    r = g.n - 1
    prev_b: tuple[int, ...] | None = None
    prev_f: list[int] | None = None
    done = 0
    for rank, b in gray_boundaries(g.n, group, st.next_rank, stop):
        f = None
        if prev_f is not None and prev_b is not None:
            diff = [v for v in range(r) if b[v] != prev_b[v]]
            if len(diff) == 1:
                v = diff[0]
                delta = group.sub(b[v], prev_b[v])
                cand = list(prev_f)
                for e, sgn in ts.tree_path(v, r):
                    cand[e] = group.add(cand[e], delta if sgn > 0 else group.neg(delta))
                if all(cand):
                    f = cand
                    st.warm_hits += 1
        if f is None:
            nodes = [0]
            f = ts.solve(b, 0, nodes)
            st.searches += 1
            st.nodes += nodes[0]
        if f is None:
            st.inadmissible.append("".join(map(str, b)))
        else:
            if not check_flow(g, group, b, f):
                raise AssertionError(f"invalid flow for boundary {b}")
            prev_b, prev_f = b, f
        st.next_rank = rank + 1
        done += 1
        if checkpoint and st.next_rank % checkpoint_every == 0:
            checkpoint(st)
        if max_boundaries and done >= max_boundaries:
            break
    return st


# --------------------------------------------------------- bitset sweep

def graph_digest(g: Graph) -> str:
    payload = json.dumps([g.n, [list(e) for e in g.edges]])
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class SweepPlan:
    n: int
    r: int  # forced vertex
    w: int  # sliced vertex (-1 when n < 2)
    digits: list[int]  # vertex of each base-4 digit
    main_edges: list[int]
    w_edges: list[int]

    @property
    def ndigits(self) -> int:
        return len(self.digits)

    @property
    def nwords(self) -> int:
        return max(1, (4 ** self.ndigits) // 64)

    @property
    def nbits(self) -> int:
        return 4 ** self.ndigits


def plan_sweep(g: Graph) -> SweepPlan:
    r = g.n - 1
    inc = g.incidence()
    cands = [v for v in range(g.n - 1)]
    w = min(cands, key=lambda v: (len(inc[v]), v)) if cands else -1
    digits = [v for v in range(g.n) if v not in (r, w)]
    w_edges = [e for e in range(g.m) if w in g.edges[e]]
    main = [e for e in range(g.m) if e not in set(w_edges)]
    return SweepPlan(g.n, r, w, digits, main, w_edges)


class Checkpoint:
    """Sweep state on disk: ``state.json`` plus ``bits.npy``."""

    def __init__(self, path: str):
        self.path = path

    def save(self, meta: dict, bits: np.ndarray | None) -> None:
        os.makedirs(self.path, exist_ok=True)
        if bits is not None:
            tmp = os.path.join(self.path, "bits.tmp.npy")
            np.save(tmp, bits)
            os.replace(tmp, os.path.join(self.path, "bits.npy"))
        tmp = os.path.join(self.path, "state.json.tmp")
        with open(tmp, "w") as fh:
            json.dump(meta, fh, sort_keys=True)
        os.replace(tmp, os.path.join(self.path, "state.json"))

    def load(self) -> tuple[dict, np.ndarray] | None:
        sp = os.path.join(self.path, "state.json")
        if not os.path.exists(sp):
            return None
        with open(sp) as fh:
            meta = json.load(fh)
        bits = np.load(os.path.join(self.path, "bits.npy"))
        return meta, bits


def _edge_shift(g: Graph, group: FlowGroup, plan: SweepPlan, e: int,
                x: int) -> tuple[list[int], list[int]]:
    """Digit positions and amounts of x * d_e, dropping r (and w)."""
    a, b = g.edges[e]
    where = {v: p for p, v in enumerate(plan.digits)}
    pos, amt = [], []
    for v, y in ((a, x), (b, group.neg(x))):
        if v in where:
            pos.append(where[v])
            amt.append(y)
    return pos, amt


def _zero_bits(arr: np.ndarray, nbits: int) -> np.ndarray:
    """Indices of clear bits below nbits."""
    inv = ~arr
    if nbits < 64:
        inv &= np.uint64((1 << nbits) - 1)
    words = np.nonzero(inv)[0]
    if len(words) == 0:
        return np.zeros(0, dtype=np.int64)
    chunk = inv[words].view(np.uint8).reshape(-1, 8)
    bits = np.unpackbits(chunk, axis=1, bitorder="little")
    wi, bi = np.nonzero(bits)
    return words[wi].astype(np.int64) * 64 + bi.astype(np.int64)


@dataclass
class SweepResult:
    status: str
    inadmissible: list[str]
    shifts: int
    plan: SweepPlan
    seconds: float = 0.0


def sweep(g: Graph, group: FlowGroup, budget: int = 0, checkpoint: str | None = None,
          checkpoint_seconds: float = 300.0, max_bytes: int = 3 << 30) -> SweepResult:
    """All inadmissible zero-sum boundaries of a connected graph.

    ``budget`` caps the number of bitset translations in this call (0 = no
    cap); on hitting it the state is written to ``checkpoint`` and the call
    returns BUDGET.  A later call with the same checkpoint resumes.
    """
    if g.n == 0:
        return SweepResult(COMPLETED, [], 0, plan_sweep(g))
    if len(g.components()) != 1:
        raise GraphError("sweep expects a connected graph")
    plan = plan_sweep(g)
    need = 2 * plan.nwords * 8
    if need > max_bytes:
        raise MemoryError(f"sweep needs {need >> 20} MiB, limit is {max_bytes >> 20} MiB")
    t0 = time.perf_counter()
    ck = Checkpoint(checkpoint) if checkpoint else None
    meta = {"digest": graph_digest(g), "group": group.kind, "stage": 0,
            "slice": 0, "inadmissible": [], "shifts": 0}
    cur = np.zeros(plan.nwords, dtype=np.uint64)
    cur[0] = np.uint64(1)
    if ck:
        loaded = ck.load()
        if loaded:
            old, bits = loaded
            if old.get("digest") != meta["digest"] or old.get("group") != group.kind:
                raise ValueError("checkpoint belongs to a different graph or group")
            meta, cur = old, bits
            log.info("resuming sweep at stage %d slice %d", meta["stage"], meta["slice"])
    nxt = np.zeros_like(cur)
    shifts_here = 0
    last_save = time.perf_counter()

    def out_of_budget() -> bool:
        return bool(budget) and shifts_here >= budget

    def stop() -> SweepResult:
        if ck:
            ck.save(meta, cur)
        return SweepResult(BUDGET, list(meta["inadmissible"]), meta["shifts"], plan,
                           time.perf_counter() - t0)

    while meta["stage"] < len(plan.main_edges):
        if out_of_budget():
            return stop()
        e = plan.main_edges[meta["stage"]]
        nxt.fill(0)
        for x in group.nonzero:
            pos, amt = _edge_shift(g, group, plan, e, x)
            kernels.shift_or(cur, nxt, plan.ndigits, group.code, pos, amt)
        shifts_here += 3
        meta["shifts"] += 3
        cur, nxt = nxt, cur
        meta["stage"] += 1
        if ck and time.perf_counter() - last_save > checkpoint_seconds:
            ck.save(meta, cur)
            last_save = time.perf_counter()

    # slice phase: the edges at w decide b(w); each value t is its own slice
    where = {v: p for p, v in enumerate(plan.digits)}
    combos: dict[int, list[tuple[list[int], list[int]]]] = {t: [] for t in group.elements}
    for vals in itertools.product(group.nonzero, repeat=len(plan.w_edges)):
        tw = 0
        shift: dict[int, int] = {}
        for e, x in zip(plan.w_edges, vals):
            a, b = g.edges[e]
            for v, y in ((a, x), (b, group.neg(x))):
                if v == plan.w:
                    tw = group.add(tw, y)
                elif v in where:
                    p = where[v]
                    shift[p] = group.add(shift.get(p, 0), y)
        keys = sorted(shift)
        combos[tw].append((keys, [shift[p] for p in keys]))
    while meta["slice"] < 4:
        t = meta["slice"]
        if out_of_budget():
            return stop()
        nxt.fill(0)
        for pos, amt in combos[t]:
            kernels.shift_or(cur, nxt, plan.ndigits, group.code, pos, amt)
        shifts_here += len(combos[t])
        meta["shifts"] += len(combos[t])
        for idx in _zero_bits(nxt, plan.nbits):
            b = [0] * g.n
            for p, v in enumerate(plan.digits):
                b[v] = (int(idx) >> (2 * p)) & 3
            if plan.w >= 0:
                b[plan.w] = t
            b[plan.r] = group.neg(group.total(b[v] for v in range(g.n) if v != plan.r))
            meta["inadmissible"].append("".join(map(str, b)))
        meta["slice"] += 1
        if ck:
            ck.save(meta, cur)
    meta["inadmissible"].sort()
    if ck:
        ck.save(meta, cur)
    return SweepResult(COMPLETED, list(meta["inadmissible"]), meta["shifts"], plan,
                       time.perf_counter() - t0)


# ---------------------------------------------------------- counting

def _translate(arr: np.ndarray, group: FlowGroup, axis: int, a: int) -> np.ndarray:
    if a == 0:
        return arr
    if group.kind == "Z4":
        return np.roll(arr, a, axis=axis)
    return np.take(arr, [k ^ a for k in range(4)], axis=axis)


def count_solutions(g: Graph, group: FlowGroup) -> np.ndarray:
    """N(b) for every b over vertices 0..n-2 (the last one forced): array of
    shape (4,)*(n-1) indexed [b(0), ..., b(n-2)]."""
    if g.m > 39:
        raise OverflowError("counts would overflow int64")
    free = g.n - 1
    if free > 12:
        raise MemoryError("counting sweep is for small graphs")
    arr = np.zeros((4,) * free, dtype=np.int64)
    arr[(0,) * free] = 1
    for a, b in g.edges:
        out = np.zeros_like(arr)
        for x in group.nonzero:
            cur = arr
            for v, y in ((a, x), (b, group.neg(x))):
                if v < free:
                    cur = _translate(cur, group, v, y)
            out += cur
        arr = out
    return arr


def brute_force_counts(g: Graph, group: FlowGroup) -> dict[tuple[int, ...], int]:
    """Oracle: boundary of every nowhere-zero assignment, tallied."""
    m = g.m
    vals = np.array(list(itertools.product((1, 2, 3), repeat=m)), dtype=np.int64).reshape(-1, m)
    bnd = np.zeros((len(vals), g.n), dtype=np.int64)
    for e, (a, b) in enumerate(g.edges):
        x = vals[:, e]
        if group.kind == "Z4":
            bnd[:, a] += x
            bnd[:, b] -= x
        else:
            bnd[:, a] ^= x
            bnd[:, b] ^= x
    if group.kind == "Z4":
        bnd %= 4
    keys, counts = np.unique(bnd, axis=0, return_counts=True)
    return {tuple(int(x) for x in k): int(c) for k, c in zip(keys, counts)}


# ---------------------------------------------------------- verdicts

@dataclass
class AlmostResult:
    group: str
    status: str
    inadmissible: list[str]
    verdict: bool | None  # almost-connected?
    method: str
    boundaries: int  # zero-sum boundaries covered
    confirmed: int = 0
    spot_checks: int = 0
    work: int = 0
    seconds: float = 0.0
    checkpoint: str | None = None
    flows: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)  # spot-check witnesses

    def as_dict(self) -> dict:
        return {"group": self.group, "status": self.status, "inadmissible": self.inadmissible,
                "verdict": self.verdict, "method": self.method, "boundaries": self.boundaries,
                "confirmed": self.confirmed, "spot_checks": self.spot_checks, "work": self.work}


def almost_connected(g: Graph, group: FlowGroup, budget: int = 0, method: str = "sweep",
                     checkpoint: str | None = None, orbits: Sequence[str] | None = None,
                     confirm: bool = True, spot_checks: int = 16, seed: int = 0,
                     checkpoint_seconds: float = 300.0) -> AlmostResult:
    """Is every zero-sum boundary except 0 admissible?

    method "sweep": bitset over all boundaries (budget counts translations);
    "per-boundary": Gray-code scan (budget counts boundaries).
    ``orbits``: boundary strings, one representative per automorphism orbit,
    supplied by the caller; only those are tested and the verdict assumes
    the list is complete.
    """
    if len(g.components()) != 1:
        raise GraphError("almost_connected expects a connected graph")
    t0 = time.perf_counter()
    zero = "0" * g.n
    total = 4 ** (g.n - 1)
    if orbits is not None:
        bad = []
        for s in orbits:
            bnd = Boundary.from_string(s)
            if len(bnd.b) != g.n:
                raise ValueError(f"orbit representative {s!r} has wrong length")
            if admissible(g, group, bnd).status != ADMISSIBLE:
                bad.append(s)
        bad.sort()
        return AlmostResult(group.kind, COMPLETED, bad, bad == [zero], "orbits", len(orbits),
                            len(bad), 0, len(orbits), time.perf_counter() - t0)
    if method == "sweep":
        res = sweep(g, group, budget, checkpoint, checkpoint_seconds)
        bad, status, work = res.inadmissible, res.status, res.shifts
    elif method == "per-boundary":
        state = None
        if checkpoint and os.path.exists(os.path.join(checkpoint, "scan.json")):
            with open(os.path.join(checkpoint, "scan.json")) as fh:
                raw = json.load(fh)
            if raw.pop("digest") != graph_digest(g) or raw.pop("group") != group.kind:
                raise ValueError("checkpoint belongs to a different graph or group")
            state = ScanState(**raw)

        def save(st: ScanState) -> None:
            if not checkpoint:
                return
            os.makedirs(checkpoint, exist_ok=True)
            with open(os.path.join(checkpoint, "scan.json"), "w") as fh:
                json.dump({"digest": graph_digest(g), "group": group.kind, **st.__dict__},
                          fh, sort_keys=True)

        st = per_boundary_scan(g, group, state=state, checkpoint=save, max_boundaries=budget)
        save(st)
        bad = sorted(st.inadmissible)
        status = COMPLETED if st.next_rank >= total else BUDGET
        work = st.searches
    else:
        raise ValueError(f"unknown method {method!r}")
    out = AlmostResult(group.kind, status, bad, None, method,
                       total if status == COMPLETED else 0, work=work, checkpoint=checkpoint)
    if status != COMPLETED:
        out.seconds = time.perf_counter() - t0
        return out
    if confirm:
        for s in bad:
            if admissible(g, group, Boundary.from_string(s)).status == ADMISSIBLE:
                raise AssertionError(f"boundary {s} reported inadmissible but a flow exists")
            out.confirmed += 1
    # a few boundaries the sweep calls admissible get an explicit witness
    rng = random.Random(seed)
    badset = set(bad)
    tries = 0
    while out.spot_checks < spot_checks and tries < 50 * spot_checks:
        tries += 1
        free = [rng.randrange(4) for _ in range(g.n - 1)]
        b = free + [group.neg(group.total(free))]
        s = "".join(map(str, b))
        if s in badset:
            continue
        res = admissible(g, group, b)
        if res.status != ADMISSIBLE:
            raise AssertionError(f"boundary {s} missed by the sweep")
        out.flows.append((s, res.flow.f))
        out.spot_checks += 1
    out.verdict = bad == [zero]
    out.seconds = time.perf_counter() - t0
    return out


# ---------------------------------------------------------- criticality

BICRITICAL = "bicritical"
CRITICAL = "critical-not-bicritical"
NEITHER = "neither"


@dataclass
class CriticalityResult:
    cls: str
    failing_pair: tuple[int, int] | None  # first pair whose deletion is class 2
    pairs_checked: int


def criticality_class(g: Graph) -> CriticalityResult:
    if not g.is_simple() or any(d != 3 for d in g.degrees()):
        raise GraphError("criticality_class needs a simple cubic graph")
    adj = g.neighbor_sets()
    checked = 0
    first_bad_adjacent = None
    first_bad = None
    for u, v in itertools.combinations(range(g.n), 2):
        checked += 1
        if not is_three_edge_colorable(g.delete_vertices((u, v))):
            if v in adj[u]:
                first_bad_adjacent = (u, v)
                break
            if first_bad is None:
                first_bad = (u, v)
    if first_bad_adjacent:
        return CriticalityResult(NEITHER, first_bad_adjacent, checked)
    if first_bad:
        return CriticalityResult(CRITICAL, first_bad, checked)
    return CriticalityResult(BICRITICAL, None, checked)
