"""Build the bundled graph6 corpora of small connected cubic graphs.

Orderly-ish DFS (fresh vertices are interchangeable, so only the lowest
fresh label is ever opened) followed by isomorphism dedup with networkx.
Counts are checked against the known enumerations:
connected cubic 4..12 -> 1, 2, 5, 19, 85 (OEIS A002851);
connected bipartite cubic 6..14 -> 1, 1, 2, 5, 13 (OEIS A006823).

    python tools/gen_cubic_corpus.py [outdir]
"""
from __future__ import annotations

import os
import sys

import networkx as nx

from candc.graph import Graph, write_graph6_file

CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85}
BIPARTITE_COUNTS = {6: 1, 8: 1, 10: 2, 12: 5, 14: 13}


def labeled_cubic(n: int, bipartite: bool = False):
    deg = [0] * n
    side = [-1] * n
    side[0] = 0
    adj = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []
    next_fresh = [1]

    def rec(v):
        while v < n and deg[v] == 3:
            v += 1
        if v == n:
            yield list(edges)
            return
        if deg[v] == 0 and v > 0:
            return  # disconnected
        # choose one more neighbour for v (others come on later calls)
        lo = edges[-1][1] + 1 if edges and edges[-1][0] == v else v + 1
        for w in range(lo, min(next_fresh[0] + 1, n)):
            if deg[w] == 3 or w in adj[v]:
                continue
            fresh = w == next_fresh[0]
            if bipartite:
                if fresh:
                    side[w] = 1 - side[v]
                elif side[w] == side[v]:
                    continue
            deg[v] += 1
            deg[w] += 1
            adj[v].add(w)
            adj[w].add(v)
            edges.append((v, w))
            if fresh:
                next_fresh[0] += 1
            yield from rec(v)
            if fresh:
                next_fresh[0] -= 1
                if bipartite:
                    side[w] = -1
            edges.pop()
            adj[v].discard(w)
            adj[w].discard(v)
            deg[v] -= 1
            deg[w] -= 1

    yield from rec(0)


def unique_cubic(n: int, bipartite: bool = False) -> list[Graph]:
    buckets: dict[str, list[nx.Graph]] = {}
    out = []
    for es in labeled_cubic(n, bipartite):
        h = nx.Graph(es)
        key = nx.weisfeiler_lehman_graph_hash(h, iterations=4)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, other) for other in bucket):
            continue
        bucket.append(h)
        out.append(Graph(n, tuple(sorted(es))))
    return out


def main(outdir: str) -> None:
    os.makedirs(outdir, exist_ok=True)
    for n, want in CUBIC_COUNTS.items():
        gs = unique_cubic(n)
        assert len(gs) == want, (n, len(gs), want)
        write_graph6_file(os.path.join(outdir, f"cubic{n:02d}.g6"), gs)
        print(f"cubic n={n}: {len(gs)}")
    for n, want in BIPARTITE_COUNTS.items():
        gs = unique_cubic(n, bipartite=True)
        assert len(gs) == want, (n, len(gs), want)
        write_graph6_file(os.path.join(outdir, f"bipartite_cubic{n:02d}.g6"), gs)
        print(f"bipartite cubic n={n}: {len(gs)}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/candc/data")
