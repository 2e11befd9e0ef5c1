"""Small named graphs used as instances and test fixtures."""
from __future__ import annotations

import os
from importlib import resources

from .graph import Graph, GraphError, complete_bipartite, complete_graph, cube, prism, read_graph6_file


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    es = sorted((min(a, b), max(a, b)) for a, b in outer + inner + spokes)
    return Graph(10, tuple(es), "Petersen")


def tietze() -> Graph:
    """Petersen graph with vertex 0 replaced by a triangle."""
    p = petersen()
    nbrs = sorted(p.neighbor_sets()[0])
    # vertices 1..9 keep labels 0..8, the triangle is 9, 10, 11
    relabel = {v: v - 1 for v in range(1, 10)}
    es = [(relabel[a], relabel[b]) for a, b in p.edges if 0 not in (a, b)]
    tri = [9, 10, 11]
    es += [(9, 10), (9, 11), (10, 11)]
    es += [(relabel[w], t) for w, t in zip(nbrs, tri)]
    return Graph(12, tuple(sorted((min(a, b), max(a, b)) for a, b in es)), "Tietze")


def dot_product(g: Graph, e1: tuple[int, int], e2: tuple[int, int],
                h: Graph, xy: tuple[int, int]) -> Graph:
    """Isaacs' dot product G.H of two cubic graphs.

    Delete independent edges ab = e1, cd = e2 from G and adjacent vertices
    x, y from H; join a, b to the other neighbours of x and c, d to those of y.
    """
    a, b = e1
    c, d = e2
    x, y = xy
    if len({a, b, c, d}) != 4:
        raise GraphError("dot product needs two independent edges")
    hn = h.neighbor_sets()
    if y not in hn[x]:
        raise GraphError("dot product needs adjacent x, y in H")
    x1, x2 = sorted(hn[x] - {y})
    y1, y2 = sorted(hn[y] - {x})
    drop = {tuple(sorted(e1)), tuple(sorted(e2))}
    es = [(u, v) for u, v in g.edges if tuple(sorted((u, v))) not in drop]
    keep = [v for v in range(h.n) if v not in (x, y)]
    shift = {v: g.n + i for i, v in enumerate(keep)}
    es += [(shift[u], shift[v]) for u, v in h.edges if u in shift and v in shift]
    es += [(a, shift[x1]), (b, shift[x2]), (c, shift[y1]), (d, shift[y2])]
    n = g.n + h.n - 2
    return Graph(n, tuple(sorted((min(u, v), max(u, v)) for u, v in es)))


def blanusa(which: int) -> Graph:
    """The two Blanusa snarks on 18 vertices as Petersen.Petersen.

    The removed independent edges of the first factor are at distance 1
    (which=1) or distance 2 (which=2) in the line graph sense: joined by an
    edge, or not.
    """
    p = petersen()
    # outer 5-cycle edges (0,1) and (2,3) are joined by edge (1,2);
    # (0,1) and the inner edge (7,9) are not joined by any edge
    if which == 1:
        e1, e2 = (0, 1), (2, 3)
    elif which == 2:
        e1, e2 = (0, 1), (7, 9)
    else:
        raise ValueError("which must be 1 or 2")
    g = dot_product(p, e1, e2, p, (0, 5))
    return Graph(g.n, g.edges, f"Blanusa{which}")


def flower_snark(k: int = 5) -> Graph:
    """J_k: centres a_i, spokes b_i on a k-cycle, c/d forming a 2k-cycle."""
    if k < 3 or k % 2 == 0:
        raise GraphError("flower snarks need odd k >= 3")
    a = lambda i: 4 * i
    b = lambda i: 4 * i + 1
    c = lambda i: 4 * i + 2
    d = lambda i: 4 * i + 3
    es = []
    for i in range(k):
        j = (i + 1) % k
        es += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b(j))]
        if i < k - 1:
            es += [(c(i), c(j)), (d(i), d(j))]
    es += [(c(k - 1), d(0)), (d(k - 1), c(0))]
    return Graph(4 * k, tuple(sorted((min(u, v), max(u, v)) for u, v in es)), f"J{k}")


def subdivided_prism() -> Graph:
    """Triangular prism with triangle edge a0a1 subdivided by vertex 6.

    Triangles a0a1a2 = 0,1,2 and b0b1b2 = 3,4,5, rungs a_i b_i.
    """
    es = [(0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5), (0, 6), (1, 6)]
    return Graph(7, tuple(es), "subdivided-prism")


NAMED = {
    "K4": lambda: complete_graph(4),
    "K33": lambda: complete_bipartite(3, 3),
    "prism3": lambda: prism(3),
    "cube": cube,
    "Petersen": petersen,
    "Tietze": tietze,
    "Blanusa1": lambda: blanusa(1),
    "Blanusa2": lambda: blanusa(2),
    "J5": lambda: flower_snark(5),
}


def named(name: str) -> Graph:
    if name.startswith("prism") and name[5:].isdigit():
        return prism(int(name[5:]))
    try:
        g = NAMED[name]()
    except KeyError:
        raise KeyError(f"unknown graph name {name!r}; known: {sorted(NAMED)}") from None
    return Graph(g.n, g.edges, name)


def data_path(filename: str) -> str:
    return str(resources.files("candc") / "data" / filename)


def load_corpus(path: str) -> list[Graph]:
    """graph6 corpus by path, or by bare file name from the bundled data."""
    if not os.path.exists(path):
        bundled = data_path(path)
        if os.path.exists(bundled):
            path = bundled
    return [g for _, g in read_graph6_file(path)]
