"""Compiled kernels vs their pure-Python twins on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each row runs the same call on both backends, checks the results agree and
prints the best-of-N times and the speedup.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from candc import kernels
from candc.alon_tarsi import _edge_order
from candc.coloring import line_graph, to_csr
from candc.graph import random_two_cycle_union
from candc.named import flower_snark


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads(quick: bool):
    # exact coloring: refuting a 3-edge-coloring of a flower snark
    k = 5 if quick else 7
    lg = line_graph(flower_snark(k))
    indptr, indices = to_csr(lg)
    n = len(lg)
    yield f"color_search k=3 on L(J{k})", lambda b: b.color_search(
        n, indptr, indices, 3, [-1] * n, 0)[::2]

    g = random_two_cycle_union(9 if quick else 15, seed=1)
    es = _edge_order(g)
    ea, eb = [a for a, _ in es], [b for _, b in es]
    yield f"at_count two-cycle union n={g.n}", lambda b: b.at_count(g.n, ea, eb, [2] * g.n)

    m = 7 if quick else 8
    yield f"ramsey_avoid m={m} n=3", lambda b: b.ramsey_avoid(m, 3, 0, [])

    nd = 10 if quick else 13
    rng = np.random.default_rng(0)
    src = rng.integers(0, 2 ** 63, size=max(1, 4 ** nd // 64), dtype=np.uint64)

    def sweep(b):
        dst = np.zeros_like(src)
        for grp in (kernels.Z4, kernels.Z2Z2):
            b.shift_or(src, dst, nd, grp, [1, 5, nd - 1], [1, 2, 3])
        return int(dst.sum(dtype=np.uint64))

    yield f"shift_or {nd} digits", sweep


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    bk = kernels.backends()
    if "cython" not in bk:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'workload':44s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in workloads(args.quick):
        tp, rp = _best(lambda: fn(bk["python"]), args.repeat)
        if "cython" in bk:
            tc, rc = _best(lambda: fn(bk["cython"]), args.repeat)
            if rp != rc:
                raise SystemExit(f"backends disagree on {name}: {rp} vs {rc}")
            print(f"{name:44s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")
        else:
            print(f"{name:44s} {tp:10.4f} {'-':>10s}")


if __name__ == "__main__":
    main()
