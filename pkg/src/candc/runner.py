"""Dispatch a RunConfig to the owning module and turn results into reports."""
from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

from .config import ConfigError, RunConfig
from .graph import Graph, Graph6Error, GraphError, bridges, prism, read_graph6_file, truncate
from .reports import SearchReport, append_reports, graph_instance, write_summary

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION, EXIT_BUDGET, EXIT_ERROR = 0, 2, 3, 1


# ------------------------------------------------------------ instances

def resolve_graphs(spec: str) -> list[tuple[str, Graph]]:
    """A graph6 path, a bundled corpus name, or a named graph."""
    from .named import NAMED, data_path, named

    if os.path.exists(spec):
        path, tag = spec, f"file:{spec}"
    elif os.path.exists(data_path(spec)):
        path, tag = data_path(spec), f"data:{spec}"
    elif spec in NAMED or (spec.startswith("prism") and spec[5:].isdigit()):
        return [(f"named:{spec}", named(spec))]
    else:
        raise ConfigError(f"cannot read graph source {spec!r} (not a file, bundled corpus or named graph)")
    try:
        return [(f"{tag}:{lineno}", g) for lineno, g in read_graph6_file(path)]
    except (OSError, Graph6Error) as exc:
        raise ConfigError(f"unreadable corpus {spec}: {exc}") from None


def _need(cfg: RunConfig, *keys: str) -> None:
    missing = [k for k in keys if cfg.params.get(k) is None]
    if missing:
        raise ConfigError(f"{cfg.problem}: missing {', '.join('--' + k for k in missing)}")


# ------------------------------------------------------------ per-problem work
# Pool jobs are (task name, config, args) tuples so they pickle cleanly.

def _report(cfg: RunConfig, instance_id: str, status: str, t0: float, *, witness=None,
            stats=None, instance=None, violation=False) -> SearchReport:
    st = dict(stats or {})
    st["wall_time"] = round(time.perf_counter() - t0, 6)
    return SearchReport(cfg.problem, instance_id, status, witness, st, instance, violation,
                        cfg.seed, cfg.digest)


def task_ramsey(cfg: RunConfig) -> list[SearchReport]:
    from . import ramsey as R

    _need(cfg, "n")
    p, n = cfg.params, cfg.params["n"]
    t0 = time.perf_counter()
    if p["find-value"]:
        rv = R.ramsey_value(n, p["m-cap"], p["budget"])
        largest = rv.largest_avoidable
        wit = {"n": n, "value": rv.value, "largest_avoidable": largest,
               "steps": [{"m": s.m, "status": s.status, "nodes": s.nodes} for s in rv.steps]}
        for s in rv.steps:
            if s.m == largest and s.coloring is not None:
                wit["m"], wit["coloring"] = s.m, s.coloring.as_string()
        status = "witness-found" if rv.status == "resolved" else "budget-exceeded"
        bad = rv.value is not None and not (3 * n - 1 <= rv.value <= 4 * n - 2)
        bad = bad or (largest is not None and largest >= R.prop12_threshold(n))
        return [_report(cfg, f"ramsey:n={n}:find-value", status, t0, witness=wit,
                        stats={"nodes": rv.nodes}, instance={"n": n}, violation=bad)]
    _need(cfg, "m")
    m = p["m"]
    if p["split-depth"]:
        res = R.split_search(m, n, p["split-depth"], p["budget"])
    else:
        res = R.find_avoiding_coloring(m, n, p["budget"])
    wit = None
    if res.coloring is not None:
        wit = {"m": m, "n": n, "coloring": res.coloring.as_string()}
    bad = res.coloring is not None and m >= R.prop12_threshold(n)
    return [_report(cfg, f"ramsey:m={m}:n={n}", res.status, t0, witness=wit,
                    stats={"nodes": res.nodes}, instance={"m": m, "n": n}, violation=bad)]


def task_alon_tarsi(cfg: RunConfig) -> list[SearchReport]:
    from . import alon_tarsi as AT

    p = cfg.params
    if p["graph"]:
        return run_graph_tasks(cfg, "alon_tarsi_graph", resolve_graphs(p["graph"]))
    _need(cfg, "n")
    mode = "exhaustive" if p["exhaustive"] or not p["samples"] else "sampled"
    t0 = time.perf_counter()
    st = AT.expectation_experiment(p["n"], mode, p["samples"], cfg.seed, p["orientation"])
    os.makedirs(cfg.out, exist_ok=True)
    hist = os.path.join(cfg.out, f"alon_tarsi_hist_n{p['n']}_{mode}_{p['orientation']}.csv")
    with open(hist, "w", encoding="utf-8") as fh:
        fh.write(st.histogram_csv())
    wit = st.as_dict()
    # the stated claim is a zero mean; an exhaustive nonzero mean contradicts it
    bad = mode == "exhaustive" and st.mean != 0
    iid = f"two-cycle-union:n={p['n']}:{mode}:{p['orientation']}"
    if mode == "sampled":
        iid += f":samples={p['samples']}:seed={cfg.seed}"
    return [_report(cfg, iid, "witness-found", t0, witness=wit, stats={"graphs": st.count},
                    instance={"n": p["n"]}, violation=bad)]


def alon_tarsi_graph(cfg: RunConfig, iid: str, g: Graph) -> SearchReport:
    from .alon_tarsi import at_coefficient

    t0 = time.perf_counter()
    if any(d % 2 for d in g.degrees()):
        return _report(cfg, iid, "precondition-failed", t0, instance=graph_instance(g),
                       stats={"reason": "odd degree"})
    res = at_coefficient(g)
    wit = {"coefficient": res.coefficient, "even_count": res.even_count,
           "odd_count": res.odd_count, "exponent": [d // 2 for d in g.degrees()],
           "kind": res.status}
    return _report(cfg, iid, "witness-found", t0, witness=wit, stats={"nodes": res.nodes},
                   instance=graph_instance(g))


def task_strong_color(cfg: RunConfig) -> list[SearchReport]:
    from .strong_color import build_union, hunt_counterexample

    _need(cfg, "s", "k", "nmax")
    p = cfg.params
    t0 = time.perf_counter()
    strategy = "random" if p["random"] else "exhaustive"
    try:
        res = hunt_counterexample(p["s"], p["k"], p["nmax"], strategy, cfg.seed, p["random"],
                                  p["budget"], p["d"], p["max-instances"])
    except ValueError as exc:
        return [_report(cfg, f"strong-color:s={p['s']}:k={p['k']}", "precondition-failed", t0,
                        stats={"reason": str(exc)})]
    iid = f"strong-color:s={p['s']}:k={p['k']}:nmax={p['nmax']}:d={p['d']}:{strategy}"
    if strategy == "random":
        iid += f":trials={p['random']}:seed={cfg.seed}"
    stats = {"nodes": res.nodes, "instances": res.instances,
             "per_n": {str(k): v for k, v in sorted(res.per_n.items())}}
    if res.witness is not None:
        g = build_union(res.witness)
        wit = {"uncolorable": res.witness.as_dict(), "k": p["k"],
               "adjacency": [sorted(a) for a in g.neighbor_sets()]}
        return [_report(cfg, iid, "witness-found", t0, witness=wit, stats=stats,
                        instance=graph_instance(g), violation=True)]
    return [_report(cfg, iid, res.status, t0, stats=stats)]


def strong_edge_graph(cfg: RunConfig, iid: str, g: Graph, truncated: bool) -> SearchReport:
    from .strong_edge import line_graph_square, strong_chromatic_index, truncation_clique

    t0 = time.perf_counter()
    if truncated:
        if not g.is_simple() or any(d != 3 for d in g.degrees()):
            return _report(cfg, iid, "precondition-failed", t0, stats={"reason": "not cubic"},
                           instance=graph_instance(g))
        base_n = g.n
        g = truncate(g)
        sq = line_graph_square(g)
        cl = truncation_clique(g, 0)
        lower_ok = all(f in sq[e] for e in cl for f in cl if e != f)
        res = strong_chromatic_index(g, 6 if lower_ok else 0, 9)
        wit = {"colors": list(res.witness.colors), "k": res.k, "clique": res.clique,
               "lower_bound_clique": cl if lower_ok else None}
        return _report(cfg, f"T({iid})", "witness-found", t0, witness=wit,
                       stats={"nodes": res.nodes, "base_n": base_n},
                       instance=graph_instance(g), violation=res.k != 6)
    if not g.is_simple() or g.m == 0:
        return _report(cfg, iid, "precondition-failed", t0, stats={"reason": "needs a simple graph with edges"},
                       instance=graph_instance(g))
    res = strong_chromatic_index(g)
    wit = {"colors": list(res.witness.colors), "k": res.k, "clique": res.clique}
    return _report(cfg, iid, "witness-found", t0, witness=wit, stats={"nodes": res.nodes},
                   instance=graph_instance(g))


def task_strong_edge(cfg: RunConfig) -> list[SearchReport]:
    p = cfg.params
    jobs: list[tuple[str, Graph, bool]] = []
    if p["graph"]:
        jobs += [(i, g, False) for i, g in resolve_graphs(p["graph"])]
    if p["truncate-corpus"]:
        jobs += [(i, g, True) for i, g in resolve_graphs(p["truncate-corpus"])]
    if p["prisms"]:
        jobs += [(f"prism:q={q}", prism(q), True) for q in range(3, p["prisms"] + 1)]
    if not jobs:
        raise ConfigError("strong-edge: give --graph, --truncate-corpus or --prisms")
    reports = _pool(cfg, "strong_edge_graph", [(i, g, t) for i, g, t in jobs])
    os.makedirs(cfg.out, exist_ok=True)
    with open(os.path.join(cfg.out, "strong_edge.csv"), "w", encoding="utf-8") as fh:
        fh.write("graph_id,n,chi_s,nodes,seconds\n")
        for r in reports:
            if r.witness:
                fh.write(f"{r.instance_id},{r.instance['n']},{r.witness['k']},"
                         f"{r.stats.get('nodes', 0)},{r.stats['wall_time']}\n")
    return reports


def homogeneous_graph(cfg: RunConfig, iid: str, g: Graph, scan: bool) -> SearchReport:
    from .homogeneous import BUDGET, WITNESS, scan_graph

    t0 = time.perf_counter()
    p = cfg.params
    if not g.is_simple():
        return _report(cfg, iid, "precondition-failed", t0, stats={"reason": "not simple"},
                       instance=graph_instance(g))
    if scan and any(d != 3 for d in g.degrees()):
        return _report(cfg, iid, "precondition-failed", t0, stats={"reason": "not cubic"},
                       instance=graph_instance(g))
    row = scan_graph(g, p["k"], p["cmax"], p["budget"], iid)
    stats = {"nodes": row.nodes, "bridgeless": row.bridgeless, "bipartite": row.bipartite,
             "obstruction": row.obstruction, "min_colors": row.min_colors}
    bad = False
    if scan and p["k"] == 2:
        bad = row.obstruction and row.admits
        # claimed bounds: 6 colors for bipartite cubic graphs, 4 for admitters
        bad = bad or (row.bipartite and p["cmax"] >= 6 and row.status != BUDGET
                      and (row.min_colors is None or row.min_colors > 6))
        bad = bad or (row.min_colors is not None and row.min_colors > 4)
    if row.status == WITNESS:
        wit = {"colors": list(row.witness), "k": p["k"], "c": row.min_colors}
        return _report(cfg, iid, WITNESS, t0, witness=wit, stats=stats,
                       instance=graph_instance(g), violation=bad)
    return _report(cfg, iid, row.status, t0, stats=stats, instance=graph_instance(g), violation=bad)


def task_homogeneous(cfg: RunConfig) -> list[SearchReport]:
    p = cfg.params
    jobs = []
    if p["graph"]:
        jobs += [(i, g, False) for i, g in resolve_graphs(p["graph"])]
    if p["scan"]:
        jobs += [(i, g, True) for i, g in resolve_graphs(p["scan"])]
    if not jobs:
        raise ConfigError("homogeneous: give --graph or --scan")
    reports = _pool(cfg, "homogeneous_graph", jobs)
    if p["scan"]:
        os.makedirs(cfg.out, exist_ok=True)
        with open(os.path.join(cfg.out, "homogeneous_scan.csv"), "w", encoding="utf-8") as fh:
            fh.write("graph_id,bridgeless,admits,min_colors\n")
            for r in reports:
                if r.status == "precondition-failed":
                    continue
                mc = r.stats.get("min_colors")
                fh.write(f"{r.instance_id},{int(r.stats['bridgeless'])},"
                         f"{int(r.status == 'witness-found')},{'' if mc is None else mc}\n")
    return reports


def flow_pair_graph(cfg: RunConfig, iid: str, g: Graph) -> SearchReport:
    from .flow_pair import find_flow_pair

    t0 = time.perf_counter()
    br = bridges(g)
    if br:
        return _report(cfg, iid, "precondition-failed", t0, instance=graph_instance(g),
                       stats={"reason": f"bridge at edge {br[0]}"})
    res = find_flow_pair(g, cfg.params["budget"], cfg.params["all"])
    stats = {"nodes": res.nodes, "supports_tried": res.supports_tried}
    if cfg.params["all"]:
        stats["extendable_supports"] = res.extendable
    if res.pair is not None:
        wit = res.pair.as_dict()
        wit["orientation"] = [list(e) for e in g.edges]
        status = "witness-found" if res.status != "budget-exceeded" else res.status
        return _report(cfg, iid, status, t0, witness=wit, stats=stats, instance=graph_instance(g))
    # an exhausted search on a bridgeless graph would refute the conjecture
    return _report(cfg, iid, res.status, t0, stats=stats, instance=graph_instance(g),
                   violation=res.status == "exhausted-none")


def task_flow_pair(cfg: RunConfig) -> list[SearchReport]:
    _need(cfg, "graph")
    return run_graph_tasks(cfg, "flow_pair_graph", resolve_graphs(cfg.params["graph"]))


def _groups(text: str):
    from .group_conn import FlowGroup, Z2Z2, Z4

    if text.strip().lower() == "both":
        return [Z4, Z2Z2]
    try:
        return [FlowGroup.parse(t) for t in text.split(",")]
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def group_conn_graph(cfg: RunConfig, iid: str, g: Graph, group_kind: str) -> SearchReport:
    from .group_conn import BUDGET, FlowGroup, almost_connected, criticality_class, graph_digest

    t0 = time.perf_counter()
    p = cfg.params
    group = FlowGroup(group_kind)
    iid = f"{iid}:{group.kind}"
    if len(g.components()) != 1:
        return _report(cfg, iid, "precondition-failed", t0, stats={"reason": "disconnected"},
                       instance=graph_instance(g))
    orbits = None
    if p["orbits"]:
        with open(p["orbits"], encoding="utf-8") as fh:
            orbits = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    ck = p["resume"]
    if ck is None and g.n >= 16:
        ck = os.path.join(cfg.out, "checkpoints", f"{graph_digest(g)}-{group.kind}")
    elif ck is not None:
        ck = os.path.join(ck, f"{graph_digest(g)}-{group.kind}")
    res = almost_connected(g, group, p["budget"], p["method"], ck, orbits, seed=cfg.seed,
                           checkpoint_seconds=p["checkpoint-seconds"])
    stats = {"work": res.work, "boundaries": res.boundaries, "method": res.method,
             "confirmed": res.confirmed, "spot_checks": res.spot_checks}
    if ck:
        stats["checkpoint"] = ck
    crit = None
    if g.is_simple() and all(d == 3 for d in g.degrees()):
        crit = criticality_class(g).cls
        stats["criticality"] = crit
    if res.status == BUDGET:
        return _report(cfg, iid, "budget-exceeded", t0, stats=stats, instance=graph_instance(g))
    wit = {"group": group.kind, "inadmissible": res.inadmissible, "verdict": res.verdict,
           "flows": [{"boundary": s, "flow": list(f)} for s, f in res.flows]}
    # a bicritical graph that is not almost connected would answer the open question
    bad = crit == "bicritical" and res.verdict is False
    return _report(cfg, iid, "witness-found", t0, witness=wit, stats=stats,
                   instance=graph_instance(g), violation=bad)


def group_conn_classify(cfg: RunConfig, iid: str, g: Graph) -> SearchReport:
    from .group_conn import criticality_class

    t0 = time.perf_counter()
    try:
        res = criticality_class(g)
    except GraphError as exc:
        return _report(cfg, iid, "precondition-failed", t0, stats={"reason": str(exc)},
                       instance=graph_instance(g))
    wit = {"class": res.cls, "failing_pair": list(res.failing_pair) if res.failing_pair else None}
    return _report(cfg, iid, "witness-found", t0, witness=wit,
                   stats={"pairs_checked": res.pairs_checked}, instance=graph_instance(g))


def task_group_conn(cfg: RunConfig) -> list[SearchReport]:
    p = cfg.params
    if p["method"] not in ("sweep", "per-boundary"):
        raise ConfigError(f"group-conn: unknown method {p['method']!r}")
    out: list[SearchReport] = []
    if p["graph"]:
        groups = _groups(p["group"])
        jobs = [(i, g, grp.kind) for i, g in resolve_graphs(p["graph"]) for grp in groups]
        out += _pool(cfg, "group_conn_graph", jobs)
    if p["classify"]:
        out += run_graph_tasks(cfg, "group_conn_classify", resolve_graphs(p["classify"]))
    if not p["graph"] and not p["classify"]:
        raise ConfigError("group-conn: give --graph or --classify")
    return out


# ------------------------------------------------------------ pool

_TASKS: dict[str, Callable] = {
    "alon_tarsi_graph": alon_tarsi_graph,
    "strong_edge_graph": strong_edge_graph,
    "homogeneous_graph": homogeneous_graph,
    "flow_pair_graph": flow_pair_graph,
    "group_conn_graph": group_conn_graph,
    "group_conn_classify": group_conn_classify,
}


def _call(args: tuple) -> SearchReport:
    name, cfg, rest = args
    return _TASKS[name](cfg, *rest)


def _pool(cfg: RunConfig, name: str, jobs: Iterable[tuple]) -> list[SearchReport]:
    """Run independent jobs; results come back in job order whatever the
    worker count, so the report stream is deterministic."""
    work = [(name, cfg, tuple(j)) for j in jobs]
    workers = cfg.effective_workers()
    if workers <= 1 or len(work) <= 1:
        return [_call(w) for w in work]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_call, work))


def run_graph_tasks(cfg: RunConfig, name: str, graphs: list[tuple[str, Graph]]) -> list[SearchReport]:
    return _pool(cfg, name, graphs)


DISPATCH: dict[str, Callable[[RunConfig], list[SearchReport]]] = {
    "ramsey": task_ramsey,
    "alon-tarsi": task_alon_tarsi,
    "strong-color": task_strong_color,
    "strong-edge": task_strong_edge,
    "homogeneous": task_homogeneous,
    "flow-pair": task_flow_pair,
    "group-conn": task_group_conn,
}


def exit_code(reports: Iterable[SearchReport]) -> int:
    reports = list(reports)
    if any(r.violation for r in reports):
        return EXIT_VIOLATION
    if any(r.status == "budget-exceeded" for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def validate(cfg: RunConfig) -> None:
    """Everything that can be checked before work starts."""
    p = cfg.params
    for key in ("graph", "truncate-corpus", "scan", "classify"):
        if key in p and p[key]:
            resolve_graphs(p[key])
    if cfg.problem == "group-conn":
        _groups(p["group"])
        if p["orbits"] and not os.path.exists(p["orbits"]):
            raise ConfigError(f"orbits file {p['orbits']} not found")
    if cfg.problem == "alon-tarsi" and p["orientation"] not in ("canonical", "traversal"):
        raise ConfigError(f"alon-tarsi: unknown orientation {p['orientation']!r}")


def run(cfg: RunConfig, write: bool = True) -> tuple[list[SearchReport], int]:
    validate(cfg)
    reports = DISPATCH[cfg.problem](cfg)
    if write:
        os.makedirs(cfg.out, exist_ok=True)
        path = os.path.join(cfg.out, "results.jsonl")
        append_reports(path, reports)
        write_summary(path, os.path.join(cfg.out, "summary.csv"))
    return reports, exit_code(reports)
