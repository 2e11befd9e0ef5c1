"""SearchReport records, JSON Lines persistence and witness revalidation."""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import __version__
from .graph import Graph

PROBLEMS = ("ramsey", "alon-tarsi", "strong-color", "strong-edge", "homogeneous",
            "flow-pair", "group-conn")
STATUSES = ("witness-found", "exhausted-none", "budget-exceeded", "precondition-failed")
WALL_FIELDS = ("wall_time",)


@dataclass
class SearchReport:
    problem_id: str
    instance_id: str
    status: str
    witness: dict | None = None
    stats: dict = field(default_factory=dict)
    instance: dict | None = None  # graph or parameters the witness refers to
    violation: bool = False  # counterexample to a stated claim, or a failed check
    seed: int | None = None
    config_digest: str = ""
    tool_version: str = __version__

    def __post_init__(self) -> None:
        if self.problem_id not in PROBLEMS:
            raise ValueError(f"unknown problem_id {self.problem_id!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def as_dict(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "instance_id": self.instance_id,
            "status": self.status,
            "witness": self.witness,
            "stats": self.stats,
            "instance": self.instance,
            "violation": self.violation,
            "seed": self.seed,
            "config_digest": self.config_digest,
            "tool_version": self.tool_version,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, ensure_ascii=False,
                          separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "SearchReport":
        keys = {"problem_id", "instance_id", "status", "witness", "stats", "instance",
                "violation", "seed", "config_digest", "tool_version"}
        missing = {"problem_id", "instance_id", "status"} - set(d)
        extra = set(d) - keys
        if missing or extra:
            raise SchemaError(f"bad report fields: missing {sorted(missing)}, unexpected {sorted(extra)}")
        return cls(**d)


class SchemaError(ValueError):
    pass


def deterministic_body(line: str) -> str:
    """The report with wall-time fields removed, re-serialised canonically."""
    d = json.loads(line)
    for k in WALL_FIELDS:
        d.get("stats", {}).pop(k, None)
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


def graph_instance(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def instance_graph(inst: dict) -> Graph:
    return Graph(inst["n"], tuple(tuple(e) for e in inst["edges"]))


def append_reports(path: str, reports: Iterable[SearchReport]) -> int:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    count = 0
    with open(path, "a", encoding="utf-8") as fh:
        for r in reports:
            fh.write(r.to_json() + "\n")
            count += 1
    return count


def read_reports(path: str) -> Iterator[tuple[int, SearchReport]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                d = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"line {lineno}: not JSON ({exc})") from None
            try:
                yield lineno, SearchReport.from_dict(d)
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"line {lineno}: {exc}") from None


SUMMARY_FIELDS = ["problem_id", "instance_id", "status", "violation", "nodes", "wall_time"]


def summary_csv(reports: Iterable[SearchReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_FIELDS)
    for r in reports:
        w.writerow([r.problem_id, r.instance_id, r.status, int(r.violation),
                    r.stats.get("nodes", ""), r.stats.get("wall_time", "")])
    return buf.getvalue()


def write_summary(jsonl_path: str, csv_path: str) -> None:
    reports = [r for _, r in read_reports(jsonl_path)] if os.path.exists(jsonl_path) else []
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(summary_csv(reports))


# ------------------------------------------------------------ revalidation

@dataclass
class Verdict:
    lineno: int
    ok: bool
    message: str = ""


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise AssertionError(msg)


def _revalidate_ramsey(r: SearchReport) -> None:
    from .ramsey import OrderedTwoColoring, has_mono_nonnested

    w = r.witness or {}
    if "coloring" in w:
        c = OrderedTwoColoring.from_string(w["m"], w["coloring"])
        _check(not has_mono_nonnested(c, w["n"]),
               f"coloring of K_{w['m']} has a monochromatic non-nested {w['n']}-matching")
    if "value" in w and w["value"] is not None:
        n = w["n"]
        _check(3 * n - 1 <= w["value"] <= 4 * n - 2, "value outside [3n-1, 4n-2]")


def _revalidate_alon_tarsi(r: SearchReport) -> None:
    from .alon_tarsi import at_coefficient, expectation_experiment, symbolic_coefficient

    w = r.witness or {}
    if "coefficient" in w:
        g = instance_graph(r.instance)
        exp = w.get("exponent")
        _check(w["coefficient"] == w["even_count"] - w["odd_count"], "coefficient != even - odd")
        if g.m <= 16:
            ref = symbolic_coefficient(g, exp)
        else:
            ref = at_coefficient(g, exp).coefficient
        _check(ref == w["coefficient"], f"coefficient {w['coefficient']} != recomputed {ref}")
    elif "mean" in w and w.get("mode", "").startswith("exhaustive") and w["n"] <= 6:
        orient = "traversal" if w["mode"].endswith("traversal") else "canonical"
        st = expectation_experiment(w["n"], "exhaustive", orientation=orient)
        _check(str(st.mean) == w["mean"], f"mean {w['mean']} != recomputed {st.mean}")


def _revalidate_strong_color(r: SearchReport) -> None:
    from .strong_color import UnionInstance, brute_force_colorable, check_strong_coloring, strong_colorable

    w = r.witness or {}
    if "uncolorable" in w:
        inst = UnionInstance.from_dict(w["uncolorable"])
        k = w["k"]
        if inst.n <= 10:
            _check(not brute_force_colorable(inst, k), "brute force finds a coloring")
        else:
            res = strong_colorable(inst, k)
            _check(res.status == "exhausted-none", "instance is colorable")
    if "coloring" in w:
        inst = UnionInstance.from_dict(w["instance"])
        _check(check_strong_coloring(inst, w["coloring"], w["k"]), "coloring is not proper")


def _revalidate_strong_edge(r: SearchReport) -> None:
    from .strong_edge import is_strong_edge_coloring

    g = instance_graph(r.instance)
    w = r.witness or {}
    cols = w["colors"]
    _check(len(cols) == g.m, "one color per edge expected")
    _check(is_strong_edge_coloring(g, cols), "not a strong edge coloring")
    _check(len(set(cols)) <= w["k"], "more colors than claimed")


def _revalidate_homogeneous(r: SearchReport) -> None:
    from .homogeneous import is_homogeneous

    g = instance_graph(r.instance)
    w = r.witness or {}
    _check(is_homogeneous(g, w["colors"], w["k"]), "not a k-homogeneous coloring")
    _check(len(set(w["colors"])) <= w["c"], "more colors than claimed")


def _revalidate_flow_pair(r: SearchReport) -> None:
    from .flow_pair import IntegerFlowPair, validate_pair

    g = instance_graph(r.instance)
    validate_pair(g, IntegerFlowPair.from_dict(r.witness))


def _revalidate_group_conn(r: SearchReport) -> None:
    from .group_conn import ADMISSIBLE, Boundary, FlowGroup, admissible, check_flow
    from .coloring import is_three_edge_colorable

    g = instance_graph(r.instance)
    w = r.witness or {}
    if "inadmissible" in w:
        grp = FlowGroup(w["group"])
        for s in w["inadmissible"]:
            res = admissible(g, grp, Boundary.from_string(s))
            _check(res.status != ADMISSIBLE, f"boundary {s} is admissible")
        for item in w.get("flows", []):
            b = Boundary.from_string(item["boundary"]).b
            _check(check_flow(g, grp, b, item["flow"]), f"flow for {item['boundary']} invalid")
        if w.get("verdict") is not None:
            _check(w["verdict"] == (w["inadmissible"] == ["0" * g.n]), "verdict inconsistent")
    if w.get("failing_pair"):
        u, v = w["failing_pair"]
        _check(not is_three_edge_colorable(g.delete_vertices((u, v))),
               f"deleting {u},{v} leaves a 3-edge-colorable graph")


_REVALIDATORS = {
    "ramsey": _revalidate_ramsey,
    "alon-tarsi": _revalidate_alon_tarsi,
    "strong-color": _revalidate_strong_color,
    "strong-edge": _revalidate_strong_edge,
    "homogeneous": _revalidate_homogeneous,
    "flow-pair": _revalidate_flow_pair,
    "group-conn": _revalidate_group_conn,
}


def revalidate_report(r: SearchReport) -> None:
    """Raise AssertionError (or a validator's own error) if the witness fails."""
    if r.status != "witness-found" or r.witness is None:
        return
    _REVALIDATORS[r.problem_id](r)


def revalidate(path: str) -> list[Verdict]:
    """Pass/fail for every report in a JSONL file (schema errors propagate)."""
    out = []
    for lineno, rep in read_reports(path):
        try:
            revalidate_report(rep)
            out.append(Verdict(lineno, True))
        except (AssertionError, ValueError) as exc:
            out.append(Verdict(lineno, False, f"line {lineno}: {exc}"))
    return out
