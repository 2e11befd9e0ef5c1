"""Run configuration: one schema drives both the INI parser and the CLI flags.

INI layout (flat, one section per problem, no nesting):

    [run]
    problem = group-conn
    out = runs/petersen
    seed = 0
    workers = 1

    [group-conn]
    graph = Petersen
    group = z4

Unknown sections and keys are rejected before any work starts.
"""
from __future__ import annotations

import configparser
import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Any

from .reports import PROBLEMS


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Key:
    type: str  # int, float, str, flag
    default: Any = None
    help: str = ""


SCHEMA: dict[str, dict[str, Key]] = {
    "ramsey": {
        "n": Key("int", None, "matching size n"),
        "m": Key("int", None, "number of ordered vertices (search one m)"),
        "m-cap": Key("int", None, "largest m scanned with --find-value (default 4n-2)"),
        "budget": Key("int", 0, "DFS node limit per search, 0 = none"),
        "find-value": Key("flag", False, "determine the least forcing m"),
        "split-depth": Key("int", 0, "split the search on the first pairs"),
    },
    "alon-tarsi": {
        "n": Key("int", None, "vertices of the two-cycle union"),
        "exhaustive": Key("flag", False, "all ordered cycle pairs"),
        "samples": Key("int", 0, "number of random cycle pairs"),
        "orientation": Key("str", "canonical", "canonical (a<b) or traversal"),
        "graph": Key("str", None, "graph6 file or named graph"),
    },
    "strong-color": {
        "s": Key("int", None, "clique size"),
        "k": Key("int", None, "number of colors"),
        "nmax": Key("int", None, "largest vertex count"),
        "random": Key("int", 0, "random trials instead of the exhaustive sweep"),
        "d": Key("int", 2, "2: cycles, 1: perfect matching"),
        "budget": Key("int", 0, "node limit per instance"),
        "max-instances": Key("int", 0, "stop after this many instances"),
    },
    "strong-edge": {
        "graph": Key("str", None, "graph6 file or named graph"),
        "truncate-corpus": Key("str", None, "cubic graph6 corpus to truncate"),
        "prisms": Key("int", None, "truncated prisms q = 3..qmax"),
    },
    "homogeneous": {
        "graph": Key("str", None, "graph6 file or named graph"),
        "k": Key("int", 2, "homogeneity parameter"),
        "cmax": Key("int", 6, "largest number of colors tried"),
        "scan": Key("str", None, "cubic corpus to scan"),
        "budget": Key("int", 0, "node limit per search"),
    },
    "flow-pair": {
        "graph": Key("str", None, "graph6 file or named graph"),
        "budget": Key("int", 0, "node limit"),
        "all": Key("flag", False, "try every support and count the extendable ones"),
    },
    "group-conn": {
        "graph": Key("str", None, "graph6 file or named graph"),
        "group": Key("str", "z4", "z4, z2z2 or both"),
        "resume": Key("str", None, "checkpoint directory (created or resumed)"),
        "orbits": Key("str", None, "file of boundary orbit representatives"),
        "method": Key("str", "sweep", "sweep or per-boundary"),
        "budget": Key("int", 0, "translations (sweep) or boundaries (per-boundary)"),
        "classify": Key("str", None, "corpus for criticality classes"),
        "checkpoint-seconds": Key("float", 300.0, "seconds between sweep checkpoints"),
    },
}

RUN_KEYS: dict[str, Key] = {
    "problem": Key("str", None, "problem to run"),
    "out": Key("str", "candc-out", "output directory"),
    "seed": Key("int", 0, "random seed"),
    "workers": Key("int", 1, "worker processes (CANDC_WORKERS overrides)"),
}

# keys that do not influence report bodies stay out of the digest
_NOT_DIGESTED = {"out", "workers"}


@dataclass
class RunConfig:
    problem: str
    params: dict[str, Any] = field(default_factory=dict)
    out: str = "candc-out"
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if self.problem not in SCHEMA:
            raise ConfigError(f"unknown problem {self.problem!r}; expected one of {sorted(SCHEMA)}")
        schema = SCHEMA[self.problem]
        for k in self.params:
            if k not in schema:
                raise ConfigError(f"unknown key {k!r} for problem {self.problem}")
        full = {k: spec.default for k, spec in schema.items()}
        full.update({k: v for k, v in self.params.items() if v is not None})
        self.params = full

    @property
    def digest(self) -> str:
        body = {"problem": self.problem, "params": self.params, "seed": self.seed}
        body = {k: v for k, v in body.items() if k not in _NOT_DIGESTED}
        raw = json.dumps(body, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(raw.encode()).hexdigest()[:16]

    def effective_workers(self) -> int:
        env = os.environ.get("CANDC_WORKERS")
        if env:
            try:
                w = int(env)
            except ValueError:
                raise ConfigError(f"CANDC_WORKERS={env!r} is not an integer") from None
            if w < 1:
                raise ConfigError("CANDC_WORKERS must be >= 1")
            return w
        return max(1, self.workers)


def _convert(name: str, spec: Key, raw: str) -> Any:
    raw = raw.strip()
    try:
        if spec.type == "int":
            return int(raw)
        if spec.type == "float":
            return float(raw)
        if spec.type == "flag":
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
    except ValueError:
        raise ConfigError(f"key {name!r}: cannot read {raw!r} as {spec.type}") from None
    return raw


def parse_config_text(text: str) -> list[RunConfig]:
    cp = configparser.ConfigParser(interpolation=None, strict=True)
    cp.optionxform = str  # keep key case so typos are not folded away
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    if "run" not in cp:
        raise ConfigError("missing [run] section")
    for sec in cp.sections():
        if sec != "run" and sec not in SCHEMA:
            raise ConfigError(f"unknown section [{sec}]")
    run = {}
    for k, raw in cp["run"].items():
        if k not in RUN_KEYS:
            raise ConfigError(f"unknown key {k!r} in [run]")
        run[k] = _convert(k, RUN_KEYS[k], raw)
    if not run.get("problem"):
        raise ConfigError("[run] needs a problem")
    problems = [p.strip() for p in str(run["problem"]).split(",") if p.strip()]
    sections = {}
    for sec in cp.sections():
        if sec == "run":
            continue
        vals = {}
        for k, raw in cp[sec].items():
            if k not in SCHEMA[sec]:
                raise ConfigError(f"unknown key {k!r} in [{sec}]")
            vals[k] = _convert(k, SCHEMA[sec][k], raw)
        sections[sec] = vals
    out = []
    for p in problems:
        if p not in PROBLEMS:
            raise ConfigError(f"unknown problem {p!r}")
        out.append(RunConfig(p, sections.get(p, {}), run.get("out", RUN_KEYS["out"].default),
                             run.get("seed", 0), run.get("workers", 1)))
    return out


def load_config(path: str) -> list[RunConfig]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text)
