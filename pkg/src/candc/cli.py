"""``candc`` command line.

Exit codes: 0 completed, 2 counterexample or violation found, 3 budget
exceeded, 1 usage or configuration error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .config import RUN_KEYS, SCHEMA, ConfigError, RunConfig, load_config
from .reports import SchemaError, revalidate
from .runner import EXIT_ERROR, EXIT_OK, EXIT_VIOLATION, exit_code, run


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as "counterexample"
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _add_schema_args(sp: argparse.ArgumentParser, problem: str) -> None:
    for key, spec in SCHEMA[problem].items():
        flag = "--" + key
        dest = key.replace("-", "_")
        if spec.type == "flag":
            sp.add_argument(flag, dest=dest, action="store_true", default=None, help=spec.help)
        else:
            conv = {"int": int, "float": float, "str": str}[spec.type]
            sp.add_argument(flag, dest=dest, type=conv, default=None, help=spec.help)
    # alon-tarsi and strong-color take their seed next to the other flags
    for key in ("out", "seed", "workers"):
        spec = RUN_KEYS[key]
        conv = int if spec.type == "int" else str
        sp.add_argument("--" + key, type=conv, default=spec.default, help=spec.help)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="candc", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for problem in SCHEMA:
        _add_schema_args(sub.add_parser(problem, help=f"run {problem}"), problem)
    rp = sub.add_parser("run", help="run from an INI config file")
    rp.add_argument("--config", required=True)
    sub.add_parser("config", help="alias of run").add_argument("--config", required=True)
    vp = sub.add_parser("revalidate", help="recheck every witness in a results.jsonl")
    vp.add_argument("report_file")
    return ap


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {}
    for key in SCHEMA[args.cmd]:
        val = getattr(args, key.replace("-", "_"))
        if val is not None:
            params[key] = val
    return RunConfig(args.cmd, params, args.out, args.seed, args.workers)


def _print_reports(reports) -> None:
    for r in reports:
        extra = ""
        w = r.witness or {}
        for key in ("value", "k", "c", "coefficient", "mean", "verdict", "class"):
            if key in w and w[key] is not None:
                extra += f" {key}={w[key]}"
        if r.violation:
            extra += " VIOLATION"
        print(f"{r.problem_id} {r.instance_id} {r.status}{extra}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.cmd == "revalidate":
            verdicts = revalidate(args.report_file)
            bad = [v for v in verdicts if not v.ok]
            for v in bad:
                print(f"FAIL {v.message}")
            print(f"{len(verdicts) - len(bad)}/{len(verdicts)} reports pass")
            return EXIT_VIOLATION if bad else EXIT_OK
        if args.cmd in ("run", "config"):
            configs = load_config(args.config)
        else:
            configs = [_config_from_args(args)]
        codes = []
        for cfg in configs:
            reports, code = run(cfg)
            _print_reports(reports)
            codes.append(code)
        if EXIT_VIOLATION in codes:
            return EXIT_VIOLATION
        return max(codes, default=EXIT_OK)
    except (ConfigError, SchemaError) as exc:
        print(f"candc: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
