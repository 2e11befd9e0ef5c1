import json
import os
import shutil
import subprocess
import sys

import pytest

from candc.cli import main
from candc.config import ConfigError, RunConfig, parse_config_text
from candc.reports import (SchemaError, SearchReport, deterministic_body, read_reports,
                           revalidate)


def _lines(path):
    with open(path, encoding="utf-8") as fh:
        return [ln for ln in fh.read().splitlines() if ln]


def _bodies(out):
    return [deterministic_body(ln) for ln in _lines(os.path.join(out, "results.jsonl"))]


# ------------------------------------------------------------ config

def test_config_rejects_unknown_keys_and_sections():
    with pytest.raises(ConfigError, match="colour"):
        parse_config_text("[run]\nproblem = homogeneous\n[homogeneous]\ncolour = 3\n")
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config_text("[run]\nproblem = ramsey\nthreads = 2\n")
    with pytest.raises(ConfigError, match="section"):
        parse_config_text("[run]\nproblem = ramsey\n[rammsey]\nn = 2\n")
    with pytest.raises(ConfigError, match="problem"):
        parse_config_text("[run]\nout = x\n")
    with pytest.raises(ConfigError, match="int"):
        parse_config_text("[run]\nproblem = ramsey\n[ramsey]\nn = two\n")
    # keys are case sensitive, so a case typo is a typo
    with pytest.raises(ConfigError):
        parse_config_text("[run]\nproblem = ramsey\n[ramsey]\nN = 2\n")


def test_config_multi_problem_and_defaults():
    cfgs = parse_config_text("[run]\nproblem = ramsey, flow-pair\nseed = 4\n"
                             "[ramsey]\nn = 2\nfind-value = yes\n[flow-pair]\ngraph = K4\n")
    assert [c.problem for c in cfgs] == ["ramsey", "flow-pair"]
    assert cfgs[0].params["find-value"] is True and cfgs[0].params["budget"] == 0
    assert cfgs[1].seed == 4


def test_digest_ignores_out_and_workers():
    a = RunConfig("ramsey", {"n": 2}, out="a", workers=1)
    b = RunConfig("ramsey", {"n": 2}, out="b", workers=4)
    c = RunConfig("ramsey", {"n": 2}, seed=1)
    assert a.digest == b.digest != c.digest


def test_workers_env(monkeypatch):
    cfg = RunConfig("ramsey", {"n": 2}, workers=2)
    assert cfg.effective_workers() == 2
    monkeypatch.setenv("CANDC_WORKERS", "3")
    assert cfg.effective_workers() == 3
    monkeypatch.setenv("CANDC_WORKERS", "zero")
    with pytest.raises(ConfigError):
        cfg.effective_workers()


# ------------------------------------------------------------ exit codes

def test_exit_ok_and_outputs(tmp_out, capsys):
    assert main(["ramsey", "--n", "2", "--find-value", "--out", tmp_out]) == 0
    assert "value=5" in capsys.readouterr().out
    assert os.path.exists(os.path.join(tmp_out, "results.jsonl"))
    rows = _lines(os.path.join(tmp_out, "summary.csv"))
    assert rows[0] == "problem_id,instance_id,status,violation,nodes,wall_time"
    assert len(rows) == 2


def test_exit_violation(tmp_out):
    # the s = 3, k = 3 hunt finds an uncolorable union
    assert main(["strong-color", "--s", "3", "--k", "3", "--nmax", "9", "--out", tmp_out]) == 2


def test_exit_budget(tmp_out):
    assert main(["ramsey", "--n", "3", "--m", "8", "--budget", "10", "--out", tmp_out]) == 3
    rep = next(read_reports(os.path.join(tmp_out, "results.jsonl")))[1]
    assert rep.status == "budget-exceeded"


def test_exit_usage_and_config_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as err:
        main(["ramsey", "--colour", "2"])
    assert err.value.code == 1
    bad = tmp_path / "bad.ini"
    bad.write_text("[run]\nproblem = homogeneous\n[homogeneous]\ncolour = 3\n")
    assert main(["run", "--config", str(bad)]) == 1
    assert "colour" in capsys.readouterr().err
    assert main(["flow-pair", "--graph", "no-such-graph", "--out", str(tmp_path / "o")]) == 1


def test_config_run(tmp_path):
    out = tmp_path / "o"
    ini = tmp_path / "c.ini"
    ini.write_text(f"[run]\nproblem = flow-pair, strong-edge\nout = {out}\n"
                   "[flow-pair]\ngraph = Petersen\n[strong-edge]\nprisms = 4\n")
    assert main(["config", "--config", str(ini)]) == 0
    reps = [r for _, r in read_reports(str(out / "results.jsonl"))]
    assert [r.problem_id for r in reps] == ["flow-pair", "strong-edge", "strong-edge"]
    assert os.path.exists(out / "strong_edge.csv")


# ------------------------------------------------------------ determinism

RUNS = [
    ["ramsey", "--n", "2", "--find-value"],
    ["alon-tarsi", "--n", "5", "--samples", "30", "--seed", "7"],
    ["strong-edge", "--truncate-corpus", "cubic08.g6"],
    ["homogeneous", "--scan", "bipartite_cubic12.g6"],
    ["flow-pair", "--graph", "cubic10.g6"],
    ["group-conn", "--graph", "Petersen", "--group", "both"],
]


@pytest.mark.parametrize("argv", RUNS, ids=lambda a: a[0])
def test_runs_are_deterministic(argv, tmp_path):
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    main(argv + ["--out", a])
    main(argv + ["--out", b])
    assert _bodies(a) == _bodies(b)
    assert all(v.ok for v in revalidate(os.path.join(a, "results.jsonl")))


def test_workers_do_not_change_output(tmp_path, monkeypatch):
    argv = ["flow-pair", "--graph", "cubic10.g6"]
    a, b, c = (str(tmp_path / x) for x in "abc")
    main(argv + ["--out", a])
    main(argv + ["--out", b, "--workers", "2"])
    monkeypatch.setenv("CANDC_WORKERS", "2")
    main(argv + ["--out", c])
    assert _bodies(a) == _bodies(b) == _bodies(c)


def test_wall_time_is_the_only_difference(tmp_path):
    a = str(tmp_path / "a")
    main(["flow-pair", "--graph", "K4", "--out", a])
    main(["flow-pair", "--graph", "K4", "--out", a])
    l1, l2 = _lines(os.path.join(a, "results.jsonl"))
    d1, d2 = json.loads(l1), json.loads(l2)
    d1["stats"].pop("wall_time")
    d2["stats"].pop("wall_time")
    assert d1 == d2


# ------------------------------------------------------------ revalidate

def test_revalidate_detects_tampering(tmp_path, capsys):
    out = str(tmp_path / "o")
    main(["flow-pair", "--graph", "Petersen", "--out", out])
    path = os.path.join(out, "results.jsonl")
    assert main(["revalidate", path]) == 0
    d = json.loads(_lines(path)[0])
    e = next(i for i, x in enumerate(d["witness"]["phi4"]) if abs(x) == 2)
    d["witness"]["phi4"][e] = 1
    bad = tmp_path / "bad.jsonl"
    bad.write_text(json.dumps(d) + "\n")
    capsys.readouterr()
    assert main(["revalidate", str(bad)]) == 2
    out_txt = capsys.readouterr().out
    assert f"edge {e}" in out_txt or "vertex" in out_txt
    assert "0/1 reports pass" in out_txt


def test_revalidate_each_problem_catches_a_flipped_witness(tmp_path):
    cases = [
        (["ramsey", "--n", "2", "--m", "4"], lambda w: w.update(coloring="0" * 6)),
        (["strong-edge", "--graph", "Petersen"], lambda w: w["colors"].__setitem__(0, w["colors"][1])),
        (["homogeneous", "--graph", "K33"], lambda w: w["colors"].__setitem__(0, w["colors"][3])),
        (["group-conn", "--graph", "K4"], lambda w: w["flows"][0]["flow"].__setitem__(0, 0)),
    ]
    for argv, tamper in cases:
        out = str(tmp_path / argv[0])
        main(argv + ["--out", out])
        path = os.path.join(out, "results.jsonl")
        assert all(v.ok for v in revalidate(path)), argv
        d = json.loads(_lines(path)[0])
        tamper(d["witness"])
        bad = tmp_path / f"{argv[0]}.bad.jsonl"
        bad.write_text(json.dumps(d) + "\n")
        assert not revalidate(str(bad))[0].ok, argv


def test_revalidate_empty_and_malformed(tmp_path):
    empty = tmp_path / "e.jsonl"
    empty.write_text("")
    assert main(["revalidate", str(empty)]) == 0
    junk = tmp_path / "j.jsonl"
    junk.write_text('{"problem_id": "ramsey"}\n')
    assert main(["revalidate", str(junk)]) in (1, 2)


def test_report_schema_is_strict():
    r = SearchReport("ramsey", "x", "witness-found", None, {"wall_time": 0.1}, None, False,
                     0, "d")
    d = json.loads(r.to_json())
    assert SearchReport.from_dict(d) == r
    d["extra"] = 1
    with pytest.raises(SchemaError):
        SearchReport.from_dict(d)


@pytest.mark.skipif(shutil.which("candc") is None, reason="console script not installed")
def test_console_script(tmp_path):
    out = str(tmp_path / "o")
    p = subprocess.run(["candc", "flow-pair", "--graph", "K4", "--out", out],
                       capture_output=True, text=True)
    assert p.returncode == 0, p.stderr
    p = subprocess.run([sys.executable, "-m", "candc.cli", "revalidate",
                        os.path.join(out, "results.jsonl")], capture_output=True, text=True)
    assert p.returncode == 0 and "1/1 reports pass" in p.stdout
