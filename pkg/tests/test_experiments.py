import json

import jsonschema
import pytest

from dequant_lab.experiments.cli import main
from dequant_lab.experiments.config import EXPERIMENT_IDS, parse_config
from dequant_lab.experiments.report import SUMMARY_SCHEMA, RunReport, Table, emit_report, round_sig
from dequant_lab.experiments.runners import run_experiment


def write(tmp_path, data, name="c.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_round_sig():
    assert round_sig(1.23456789012345678) == 1.23456789012
    assert round_sig(0.0) == 0.0


def test_config_defaults_and_rejections():
    c = parse_config({"experiment": "kernel-eig"})
    assert c.params.n_freq == 1000 and c.seed == 0
    with pytest.raises(Exception):
        parse_config({"experiment": "kernel-eig", "params": {"M": 1}})
    with pytest.raises(Exception):
        parse_config({"experiment": "kernel-eig", "colour": "red"})
    with pytest.raises(Exception):
        parse_config({"experiment": "rff-scaling", "params": {"D_list": [64, 16]}})


def test_empty_table_writes_header(tmp_path):
    rep = RunReport("x", 0, {}, "0")
    rep.tables.append(Table("empty", ["a", "b"]))
    emit_report(rep, tmp_path)
    assert (tmp_path / "x" / "empty.csv").read_bytes() == b"a,b\n"


def test_cli_list(capsys):
    assert main(["list", "--brief"]) == 0
    assert capsys.readouterr().out.split() == list(EXPERIMENT_IDS)


def test_cli_validate(tmp_path, capsys):
    assert main(["validate", "--config", write(tmp_path, {"experiment": "dlp"})]) == 0
    bad = write(tmp_path, {"experiment": "dlp", "params": {"points": 0}}, "bad.json")
    assert main(["validate", "--config", bad]) == 1
    assert "params.points" in capsys.readouterr().err
    assert main(["validate", "--config", str(tmp_path / "missing.json")]) == 1


def test_cli_tiny_mnls_run(tmp_path):
    cfg = {"experiment": "mnls-gd", "seed": 3,
           "params": {"instances": 2, "max_p": 8, "max_M": 3, "underparam_instances": 1}}
    out = tmp_path / "out"
    assert main(["run", "--config", write(tmp_path, cfg), "--out", str(out)]) == 0
    summary = json.loads((out / "mnls-gd" / "summary.json").read_text())
    jsonschema.validate(summary, SUMMARY_SCHEMA)
    assert summary["passed"] and summary["seed"] == 3
    rows = (out / "mnls-gd" / "gd_vs_mnls.csv").read_text().splitlines()
    assert len(rows) == 3 and all(int(r.split(",")[2]) <= 8 for r in rows[1:])


def test_cli_metric_failure_exit_code(tmp_path):
    # an impossible tolerance must surface as exit code 2
    cfg = {"experiment": "mnls-gd", "params": {"instances": 1, "max_p": 8, "max_M": 3,
                                               "underparam_instances": 0, "rel_tol": 1e-30}}
    assert main(["run", "--config", write(tmp_path, cfg), "--out", str(tmp_path)]) == 2


def test_cli_runtime_error_exit_code(tmp_path):
    cfg = {"experiment": "separation", "params": {"L": 2, "M": 20}}
    assert main(["run", "--config", write(tmp_path, cfg), "--out", str(tmp_path)]) == 1


def test_seed_override_changes_output(tmp_path):
    cfg = write(tmp_path, {"experiment": "kernel-eig", "params": {"n_freq": 50, "L": 8, "trials": 5}})
    main(["run", "--config", cfg, "--out", str(tmp_path / "a"), "--seed", "1"])
    main(["run", "--config", cfg, "--out", str(tmp_path / "b"), "--seed", "2"])
    a = (tmp_path / "a" / "kernel-eig" / "trials.csv").read_bytes()
    b = (tmp_path / "b" / "kernel-eig" / "trials.csv").read_bytes()
    assert a != b


def test_advantage_demo_reports_regime():
    rep = run_experiment(parse_config({"experiment": "advantage-demo"}))
    assert rep.metrics["norm_sq_quantum"] > rep.metrics["norm_sq_mnls"]
    assert {c.name for c in rep.checks} == {"quantum-norm-exceeds-mnls", "mnls-generalization-gap"}


def test_csv_format(tmp_path):
    rep = run_experiment(parse_config({"experiment": "dlp"}))
    emit_report(rep, tmp_path)
    raw = (tmp_path / "dlp" / "instances.csv").read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    header = raw.split(b"\n")[0].decode()
    assert header.startswith("n,P,g,b_idx")
