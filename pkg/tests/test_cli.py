import json
import math
import subprocess
import sys

import pytest

from zetalab.cli import ExperimentConfig, main, validate


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_moment_csv(capsys):
    code, out, _ = run(["moment", "--k", "1", "--sigma", "1.25", "--t-max", "1e3"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "k,sigma,T,integral,average,target,tail_bound,rel_gap"
    row = lines[1].split(",")
    assert len(lines) == 2 and row[0] == "1" and abs(float(row[4]) / 1.3414872572509172 - 1) < 0.02


def test_moment_example_1e4(capsys):
    code, out, _ = run(["moment", "--k", "1", "--sigma", "0.75", "--t-max", "1e4"], capsys)
    assert code == 0 and len(out.strip().splitlines()) == 2


def test_coeff_json(capsys):
    code, out, _ = run(["coeff", "--k", "1", "--sigma", "0.75", "--n", "2", "--t-max", "1e4"], capsys)
    rec = json.loads(out)
    assert code == 0 and abs(rec["predicted"][0] - 2 ** -0.75) < 1e-15 and rec["predicted"][1] == 0


def test_other_commands(capsys, tmp_path):
    for argv in (["zeta", "--sigma", "2", "--t-grid", "0,10"],
                 ["b2dist", "--n", "5", "--sigma", "1.1", "--t-max", "300"],
                 ["cauchy", "--sigma", "0.8", "--sigma-b", "0.9", "--t-max", "300"],
                 ["laplace", "--sigma", "1.1", "--x", "0.1"],
                 ["abel", "--sigma", "1.5", "--x", "0.5,0.1"],
                 ["conc", "--t-max", "300", "--thresholds", "1,3"],
                 ["growth", "--t-grid", "geom:10:1000:5"]):
        code, out, err = run(argv, capsys)
        assert code == 0, (argv, err)
        assert out.strip()
    code, out, _ = run(["zeta", "--sigma", "2", "--t-max", "0"], capsys)
    assert abs(float(out.splitlines()[1].split(",")[2]) - math.pi ** 2 / 6) < 1e-12


def test_out_file_and_json(tmp_path, capsys):
    out = tmp_path / "sub" / "m.json"
    code, _, _ = run(["moment", "--sigma", "1.5", "--t-max", "50", "--format", "json", "--out", str(out)], capsys)
    assert code == 0 and json.loads(out.read_text())[0]["k"] == 1


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"kind": "moment", "k": 2, "sigma": 1.5, "t_max": 30}))
    code, out, _ = run(["moment", "--config", str(cfg), "--t-max", "40"], capsys)
    row = out.splitlines()[1].split(",")
    assert code == 0 and row[0] == "2" and row[1] == "1.5" and row[2] == "40"


def test_usage_errors(capsys, tmp_path):
    assert run(["moment", "--sigma", "0.3"], capsys)[0] == 2
    assert run(["moment", "--k", "7"], capsys)[0] == 2
    assert run(["nonsense"], capsys)[0] == 2
    assert run(["moment", "--sigma", "abc"], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "moment", "colour": 1}))
    assert run(["moment", "--config", str(bad)], capsys)[0] == 2


def test_numeric_failure_exit_one(capsys):
    code, _, err = run(["zeta", "--sigma", "1", "--t-grid", "0"], capsys)
    assert code == 1 and "pole" in err


def test_accuracy_failure_reports_location(capsys):
    code, _, err = run(["moment", "--sigma", "0.6", "--t-max", "5", "--tol", "1e-300"], capsys)
    assert code == 1 and "accuracy failure at (" in err


def test_validate():
    assert any("sigma" in p for p in validate({"kind": "moment", "sigma": 0.3}))
    assert any(p.startswith("k:") for p in validate({"kind": "moment", "k": 7}))
    assert validate({}) == []
    assert validate(ExperimentConfig()) == []
    assert validate({"kind": "cauchy"}) != []
    assert validate({"kind": "moment", "workers": 0}) != []


def _report(tmp_path, name, workers):
    out = tmp_path / name
    code = subprocess.call([sys.executable, "-m", "zetalab", "report-all", "--preset", "smoke",
                            "--workers", str(workers), "--out", str(out)],
                           stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    return code, out


def test_report_all_smoke_reproducible(tmp_path):
    c1, a = _report(tmp_path, "a", 1)
    c2, b = _report(tmp_path, "b", 1)
    assert c1 == c2 and c1 in (0, 1)
    files = sorted(p.name for p in a.iterdir())
    assert "metadata.json" in files and "summary.csv" in files
    for name in files:
        if name != "metadata.json":
            assert (a / name).read_bytes() == (b / name).read_bytes(), name
    head = (a / "summary.csv").read_text().splitlines()[0]
    assert head == "criterion,check,measured,reference,tolerance,passed"
