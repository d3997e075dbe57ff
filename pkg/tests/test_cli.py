import csv
import json
import subprocess
import sys

import pytest

from sugenolab.cli import main

from .conftest import FIXTURES

GOLDEN = FIXTURES / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def golden(name):
    return (GOLDEN / name).read_text()


def test_check_violation_exit_one(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "cubic_witness.json")
    assert code == 1
    assert out == golden("check_cubic_witness.json")


def test_check_equal_exit_zero(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "cubic_witness_a1.json")
    assert code == 0
    assert out == golden("check_cubic_witness_a1.json")
    code, out, _ = run(capsys, "check", FIXTURES / "lukasiewicz_instance.json")
    assert code == 0 and json.loads(out)["verdict"] == "equal_within_tol"


def test_check_tolerance_flag(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "cubic_witness.json", "--tolerance", "0.1")
    assert code == 0 and json.loads(out)["tolerance"] == 0.1


def test_integrate_with_oracle(capsys):
    code, out, _ = run(capsys, "integrate", FIXTURES / "two_point_minimum.json", "--grid-oracle", 1000)
    assert code == 0
    assert out == golden("integrate_two_point_minimum.json")
    assert json.loads(out)["oracle_agrees"] is True


def test_malformed_input_exit_two(capsys):
    code, out, err = run(capsys, "check", FIXTURES / "malformed_capacity.json")
    assert code == 2 and out == ""
    assert "monotonicity violated: mu({p}) = 0.6 > mu({p,q}) = 0.4" in err


def test_missing_file_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "integrate", tmp_path / "nope.json")
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("name", ["minimum", "product", "lukasiewicz", "nilpotent_minimum", "ordinal_sum"])
def test_fuzz_holding_campaigns_match_golden(capsys, name):
    code, out, _ = run(capsys, "fuzz", FIXTURES / f"campaign_{name}.json")
    assert code == 0
    assert out == golden(f"fuzz_{name}.json")
    assert json.loads(out)["violations"] == 0


def test_fuzz_cubic_matches_golden(capsys):
    code, out, _ = run(capsys, "fuzz", FIXTURES / "campaign_cubic.json")
    report = json.loads(out)
    assert code == 0 and out == golden("fuzz_cubic.json")
    assert report["violations"] > 0 and report["witness_confirmed_by_oracle"] is True


def test_fuzz_cubic_expected_to_hold_exits_one(capsys, tmp_path):
    doc = json.loads((FIXTURES / "campaign_cubic.json").read_text())
    doc.update(expect="holds", trials=300)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(doc))
    code, _, _ = run(capsys, "fuzz", path)
    assert code == 1


def test_fuzz_seed_env_and_workers(capsys, tmp_path, monkeypatch):
    doc = json.loads((FIXTURES / "campaign_cubic.json").read_text())
    doc["trials"] = 600
    path = tmp_path / "c.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv("SUGENOLAB_SEED", "5")
    gaps = tmp_path / "gaps.csv"
    code, serial, _ = run(capsys, "fuzz", path, "--gaps-csv", gaps)
    assert code == 0 and json.loads(serial)["seed"] == 5
    rows = list(csv.reader(gaps.open()))
    assert rows[0] == ["trial", "gap"] and len(rows) == 601
    code, parallel, _ = run(capsys, "fuzz", path, "--workers", 3)
    assert parallel == serial
    monkeypatch.setenv("SUGENOLAB_SEED", "five")
    assert run(capsys, "fuzz", path)[0] == 2


def test_classify_golden(capsys):
    code, out, _ = run(capsys, "classify", "nilpotent_minimum")
    assert code == 0 and out == golden("classify_nilpotent_minimum.json")
    assert json.loads(out)["label"] == "S1"


@pytest.mark.parametrize("name,label", [("product", "S0"), ("cubic", "other"), ("drastic", "other")])
def test_classify_scanned(capsys, name, label):
    code, out, _ = run(capsys, "classify", name, "--a-grid", 3)
    assert code == 0 and json.loads(out)["label"] == label


def test_classify_inline_json_and_file(capsys, tmp_path):
    desc = '{"type": "ordinal_sum", "summands": [{"lo": 0, "hi": 0.5, "base": "product"}]}'
    code, out, _ = run(capsys, "classify", desc, "--a-grid", 3, "--analytic")
    assert code == 0 and json.loads(out)["label"] == "S0"
    path = tmp_path / "s.json"
    path.write_text(desc)
    code, out, _ = run(capsys, "classify", path, "--a-grid", 3, "--verbose")
    assert code == 0 and len(json.loads(out)["profiles"]) == 3


def test_classify_plot_data(capsys, tmp_path):
    code, _, _ = run(capsys, "classify", "product", "--a-grid", 1, "--plot-data", tmp_path, "--plot-points", 11)
    assert code == 0
    rows = list(csv.reader((tmp_path / "section_a0.5000.csv").open()))
    assert rows[0] == ["t", "S(a,t)"] and len(rows) == 12
    assert float(rows[-1][1]) == 0.5


def test_classify_unknown_name_exit_two(capsys):
    code, _, err = run(capsys, "classify", "hamacher")
    assert code == 2 and "minimum" in err


def test_limit_single_case(capsys):
    code, out, _ = run(capsys, "limit", "nilpotent_minimum", "--a", 0.6, "--b", 0.4,
                       "--direction", "from_above", "--method", "analytic")
    report = json.loads(out)
    assert code == 0 and report["gap"] == 0.4 and report["verdict"] == "discontinuity_witness"
    assert report["capacity_family"] == "min_capacity_on_unit_interval"


def test_limit_sweep_golden(capsys, tmp_path):
    code, out, _ = run(capsys, "limit", "nilpotent_minimum", "--sweep", "--method", "analytic")
    assert code == 0 and out == golden("limit_sweep_nilpotent_minimum.csv")
    target = tmp_path / "sweep.csv"
    run(capsys, "limit", "product", "--sweep", "--edges", "--output", target)
    assert len(target.read_text().splitlines()) == 1 + 2 * 19 * 20


def test_limit_input_errors(capsys):
    assert run(capsys, "limit", "product", "--a", 0.5)[0] == 2
    code, _, err = run(capsys, "limit", "product", "--a", 0.5, "--b", 0.5, "--direction", "from_above",
                        "--family", "max_capacity_on_unit_interval")
    assert code == 2 and "pairs with" in err


def test_limit_not_resolved_exit_three(capsys):
    code, _, err = run(capsys, "limit", "product", "--a", 0.5, "--b", 0.5, "--direction", "from_above",
                       "--terms", 2)
    assert code == 3 and "increase N" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sugenolab", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "0.1.0" in proc.stdout
