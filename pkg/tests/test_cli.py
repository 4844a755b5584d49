import json
import shutil
import subprocess
import sys

import pytest

from conftest import CORPUS
from planefire.cli import main


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "g.txt"
    assert main(["gen", "grid", "3", "3", "-o", str(path)]) == 0
    return path


def _kv(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines())


def test_gen_and_validate(grid_file, capsys):
    assert main(["validate", str(grid_file)]) == 0
    out = _kv(capsys.readouterr().out)
    assert (out["n"], out["m"], out["faces"]) == ("9", "12", "5")


def test_validate_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("planar 1\nn 2\nouter 0 1\nv 0 : 1\nv 1 :\n")
    assert main(["validate", str(bad)]) == 2
    bad.write_text("planar 1\nn two\n")
    assert main(["validate", str(bad)]) == 2
    assert "line 2, column 3" in capsys.readouterr().err
    assert main(["validate", str(tmp_path / "missing.txt")]) == 1


def test_usage_errors(grid_file):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["simulate", str(grid_file)])
    assert info.value.code == 1
    assert main(["simulate", str(grid_file), "--root", "99"]) == 1
    assert main(["simulate", str(grid_file), "--root", "4", "--budgets", "2"]) == 1
    assert main(["gen", "grid", "3"]) == 1
    assert main(["verify", "--spec", str(CORPUS / "grids.json"), "--checks", "nope"]) == 1


def test_separator(grid_file, capsys):
    assert main(["separator", str(grid_file), "--root", "4"]) == 0
    out = _kv(capsys.readouterr().out)
    assert out["balanced"] == "True" and int(out["max_per_level"]) <= 2


def test_simulate_and_render_state(grid_file, tmp_path, capsys):
    state = tmp_path / "s.json"
    assert main(["simulate", str(grid_file), "--root", "4", "--strategy", "degree4", "--state-out", str(state)]) == 0
    out = _kv(capsys.readouterr().out)
    assert out["holds"] == "True" and int(out["saved"]) >= 2
    data = json.loads(state.read_text())
    assert data["saved"] == int(out["saved"])
    svg = tmp_path / "g.svg"
    assert main(["render", str(grid_file), "--curve", "--root", "4", "--state", str(state), "-o", str(svg)]) == 0
    text = svg.read_text()
    assert text.count('class="burned"') == len(data["burned"])
    first = text
    assert main(["render", str(grid_file), "--curve", "--root", "4", "--state", str(state), "-o", str(svg)]) == 0
    assert svg.read_text() == first


def test_simulate_strategies(grid_file, capsys):
    for strategy, budgets in [("lemma22", "3,2*"), ("null", "1*"), ("dispatch", "3,2*")]:
        assert main(["simulate", str(grid_file), "--root", "0", "--strategy", strategy, "--budgets", budgets]) == 0
        assert _kv(capsys.readouterr().out)["schedule"] == budgets
    assert main(["simulate", str(grid_file), "--root", "0", "--strategy", "degree4"]) == 1


def test_sn_exact_and_cap(grid_file, capsys):
    assert main(["sn-exact", str(grid_file), "--root", "4", "--budgets", "2*"]) == 0
    assert _kv(capsys.readouterr().out)["sn"] == "5"
    assert main(["sn-exact", str(grid_file), "--root", "4", "--max-nodes", "2"]) == 4
    assert main(["sn-exact", str(grid_file), "--root", "4", "--max-n", "5"]) == 4


def test_rate(grid_file, capsys):
    assert main(["rate", str(grid_file)]) == 0
    out = _kv(capsys.readouterr().out)
    assert out["bound_thm12"].startswith("8/27")
    assert main(["rate", str(grid_file), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["eps"] == "11/6" and data["bound_ineq1"] == "1/2"


def test_lp(capsys):
    assert main(["lp", "--eps", "3/2", "--n", "100"]) == 0
    out = _kv(capsys.readouterr().out)
    assert out["alpha"].startswith("97/300") and out["matches_closed"] == "True"
    assert main(["lp", "--eps", "4", "--n", "100"]) == 3
    assert main(["lp", "--eps", "x", "--n", "100"]) == 1
    assert main(["lp", "--eps", "0", "--n", "100"]) == 1


def test_verify_pass_and_fail(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"entries": [{"family": "grid", "params": [[3, 4], 3]}]}))
    out = tmp_path / "out"
    assert main(["verify", "--spec", str(spec), "--checks", "lemma22,obs31,lemma32", "--out", str(out)]) == 0
    assert "failed: 0" in capsys.readouterr().out
    bad = tmp_path / "bad"
    assert main(["verify", "--spec", str(spec), "--checks", "lemma22", "--out", str(bad), "--corrupt-guarantee"]) == 3
    repro = sorted((bad / "repro").iterdir())
    assert len(repro) == 2
    # the reproducer is itself a valid graph file
    assert main(["validate", str(repro[0])]) == 0


def test_verify_jobs_match_serial(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"entries": [{"family": "cycle", "params": [[3, 8]]}, {"family": "grid", "params": [3, 3]}]}))
    assert main(["verify", "--spec", str(spec), "--out", str(tmp_path / "a")]) == 0
    assert main(["verify", "--spec", str(spec), "--out", str(tmp_path / "b"), "--jobs", "2"]) == 0
    assert (tmp_path / "a" / "report.txt").read_bytes() == (tmp_path / "b" / "report.txt").read_bytes()


def test_console_script():
    exe = shutil.which("fb")
    cmd = [exe] if exe else [sys.executable, "-m", "planefire.cli"]
    proc = subprocess.run(cmd + ["lp", "--eps", "1", "--n", "9"], capture_output=True, text=True)
    assert proc.returncode == 0
    # at n = 9 the closed form is not the true minimum
    assert "alpha_closed: 2/9" in proc.stdout and "alpha: 5/36" in proc.stdout
