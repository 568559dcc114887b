import json
import os
import subprocess
import sys

import pytest

from padicgerm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_vol(capsys):
    out = run_json(capsys, "vol", "-n", "2", "-a", "0", "-x", "1")
    assert out["value"] == "q+3"
    assert out["params"] == {"n": 2, "alpha": 0, "x": 1, "method": "recur2"}


def test_vol_table_formats(capsys):
    _, csv_out, _ = run(capsys, "--format", "csv", "vol", "-n", "1", "-a", "0", "-x", "0:3")
    assert csv_out.splitlines() == ["x,value", "0,1", "1,2", "2,3", "3,4"]
    _, tex, _ = run(capsys, "vol", "-n", "1", "-a", "0", "-x", "0:2", "--format", "latex")
    assert tex.startswith("\\begin{tabular}{ll}") and tex.rstrip().endswith("\\end{tabular}")


def test_germ(capsys):
    out = run_json(capsys, "germ", "--vol", "-n", "1", "-a", "1")
    assert out["validity_from"] == 1
    assert {(t["a"], t["b"]) for t in out["terms"]} == {(1, 0), (0, 0)}
    _, csv_out, _ = run(capsys, "germ", "--vol", "-n", "2", "-a", "0", "--format", "csv")
    assert csv_out.splitlines()[0] == "a,b,coeff"
    assert "0,1,(-2)/(q-1)" in csv_out.splitlines()


def test_cell(capsys):
    out = run_json(capsys, "cell", "--lambda", "0,1", "--oracle", "-p", "3")
    assert out == {"lambda": [0, 1], "volume": "q+1", "volume_at_p": "4", "oracle_count": 4, "match": True}


def test_orbital(capsys, tmp_path):
    prof = {"n": 1, "N": 1, "entries": [
        {"first": ["inf"], "second": ["inf"], "value": "1"},
        {"first": ["inf"], "second": [-1], "value": "1"},
    ]}
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(prof))
    out = run_json(capsys, "orbital", "--profile", str(path), "-x", "0")
    assert out["value"] == "2"
    out = run_json(capsys, "orbital", "--profile", str(path), "-x", "6", "--germ")
    assert out["match"] and out["value"] == "8"


def test_lfactor(capsys):
    assert run_json(capsys, "lfactor", "std", "--satake", "2", "-D", "3")["coeffs"] == ["1", "2", "4", "8"]
    assert run_json(capsys, "lfactor", "extsq", "--satake", "2,3", "-D", "2")["coeffs"] == ["1", "6", "36"]
    out = run_json(capsys, "lfactor", "bf", "--satake", "2,1/2", "-q", "9", "--eta", "-1", "-D", "6")
    assert out["identity_holds"] is True
    out = run_json(capsys, "lfactor", "tate", "--torus", "2:1,1:-1", "-D", "4")
    assert out["equal"] and out["direct"] == out["closed"]


def test_transfer(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps([[1, 1], [1, 2]]))
    out = run_json(capsys, "transfer", "--gamma", str(path), "--w", "1", "--p", "2", "--signs", "q,1,q")
    assert out["omega"] == -1 and out["car_lin"] == ["-3"]
    out = run_json(capsys, "transfer", "--gamma", str(path), "--w", "1", "--p", "3")
    assert out["omega"] == 1


def test_branch(capsys):
    out = run_json(capsys, "branch", "--weight", "1,0,0,-1")
    assert out["multiplicity"] == 1 and out["self_associate"] is True
    out = run_json(capsys, "branch", "--weight=-1,-1")
    assert out["multiplicity"] == 0


def test_verify_and_seed_position(capsys):
    a = run_json(capsys, "--seed", "5", "verify", "--suites", "lfactors")
    b = run_json(capsys, "verify", "--suites", "lfactors", "--seed", "5")
    assert a == b and a["status"] == "success" and a["config"]["rng_seed"] == 5


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "verify", "--suites", "nosuch")[0] == 2
    assert run(capsys, "verify", "--x-max", "50")[0] == 2
    assert run(capsys, "cell", "--lambda", "2,1")[0] == 2
    assert run(capsys, "germ", "--vol", "-n", "9", "-a", "0")[0] == 2
    assert run(capsys, "orbital", "--profile", str(tmp_path / "missing.json"), "-x", "1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["vol", "-n", "1"])
    assert info.value.code == 2


def test_property_failure_exit_code(monkeypatch, capsys):
    import padicgerm.verify as v

    monkeypatch.setitem(v.PROPERTIES, "broken", ("volumes", lambda cfg: iter([((0,), False)])))
    code, out, _ = run(capsys, "verify", "--suites", "volumes", "--n-max", "1", "--x-max", "1")
    assert code == 1 and json.loads(out)["status"] == "failure"


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "padicgerm", "branch", "--weight", "0,0"],
        capture_output=True, text=True, env={**os.environ},
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["multiplicity"] == 1
