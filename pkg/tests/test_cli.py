import json
import subprocess
import sys
from pathlib import Path

import pytest

from nijenhuis import __version__
from nijenhuis.cli import COMMANDS, _Job, batch, main, run
from nijenhuis.errors import ParseError

DATA = Path(__file__).resolve().parent.parent / "data"


def d(name):
    return str(DATA / name)


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_all_commands_registered():
    assert len(COMMANDS) == 15
    with pytest.raises(ParseError):
        _Job("no-such-command", [])


def test_check_leibniz_pass(capsys):
    code, doc = run_json(capsys, "check-leibniz", "-i", d("heisenberg.json"))
    assert code == 0 and doc["status"] == 0 and doc["version"] == __version__
    assert doc["reports"][0]["verdict"] == "pass"


def test_classify_weak(capsys):
    code, doc = run_json(capsys, "classify-tensor", "-i", d("axb_double.json"), "-i", d("weak_tensor.json"))
    assert code == 0
    assert doc["result"] == {"classification": "weak_nijenhuis"}


def test_courant_nijenhuis_failure_exit_one(capsys):
    code, doc = run_json(capsys, "check-theorem3", "-i", d("N0_diag_1_2.json"))
    assert code == 1
    assert doc["reports"][0]["witness"]["index"] == [3, 13]


def test_precondition_is_exit_one(capsys, tmp_path):
    n0 = tmp_path / "n0.json"
    n0.write_text(json.dumps({"n": 2, "m": [["x2", "0"], ["0", "0"]]}))
    code, doc = run_json(capsys, "check-theorem3", "-i", str(n0), "--family-degree", "1")
    assert code == 1
    assert doc["reports"][0]["name"] == "precondition"
    code, doc = run_json(capsys, "check-dirac-nijenhuis", "-i", d("axb_bialgebra.json"),
                         "-i", d("subspace_E.json"), "-i", d("identity4.json"))
    assert code == 0


def test_input_errors_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"dim\": 2,\n \"c\": [}")
    code, doc = run_json(capsys, "check-leibniz", "-i", str(bad))
    assert code == 2 and "line 2" in doc["error"]
    code, doc = run_json(capsys, "check-leibniz", "-i", str(tmp_path / "missing.json"))
    assert code == 2
    code, doc = run_json(capsys, "classify-tensor", "-i", d("heisenberg.json"), "-i", d("diag_1_2.json"))
    assert code == 2 and "DimensionError" in doc["error"]
    code, doc = run_json(capsys, "check-pn", "-i", d("lambda_dx_dy.json"))
    assert code == 2


def test_contract_round_trip(capsys, tmp_path):
    out = tmp_path / "contracted.json"
    assert main(["contract", "-i", d("ax_plus_b.json"), "-i", d("diag_1_2.json"),
                 "--format", "json", "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    contracted = tmp_path / "op.json"
    contracted.write_text(json.dumps(doc["result"]))
    code, doc2 = run_json(capsys, "check-leibniz", "-i", str(contracted))
    assert code == 0


def test_text_output(capsys):
    main(["check-lemma2", "-i", d("N0_diag_1_2.json")])
    out = capsys.readouterr().out
    assert "[FAIL] lemma2" in out and "witness:" in out and out.rstrip().endswith("status 1")


def test_json_deterministic_apart_from_wall_time():
    job = _Job("check-theorem2", [d("J.json")], 1)
    a, b = run(job), run(job)
    a.pop("wall_time"), b.pop("wall_time")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_batch_regression_manifest():
    doc = batch(d("manifest_regression.json"))
    assert doc["status"] == 0 and len(doc["jobs"]) == 14


def test_batch_statuses(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text('{"jobs": []}')
    assert batch(empty)["status"] == 0
    failing = tmp_path / "fail.json"
    failing.write_text(json.dumps({"jobs": [
        {"command": "check-leibniz", "inputs": [d("heisenberg.json")]},
        {"command": "check-lemma2", "inputs": [d("N0_diag_1_2.json")], "family_degree": 1}]}))
    assert batch(failing)["status"] == 1
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"jobs": [
        {"command": "check-lemma2", "inputs": [d("N0_diag_1_2.json")], "family_degree": 1},
        {"command": "check-leibniz", "inputs": ["nope.json"]}]}))
    doc = batch(broken)
    assert doc["status"] == 2 and [j["status"] for j in doc["jobs"]] == [1, 2]
    unknown = tmp_path / "unknown.json"
    unknown.write_text('{"jobs": [{"command": "frobnicate"}]}')
    assert batch(unknown)["status"] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nijenhuis.cli", "check-theorem2", "-i", d("J.json"),
                           "--family-degree", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "[PASS] theorem2" in proc.stdout
