import json
import subprocess
import sys

import pytest

from asymflt.cli import dispatch, main

E11 = "[0,-1,1,-10,-20]"


def run(argv, capsys):
    code = main(["--json", "-"] + argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.mark.parametrize("argv, code", [
    (["field", "cyclotomic", "--r", "4"], 0),
    (["field", "audit", "--field", "Qsqrt2"], 0),
    (["field", "audit", "--field", "[-3,0,1]"], 1),
    (["field", "audit", "--field", "Zeta16plus"], 0),
    (["kraus", "normalize", "--field", "Q", "--triple", "[1,1,-2]"], 1),
    (["scout", "search", "--field", "Q", "--target", "24", "--height", "3", "--torsion", "full", "--expect-hits"], 0),
    (["scout", "search", "--field", "Q", "--target", "2", "--height", "5"], 0),
    (["frey", "check", "--field", "Qsqrt2", "--witness", '{"a":1,"b":0,"c":-1,"p":5}'], 0),
    (["frey", "check", "--field", "Q", "--witness", '{"a":1,"b":1,"c":-1,"p":3}'], 1),
    (["curve", "conductor", "--field", "Q", "--ainvs", E11], 0),
])
def test_exit_codes(argv, code, capsys):
    got, doc = run(argv, capsys)
    assert got == code
    assert doc["exit_code"] == code
    assert set(doc) == {"command", "inputs", "outcome", "provenance_notes", "exit_code"}


@pytest.mark.parametrize("argv", [
    ["curve", "invariants", "--field", "Q", "--ainvs", "[0,0,0,0,0]"],
    ["field", "cyclotomic", "--r", "1"],
    ["scout", "search", "--field", "Qsqrt2", "--target", "7", "--height", "1"],
    ["curve", "reduce", "--field", "Q", "--ainvs", E11, "--prime", "12"],
    ["field", "audit", "--field", "not json"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_conductor_document(capsys):
    _, doc = run(["curve", "conductor", "--field", "Q", "--ainvs", E11], capsys)
    assert doc["outcome"]["norm"] == 11
    assert doc["outcome"]["conductor"][0][1] == 1


def test_congruence_document(capsys):
    _, doc = run(["scout", "congruence", "--field", "Q", "--ainvs", E11, "--l", "5", "--q-bound", "100"], capsys)
    assert doc["outcome"]["global_n_max"] >= 1


def test_audit_reports_sources(capsys):
    _, doc = run(["field", "audit", "--field", "Zeta32plus"], capsys)
    assert "theorem3" in doc["outcome"]
    assert any("paper-fact" in n for n in doc["provenance_notes"])
    b = [i for i in doc["outcome"]["theorem2"] if i["label"].startswith("(b)")][0]
    assert b["status"] == "unknown"


def test_pipeline_stops_at_valuation_step(capsys):
    w = '{"a":[18,17],"b":[18,-17],"c":-42,"p":3}'
    # (18 + 17 sqrt2)^3 + (18 - 17 sqrt2)^3 = 42^3, a genuine cubic solution
    code, doc = run(["flt-pipeline", "--field", "Qsqrt2", "--witness", w], capsys)
    assert code == 0
    cert = doc["outcome"]["twist_certificate"]
    assert cert["verdict"] == "failed"
    assert [s["passed"] for s in cert["steps"]][-1] is False
    assert "t > 4*e2" in doc["outcome"]["conclusion"]


def test_pipeline_rejects_non_solution(capsys):
    code, doc = run(["flt-pipeline", "--field", "Qsqrt2", "--witness", '{"a":[18,17],"b":[18,-17],"c":-41,"p":3}'], capsys)
    assert code == 1 and doc["outcome"]["error"] == "NotASolution"


def test_dispatch_returns_report():
    rep = dispatch(["field", "cyclotomic", "--r", "3"])
    assert rep.outcome["degree"] == 2 and rep.exit_code == 0


def test_human_output_shows_trace(capsys):
    assert main(["kraus", "normalize", "--field", "Q", "--triple", "[1,1,-2]"]) == 1
    out = capsys.readouterr().out
    assert "v(lam) = t > 0" in out and "verdict" in out


def test_json_file_output(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["--json", str(out), "field", "cyclotomic", "--r", "5"]) == 0
    assert json.loads(out.read_text())["outcome"]["degree"] == 8


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "asymflt", "field", "cyclotomic", "--r", "3"], capture_output=True, text=True)
    assert r.returncode == 0 and "Eisenstein" in r.stdout


def test_invariants_with_height_flag(capsys):
    code, doc = run(["curve", "invariants", "--field", "Q", "--ainvs", "[0,2,0,-3,0]", "--sqrt-height", "5"], capsys)
    assert code == 0 and doc["outcome"]["two_torsion"] == "full"
    assert doc["outcome"]["disc"] == [2304]
