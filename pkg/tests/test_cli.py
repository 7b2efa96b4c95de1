import json
import subprocess
import sys
from pathlib import Path

import pytest

from alexcurves.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_delta0(capsys):
    assert run_json(capsys, "delta0", "cuspidal-cubic") == {"delta0": 2}
    assert run_json(capsys, "delta0", str(DATA / "ffm1.pres")) == {"delta0": "infinite"}


def test_multi_and_uni(capsys):
    assert run_json(capsys, "multi", "ffm1-x-line")["multi"] == "t1 - 1"
    assert run_json(capsys, "uni", "trefoil-x-line") == {"uni": "t - 1"}
    rec = run_json(capsys, "multi", "cuspidal-cubic", "--full")
    assert rec["delta0"] == 2 and rec["m"] == 2


def test_pencil(capsys):
    out = run_json(capsys, "pencil", str(DATA / "ffm1.poly"))
    assert out["verdict"] == "PENCIL" and out["lambda"] == ["0", "-1"]
    assert run_json(capsys, "pencil", str(DATA / "lines.poly"))["verdict"] == "PENCIL"


def test_union_prediction_and_verify(capsys):
    out = run_json(capsys, "union", "--left", "cuspidal-cubic", "--right", "parallel-lines:3")
    assert out["delta_0"]["value"] == "FINITE_NONZERO"
    out = run_json(capsys, "union", "--left", "ffm1", "--right", "line", "--verify")
    assert out["ok"] and out["computed"] == {"multi": "t1 - 1", "delta0": 1}


def test_union_flags(capsys):
    out = run_json(capsys, "union", "--left", "line", "--right", "ffm1", "--finiteness", "1=FINITE,*=INFINITE")
    assert out["levels"]["1"]["value"] == "ZERO"
    assert out["delta_n>=1"]["value"] == "FINITE_NONZERO"
    code, _, err = run(capsys, "union", "--left", "line", "--right", "ffm1", "--right-pencil", "N")
    assert code == 2 and "pencil" in err
    code, _, _ = run(capsys, "union", "--left", "ffm1", "--right", "line", "--left-irreducible", "yes")
    assert code == 2


def test_skew_script_and_replay(capsys, tmp_path):
    ledger = tmp_path / "ledger.json"
    out = run_json(capsys, "skew", "ffm1", "--level", "1", "--facts", str(DATA / "ffm1.facts"),
                   "--script", str(DATA / "ffm1.script"), "--ledger", str(ledger))
    assert out["status"] == "OK" and out["delta"] == 0
    assert run_json(capsys, "replay", str(ledger)) == {"identical": True, "status": "OK"}


def test_skew_level0_rejects(capsys):
    code, out, _ = run(capsys, "skew", "ffm1", "--level", "0", "--facts", "ffm1", "--script", "ffm1")
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "ABORTED" and "move 13" in doc["error"]


def test_skew_auto(capsys):
    out = run_json(capsys, "skew", "cuspidal-cubic", "--level", "0", "--auto")
    assert out["delta"] == 2 and out["script"]


def test_examples(capsys):
    names = [e["name"] for e in run_json(capsys, "examples", "list")]
    assert "ffm1" in names
    code, out, _ = run(capsys, "examples", "show", "cuspidal-cubic")
    assert code == 0 and out.startswith("gens a1 a2")


@pytest.mark.parametrize("argv", [
    ["delta0", "no-such-thing"],
    ["pencil", "/no/such/file.poly"],
    ["examples", "show"],
    ["skew", "ffm1", "--level", "1", "--script", "no-such-script"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("alex: error")


def test_bad_presentation_file(capsys, tmp_path):
    f = tmp_path / "bad.pres"
    f.write_text("gens a b\nweights 1 1\ncolors 1 1\nrel a b\n")
    code, _, err = run(capsys, "delta0", str(f))
    assert code == 2 and "invalid presentation" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "alexcurves.cli", "delta0", "cuspidal-cubic"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout) == {"delta0": 2}
