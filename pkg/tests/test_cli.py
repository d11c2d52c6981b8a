import json
import subprocess
import sys

import pytest

from dgfrob import cli
from dgfrob.errors import InternalInvariantError

EXTERIOR = {
    "kind": "graded-algebra",
    "field": "Q",
    "name": "exterior",
    "generators": [{"name": "x", "degree": 1}],
    "relations": ["x*x"],
}


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_frobenius_json(capsys):
    code, out, _ = run(["frobenius", "examples/prop71_ext.json"], capsys)
    assert code == 0
    rep = json.loads(out)
    fr = rep["result"]["frobenius"]
    assert fr["is_frobenius"] and not fr["is_graded_symmetric"] and fr["shift"] == 1
    assert rep["input"]["name"] == "prop71_ext"


def test_text_table_uses_dot(capsys):
    code, out, _ = run(["ext", "ex3", "--format", "text"], capsys)
    assert code == 0
    assert "·" in out


def test_classify_text(capsys):
    code, out, _ = run(["classify", "prop72", "--format", "text"], capsys)
    assert code == 0
    assert "Calabi-Yau: yes" in out and "Koszul: no" in out


def test_cohomology_and_out(tmp_path, capsys):
    dest = tmp_path / "h.json"
    code, out, _ = run(["cohomology", "example1", "--max-degree", "4", "--out", str(dest)], capsys)
    assert code == 0 and out == ""
    rows = json.loads(dest.read_text())["result"]["cohomology"]
    assert [r["dim"] for r in rows] == [1, 0, 1, 0, 1]


def test_input_error_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["cohomology", str(bad)], capsys)
    assert code == 1 and "ParseError" in err
    code, _, _ = run(["resolve", "prop71_ext"], capsys)
    assert code == 1


def test_window_exit_2(tmp_path, capsys):
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(EXTERIOR))
    code, _, err = run(["resolve", str(path), "--max-degree", "5"], capsys)
    assert code == 2 and "CutoffTooSmall" in err


def test_invariant_exit_3(monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise InternalInvariantError("boom")

    monkeypatch.setattr(cli, "run_command", broken)
    code, _, err = run(["cohomology", "ex3"], capsys)
    assert code == 3 and "boom" in err


def test_seed_range(capsys):
    code, _, _ = run(["frobenius", "ex3_ext", "--seed", str(2**64)], capsys)
    assert code == 1


@pytest.mark.parametrize("cmd", cli.COMMANDS)
def test_module_entry_point(cmd):
    proc = subprocess.run(
        [sys.executable, "-m", "dgfrob", cmd, "example1", "--max-degree", "4"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["command"] == cmd


def test_scripts_run():
    import pathlib

    root = pathlib.Path(__file__).resolve().parent.parent / "scripts"
    proc = subprocess.run(
        [sys.executable, str(root / "ext_tables.py"), "prop71", "--bundled"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert "graded symmetric: no" in proc.stdout
