"""The command-line interface: outputs, determinism, exit codes."""

import contextlib
import io
import json

import pytest

from flagcohom.cli import main
from flagcohom.schema import validate


def run_cli(args):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        rc = main(args)
    return rc, out.getvalue(), err.getvalue()


def test_torsion_values():
    for typ, want in (("G2", "2"), ("A3", "1"), ("B3", "2"), ("C3", "1")):
        rc, out, err = run_cli(["torsion", "--type", typ])
        assert rc == 0
        assert out.strip() == want


def test_table_a2_chow_text():
    rc, out, _ = run_cli(["table", "--type", "A2", "--theory", "chow"])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[1:] == [
        "Z_121 = 1",
        "Z_12^2 = Z_2",
        "Z_21^2 = Z_1",
        "Z_12*Z_21 = Z_1 + Z_2",
    ]


def test_table_a2_universal_text():
    rc, out, _ = run_cli(["table", "--type", "A2", "--theory", "universal"])
    assert rc == 0
    assert "Z_121 = 1 + a2*Z_1" in out
    assert "Z_12*Z_21 = Z_1 + Z_2 + a1*pt" in out


def test_table_deterministic():
    runs = [run_cli(["table", "--type", "A2", "--theory", "universal",
                     "--format", "json"]) for _ in range(2)]
    assert runs[0] == runs[1]
    obj = json.loads(runs[0][1])
    validate(obj)


def test_table_custom_cartan(tmp_path):
    path = tmp_path / "cartan.json"
    path.write_text(json.dumps([[2, -1], [-1, 2]]))
    rc, out, _ = run_cli(["table", "--cartan", str(path), "--theory", "chow"])
    assert rc == 0
    assert "Z_12^2 = Z_2" in out


def test_table_out_file(tmp_path):
    path = tmp_path / "table.txt"
    rc, out, _ = run_cli(["table", "--type", "A2", "--theory", "chow",
                          "--out", str(path)])
    assert rc == 0
    assert out == ""
    assert "Z_121 = 1" in path.read_text()


def test_raw_basis_flag():
    rc, out, _ = run_cli(["table", "--type", "A2", "--theory", "chow",
                          "--raw-basis"])
    assert rc == 0
    assert "Z_121^2" in out
    assert " 1 + " not in out


def test_bad_input_exit_code():
    rc, _, err = run_cli(["table", "--type", "Q7"])
    assert rc == 1
    assert "error" in err
    rc, _, _ = run_cli(["table"])
    assert rc == 1
    rc, _, _ = run_cli(["table", "--type", "A2", "--trunc", "2"])
    assert rc == 1


def test_insufficient_precision_exit_code():
    rc, _, err = run_cli(["table", "--type", "B2", "--trunc", "6"])
    assert rc == 3
    assert "--trunc 9" in err


def test_bs_command():
    rc, out, _ = run_cli(["bs", "--type", "A2", "--word", "1,2,1",
                          "--theory", "chow"])
    assert rc == 0
    assert "xi1^2 = 0" in out
    assert "xi2^2 = -1*xi1*xi2" in out
    rc, out, _ = run_cli(["bs", "--type", "A2", "--word", "1,2",
                          "--theory", "universal", "--format", "json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["word"] == [1, 2]
    assert obj["relations"][0]["terms"] == []


def test_ln_command():
    rc, out, _ = run_cli(["ln", "--type", "A2", "--bound", "1",
                          "--word", "1,2"])
    assert rc == 0
    assert "S[] Z_12 = Z_12" in out
    assert "S[t1] Z_12 = Z_2" in out
    rc, _, _ = run_cli(["ln", "--type", "A2", "--theory", "chow"])
    assert rc == 1


def test_check_command_fast():
    rc, out, _ = run_cli(["check", "--type", "A2", "--fast"])
    assert rc == 0
    assert "FAIL" not in out
    assert "checks passed" in out


def test_integrality_exit_code(monkeypatch):
    from flagcohom import cli
    from flagcohom.errors import IntegralityError

    def boom(*args, **kwargs):
        raise IntegralityError("forced for the exit-code contract")

    monkeypatch.setattr(cli, "MultiplicationTable", boom)
    rc, _, err = run_cli(["table", "--type", "A2"])
    assert rc == 2
    assert "integrality" in err


def test_ln_json_format():
    rc, out, _ = run_cli(["ln", "--type", "A2", "--bound", "1",
                          "--word", "1,2", "--format", "json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["weight_bound"] == 1
    assert {"index": "t1", "argument": "Z_12", "value": "Z_2"} in obj["operations"]
