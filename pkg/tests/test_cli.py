import json
import subprocess
import sys

import pytest

from pontryagin.cli import main
from pontryagin.presentations import glambda
from conftest import F2


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims_oracle_with_anchors(capsys):
    code, out, _ = run(capsys, "dims", "--preset", "glambda", "--field", "F2", "--max-degree", "8", "--oracle")
    assert code == 0
    data = json.loads(out)
    assert data["dimensions"] == [1, 3, 6, 11, 17, 25, 37, 54, 79]
    assert data["route"] == "oracle"
    assert set(data["anchors"]) == {"0", "1", "2"}


def test_dims_rewrite_default_degree(capsys):
    code, out, _ = run(capsys, "dims", "--field", "Q")
    assert json.loads(out)["dimensions"] == [1, 1, 0, 2, 3, 1, 1, 3, 3, 1, 1, 3, 3, 1, 1, 3, 3]
    assert "anchors" not in json.loads(out)


def test_dims_of_series_presets(capsys):
    code, out, _ = run(capsys, "dims", "--preset", "u0_model", "--max-degree", "6")
    assert json.loads(out)["dimensions"] == [1, 1, 1, 2, 3, 4, 6]
    code, out, _ = run(capsys, "dims", "--preset", "smash_s1_so3", "--max-degree", "5")
    assert json.loads(out)["dimensions"] == [0, 0, 1, 1, 1, 0]


def test_nf_table_format(capsys):
    code, out, _ = run(capsys, "nf", "--preset", "glambda", "--field", "F2", "x1*t", "--format", "table")
    assert (code, out) == (0, "w1 + t*x1\n")
    code, out, _ = run(capsys, "nf", "x1*t")
    assert json.loads(out) == {"input": "x1*t", "normal_form": "w1 + t*x1"}


def test_mul_comm_basis(capsys):
    _, out, _ = run(capsys, "mul", "x1", "w2", "--format", "table")
    assert out == "w1*x2 + w3\n"
    _, out, _ = run(capsys, "comm", "x3", "t", "--field", "Q", "--format", "table")
    assert out == "w3\n"
    _, out, _ = run(capsys, "basis", "2")
    data = json.loads(out)
    assert data["count"] == 6 and "w1" in data["basis"]


def test_pair_cup_coproduct(capsys):
    _, out, _ = run(capsys, "pair", "dual(t)", "t")
    assert json.loads(out)["value"] == "1"
    code, out, _ = run(capsys, "cup", "dual(w1)", "dual(x1*y2)", "--evaluate", "w2*y2")
    assert code == 0 and json.loads(out)["value"] == "1"
    _, out, _ = run(capsys, "coproduct", "x2", "--format", "table")
    assert out == "1 ⊗ x2 + x1 ⊗ x1 + x2 ⊗ 1\n"


def test_cup_over_rationals_needs_koszul(capsys):
    code, _, err = run(capsys, "cup", "dual(t)", "dual(x3)", "--field", "Q")
    assert code == 1 and "koszul" in err
    code, out, _ = run(capsys, "cup", "dual(t)", "dual(x3)", "--field", "Q", "--sign-policy", "koszul",
                       "--evaluate", "x3*t + t*x3")
    assert code == 0 and json.loads(out)["value"] == "0"
    code, _, err = run(capsys, "coproduct", "y3*t", "--field", "Q")
    assert code == 1 and "koszul" in err
    code, out, _ = run(capsys, "coproduct", "t", "--field", "Q", "--sign-policy", "koszul")
    assert code == 0 and json.loads(out)["coproduct"] == "1 ⊗ t + t ⊗ 1"


def test_series_verb(capsys):
    _, out, _ = run(capsys, "series", "algebra(glambda) - (1+q)^3*(1+q^2)^2/(1-q^2-q^3-q^4)")
    assert json.loads(out) == [0] * 17
    _, out, _ = run(capsys, "series", "james(q^2+q^3+q^4)", "--max-degree", "6")
    assert json.loads(out) == [1, 0, 1, 1, 2, 2, 4]


def test_presets_verb(capsys):
    _, out, _ = run(capsys, "presets")
    names = [p["name"] for p in json.loads(out)]
    assert names[:4] == ["so3", "k0", "k1", "glambda"]


@pytest.mark.parametrize("argv", [
    ["dims", "--preset", "nope"],
    ["nf", "x1*"],
    ["nf", "q1"],
    ["dims", "--field", "F4"],
    ["dims", "--oracle", "--max-degree", "12"],
    ["nf", "--preset", "u0_model", "t"],
    ["pair", "dual(x1*t)", "w1"],
    ["frobnicate"],
    ["basis"],
    ["series", "algebra(nope)"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err


def test_presentation_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(glambda(F2).to_json()))
    code, out, _ = run(capsys, "dims", "--presentation", str(path), "--max-degree", "4", "--oracle")
    assert code == 0 and json.loads(out)["dimensions"] == [1, 3, 6, 11, 17]
    code, out, _ = run(capsys, "basis", "2", "--presentation", str(path))
    assert json.loads(out)["count"] == 6
    code, _, err = run(capsys, "dims", "--presentation", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "paper", "--seed", "7")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and len(data["checks"]) >= 20
    code, out2, _ = run(capsys, "verify", "--suite", "paper", "--seed", "7")
    assert out2 == out
    code, table, _ = run(capsys, "verify", "--format", "table")
    assert table.splitlines()[0].split()[:3] == ["check", "status", "basis"]


def test_output_is_byte_stable(capsys):
    outs = {run(capsys, "basis", "4", "--format", "table")[1] for _ in range(2)}
    assert len(outs) == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pontryagin.cli", "nf", "x1*t", "--format", "table"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "w1 + t*x1\n"
