import csv
import io
import json

import pytest

from rrnetcode.cli import main


def _csv_rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_curve_info_hermitian(capsys):
    assert main(["curve-info", "--family", "hermitian", "--q", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["genus"], out["n"], out["maximal"]) == (1, 9, True)
    assert out["manifest"]["field"]["modulus"] == [1, 1, 1]


def test_curve_info_p1(capsys):
    assert main(["curve-info", "--family", "p1", "--q", "5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["genus"], out["n"]) == (0, 6)


def test_curve_info_unsupported(capsys):
    assert main(["curve-info", "--family", "hermitian", "--q", "7"]) == 2
    assert "[2, 3]" in capsys.readouterr().err


def test_bad_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["code", "frobnicate"])
    assert exc.value.code == 2


def test_verify_pass(capsys):
    assert main(["code", "verify", "--family", "hermitian", "--q", "2", "--k", "1", "--s", "2"]) == 0
    rows = _csv_rows(capsys.readouterr().out)
    assert {r["status"] for r in rows} == {"pass"}


def test_verify_deviation_exit_4(capsys):
    assert main(["code", "verify", "--family", "hermitian", "--q", "2", "--k", "1", "--s", "1"]) == 4
    rows = {r["quantity"]: r for r in _csv_rows(capsys.readouterr().out)}
    assert rows["size"]["status"] == "deviation"


def test_params_suzuki(capsys):
    assert main(["code", "params", "--family", "suzuki", "--m", "1", "--k", "1", "--s", "2"]) == 0
    (row,) = _csv_rows(capsys.readouterr().out)
    assert row["marker"] == "parameters only, spaces not constructed" and row["g"] == "14" and row["n"] == "65"


def test_params_json(capsys):
    assert main(["code", "params", "--family", "hermitian", "--q", "3", "--k", "3", "--s", "3", "--format", "json"]) == 0
    p = json.loads(capsys.readouterr().out)["params"]
    assert (p["N"], p["l"], p["size"], p["D"]) == (82, 7, 3276, 6)


def test_cap_exit_3(capsys):
    assert main(["code", "build", "--family", "hermitian", "--q", "3", "--k", "1", "--s", "6"]) == 3


def test_build_then_mindist(tmp_path, capsys):
    f = tmp_path / "code.json"
    assert main(["code", "build", "--family", "p1", "--q", "3", "--k", "2", "--s", "2", "--out", str(f)]) == 0
    obj = json.loads(f.read_text())
    assert obj["schema_version"] == 1 and len(obj["codewords"]) == 6
    assert main(["code", "mindist", "--family", "p1", "--in", str(f)]) == 0
    assert json.loads(capsys.readouterr().out)["mindist"]["D"] == 4
    assert main(["code", "verify", "--family", "p1", "--in", str(f)]) == 0


def test_simulate_deterministic(tmp_path, capsys):
    f = tmp_path / "code.json"
    main(["code", "build", "--family", "p1", "--q", "3", "--k", "2", "--s", "2", "--out", str(f)])
    log = tmp_path / "trials.csv"
    args = ["simulate", "--in", str(f), "--deletions", "1", "--trials", "1000", "--seed", "42", "--log", str(log)]
    capsys.readouterr()
    outputs = []
    for _ in range(2):
        assert main(args) == 0
        outputs.append((capsys.readouterr().out.encode(), log.read_bytes()))
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0][0])["success_rate"] == 1.0


def test_simulate_no_errors(capsys):
    assert main(["simulate", "--family", "hermitian", "--q", "2", "--k", "1", "--s", "2", "--trials", "50"]) == 0
    assert json.loads(capsys.readouterr().out)["success_rate"] == 1.0


def test_simulate_too_many_deletions(capsys):
    rc = main(["simulate", "--family", "p1", "--q", "3", "--k", "2", "--s", "2", "--deletions", "6"])
    assert rc == 2
