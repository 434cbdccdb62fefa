import json

import pytest

from irrmaps.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_nhat_mlambda(capsys):
    code, out, _ = run(capsys, "nhat", "--genus", "1", "--faces", "1")
    assert code == 0
    assert out.strip() == "1/12 m_(1) - 1/12"


def test_nhat_json(capsys):
    code, out, _ = run(capsys, "nhat", "--genus", "0", "--faces", "3",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["monomials"] == [{"exps": [0, 0, 0, 0], "num": "1", "den": "1"}]


def test_count_both_matches(capsys):
    code, out, _ = run(capsys, "count", "--genus", "2", "--b", "1",
                       "--degrees", "4", "--method", "both")
    assert code == 0
    assert "formula: 21/8" in out and "brute: 21/8" in out and "match" in out


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--genus", "0", "--b", "1",
                       "--degrees", "2,2,2,2", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "genus,n,b,degrees,value_num,value_den,method"
    assert lines[1] == "0,4,1,2 2 2 2,9,1,formula"


def test_verify_table1_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "table1")
    assert code == 0
    assert "suite table1: PASS" in out


def test_verify_string_single_pair(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "string",
                       "--genus", "0", "--faces", "3")
    assert code == 0


def test_series_command(capsys):
    code, out, _ = run(capsys, "series", "--name", "Jinv", "--order", "2")
    assert code == 0
    assert "[z^1] 1" in out
    code, out, _ = run(capsys, "series", "--name", "I", "--order", "1",
                       "--b", "0", "--ell", "1")
    assert code == 0
    assert "[r^1] 1" in out


def test_domain_error_exits_two(capsys):
    code, _, err = run(capsys, "count", "--genus", "0", "--b", "0",
                       "--degrees", "2,2")
    assert code == 2
    assert "error:" in err


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["nhat", "--genus", "1"])  # missing --faces
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--max-2e", "6", "--method", "both")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "genus,n,b,degrees,value_num,value_den,method"
    assert len(lines) > 10
    assert any(line.startswith("1,1,1,2,1,4,") for line in lines)
