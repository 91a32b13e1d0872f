import io
import json
import subprocess
import sys

import pytest

from gdebruijn.cli import main
from gdebruijn.words import is_generalized_de_bruijn, parse_word

COUNTEREXAMPLE = "000000\n000001\n010000\n100010\n110101\n111011\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_then_check_round_trip(capsys, monkeypatch):
    for n, k in [(11, 2), (37, 3), (5, 7)]:
        code, out, _ = run(capsys, "gen", "--n", str(n), "--k", str(k))
        assert code == 0
        assert is_generalized_de_bruijn(parse_word(out.strip(), k))
        monkeypatch.setattr(sys, "stdin", io.StringIO(out))
        assert run(capsys, "check", "--k", str(k))[0] == 0


def test_gen_json_and_dot(capsys):
    code, out, _ = run(capsys, "gen", "--n", "11", "--format", "json")
    assert code == 0 and json.loads(out)["N"] == 11
    code, out, _ = run(capsys, "gen", "--n", "11", "--format", "dot")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 11


def test_gen_usage_errors(capsys):
    assert run(capsys, "gen", "--n", "0")[0] == 2
    assert run(capsys, "gen", "--n", "5", "--k", "1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["gen"])
    assert info.value.code == 2


def test_check_examples(capsys):
    assert run(capsys, "check", "00001011101")[0] == 0
    code, out, _ = run(capsys, "check", "0101")
    assert code == 1
    assert "FAIL" in out and "00" in out and "11" in out
    code, out, _ = run(capsys, "check", "0101", "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["generalized_de_bruijn"] is False
    assert data["missing_factors"]["2"] == ["00", "11"]


def test_check_malformed_word(capsys):
    assert run(capsys, "check", "01a1")[0] == 2
    assert run(capsys, "check", "0121", "--k", "2")[0] == 2


def test_sc_conjugates(capsys):
    code, out, _ = run(capsys, "sc", "--conjugates-of", "0011")
    assert code == 0
    assert "sc=11 bound=11 equality=true" in out
    code, out, _ = run(capsys, "sc", "--conjugates-of", "0011", "--format", "json")
    assert json.loads(out)["generalized_de_bruijn"] is True


def test_sc_counterexample_file(capsys, tmp_path):
    path = tmp_path / "counterexample.txt"
    path.write_text(COUNTEREXAMPLE)
    code, out, _ = run(capsys, "sc", "--words", str(path))
    assert code == 0
    assert "sc=22 bound=21" in out and "N = 3r" in out
    code, out, _ = run(capsys, "sc", "--words", str(path), "--format", "dot", "--no-dead")
    assert out.count("shape=circle") + out.count("shape=doublecircle") == 21


def test_sc_mixed_lengths(capsys, tmp_path):
    path = tmp_path / "mixed.txt"
    path.write_text("0101\n# comment\n011\n")
    code, _, err = run(capsys, "sc", "--words", str(path))
    assert code == 2 and "line 3" in err


def test_sc_missing_file(capsys, tmp_path):
    assert run(capsys, "sc", "--words", str(tmp_path / "absent.txt"))[0] == 2


def test_count_and_list(capsys):
    code, out, _ = run(capsys, "count", "--n", "12")
    assert code == 0 and "count=13" in out and "least=000010100111" in out
    code, out, _ = run(capsys, "count", "--n", "12", "--format", "json")
    assert json.loads(out)["count"] == 13
    code, out, _ = run(capsys, "list", "--n", "7", "--limit", "1")
    assert out.split() == ["0001011"]
    code, out, _ = run(capsys, "list", "--n", "3", "--k", "3", "--format", "csv")
    assert out.split() == ["word", "012", "021"]


def test_count_budget_exit(capsys):
    code, out, err = run(capsys, "count", "--n", "24", "--max-nodes", "200")
    assert code == 3
    assert "INCOMPLETE" in out and "budget" in err
    assert run(capsys, "maxsc", "--n", "10", "--max-nodes", "5")[0] == 3
    assert run(capsys, "list", "--n", "24", "--max-nodes", "5")[0] == 3


def test_maxsc(capsys):
    code, out, _ = run(capsys, "maxsc", "--n", "6")
    assert code == 0 and "max_sc=21" in out and "000111, 001011" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--table", "1", "--max-n", "12", "--verify"],
        ["table", "--table", "2", "--max-n", "10", "--verify"],
        ["table", "--table", "3", "--verify"],
        ["table", "--table", "4", "--max-n", "33", "--verify"],
    ],
)
def test_tables_verify(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "MISMATCH" not in out


def test_table4_formula_reports_row_64(capsys):
    code, out, _ = run(capsys, "table", "--table", "4", "--formula", "--max-n", "64", "--verify", "--format", "json")
    rows = {row["N"]: row for row in json.loads(out)}
    assert rows[32]["verify"] == "ok"
    assert rows[64]["verify"] == "MISMATCH"
    assert code == 1


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--table", "1", "--max-n", "4", "--format", "csv")
    assert out.splitlines() == ["N,least,count", "1,0,2", "2,01,1", "3,001,2", "4,0011,1"]


def test_dot(capsys, tmp_path):
    code, out, _ = run(capsys, "dot", "--graph", "2", "2")
    assert code == 0 and out.count("->") == 8
    assert run(capsys, "dot", "--graph", "13", "2")[0] == 2
    path = tmp_path / "l.txt"
    path.write_text(COUNTEREXAMPLE)
    code, out, _ = run(capsys, "dot", "--dfa-of", str(path))
    assert out.count("shape=circle") + out.count("shape=doublecircle") == 22


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gdebruijn.cli", "check", "0011"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("OK")
