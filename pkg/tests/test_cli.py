import json
import subprocess
import sys

import pytest

from ordersum import cli
from ordersum.conjectures import CheckOutcome, Verdict


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("spec, value", [
    (["A4"], 31), (["C", "12"], 77), (["C12"], 77), (["product", "C2", "D4"], 39),
    (["SmallGroup(32,7)"], 167), (["(C5xC5):C3"], 271), (["catalog", "12", "5"], 31), (["S", "4"], 67),
    (["A 4"], 31),
])
def test_psi_specs(capsys, spec, value):
    code, out, _ = run(capsys, "psi", *spec)
    assert code == 0
    assert f"= {value}" in out.splitlines()[0]


def test_psi_json(capsys):
    code, out, _ = run(capsys, "psi", "D", "4", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["order"] == 8 and rec["psi"] == 19 and rec["order_histogram"] == {"1": 1, "2": 5, "4": 2}


@pytest.mark.parametrize("argv", [
    ["psi", "Q99"], ["psi", "C"], ["psi", "product", "C2"], ["psi", "C2", "C3"], ["psi", "D", "1"],
    ["check", "t", "--orders", "5..2"], ["check", "t", "--orders", "x"], ["psi", "A4", "--jobs", "0"],
    ["check", "t", "--json", "--tsv", "--orders", "4"], ["psi", "catalog", "7", "9"], ["nope"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_parse_orders():
    assert cli.parse_orders("1..4,7, 9..9") == [1, 2, 3, 4, 7, 9]


def test_sweep_json_is_deterministic(capsys):
    argv = ["check", "t", "--orders", "1..24", "--json"]
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    assert code == 0
    assert first == second == parallel
    rec = json.loads(first)
    assert rec["summary"]["equal"] == ["12/5 A4"]


def test_tsv_and_text_output(capsys):
    code, out, _ = run(capsys, "check", "odd", "--orders", "75", "--tsv")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0].split("\t")[0] == "check" and len(rows) == 4
    code, out, _ = run(capsys, "check", "solvable", "A", "5")
    assert code == 0 and "Equal" in out


def test_hlm_single_group_reports_but_exits_zero(capsys):
    code, out, _ = run(capsys, "check", "hlm", "SmallGroup(32,7)", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["summary"]["verdicts"]["VIOLATION"] >= 1
    assert any(r["witness"]["bound"] == 156 for r in rec["outcomes"])


def test_violation_exit_code(capsys, monkeypatch):
    def fake(g, group_id=None):
        return CheckOutcome("t", group_id or "x", g.order, 0, 0, None, None, {}, Verdict.VIOLATION)
    monkeypatch.setitem(cli.CHECKS, "t", fake)
    code, _, _ = run(capsys, "check", "t", "A4")
    assert code == 1


def test_catalog_commands(capsys):
    code, out, _ = run(capsys, "catalog", "stats")
    assert code == 0 and "1048 groups" in out
    code, out, _ = run(capsys, "catalog", "validate", "--orders", "1..20")
    assert code == 0 and "catalog OK" in out


def test_corrupted_catalog_is_a_data_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("6:1:S3:3:(1 2 3);(1 2):13\n6:2:oops:3:(1 2 3 4):\n")
    code, _, err = run(capsys, "catalog", "stats", "--catalog", str(bad))
    assert code == 3
    assert "bad.txt:2" in err
    wrong = tmp_path / "wrong.txt"
    wrong.write_text("6:1:S3:3:(1 2 3);(1 2):12\n")
    code, _, _ = run(capsys, "catalog", "validate", "--catalog", str(wrong), "--orders", "6")
    assert code == 3
    code, _, _ = run(capsys, "psi", "A4", "--catalog", str(tmp_path / "missing.txt"))
    assert code == 0  # the catalog is only read when a spec needs it
    code, _, _ = run(capsys, "psi", "catalog", "6", "1", "--catalog", str(tmp_path / "missing.txt"))
    assert code == 3


def test_lemmas_command(capsys):
    code, out, _ = run(capsys, "lemmas", "--orders", "1..12", "--cyclic-limit", "500", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["ok"]


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "ordersum.cli", "psi", "C", "75"],
                         capture_output=True, text=True, check=True).stdout
    assert "psi(C75) = 3647" in out
