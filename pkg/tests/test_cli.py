"""Command line surface"""

import json

import pytest

from validation.cli import main

SCRIPT = '{"name": "scripted", "script": {"3": 2}}'


def test_reduce(capsys):
    assert main(["reduce", "t a t^-1"]) == 0
    assert capsys.readouterr().out.strip() == "a_1"


def test_reduce_trivial_word(capsys):
    assert main(["reduce", "t a t^-1 t a^-1 t^-1", "--check-trivial"]) == 0
    captured = capsys.readouterr()
    assert captured.out.strip() == "1"
    assert "trivial" in captured.err


def test_reduce_in_gd(capsys):
    assert main(["reduce", "a_1 a_0 a_1^-1 a_0^-1", "--group", "gd", "--d", "hall"]) == 0
    assert capsys.readouterr().out.strip() == "c_1"


def test_word_norm(capsys):
    assert main(["word-norm", "t"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_separate_lamplighter(capsys):
    assert main(["separate", "a_0 a_1^-1", "--group", "lamplighter"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert (record["p"], record["s"], record["k"], record["r"]) == (7, 3, 1, 3)
    assert record["order"] == 21
    assert record["verified"] is True
    assert len(record["config_hash"]) == 16


def test_separate_gint_central(capsys, tmp_path, gint_params):
    params = tmp_path / "params.json"
    params.write_text(json.dumps(gint_params.to_config()))
    assert main(["separate", "c_6", "--group", "gint", "--params", str(params)]) == 0
    captured = capsys.readouterr()
    record = json.loads(captured.out)
    assert (record["p"], record["q"], record["branch"]) == (5, 4, "case1")
    assert "case 1" in captured.err


def test_usage_error_exit_code():
    assert main(["reduce"]) == 2
    assert main(["separate", "a_0", "--group", "nowhere"]) == 2


def test_domain_error_exit_code(capsys):
    assert main(["separate", "1"]) == 1
    assert main(["reduce", "a_^"]) == 1
    assert "error" in capsys.readouterr().err


def test_period(capsys):
    assert main(["period", "--q", "4", "--d", "hall", "--bound", "50"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert main(["period", "--q", "2", "--d", "square_indicator", "--bound", "40"]) == 0
    assert capsys.readouterr().out.startswith("not found")


def test_conj_test(capsys):
    assert main(["conj-test", "--i", "1", "--p", "2", "--search-bound", "3",
                 "--prime-function", SCRIPT]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["verdict"] == "conjugate"
    assert record["hit"] == 3


def test_rf_table(capsys, tmp_path):
    db = tmp_path / "runs.db"
    assert main(["rf-table", "--group", "integers", "--max-n", "3", "--db", str(db)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [row["order"] for row in payload["rows"]] == [2, 3, 3]
    assert db.exists()


def test_rf_table_from_config(capsys, tmp_path):
    config = tmp_path / "experiment.json"
    out = tmp_path / "table.json"
    config.write_text(json.dumps({"group": "lamplighter", "max_n": 2, "witness_family": "lamplighter",
                                  "output": str(out)}))
    assert main(["rf-table", "--config", str(config), "--csv", str(tmp_path / "table.csv")]) == 0
    assert json.loads(out.read_text())["rows"][0]["order"] == 7
    assert (tmp_path / "table.csv").exists()


def test_froot(capsys):
    assert main(["froot", "30"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(47.87, abs=0.05)


def test_rf_probe(capsys):
    assert main(["rf-probe", "--n", "3"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["smallest"]["q"] == 4
