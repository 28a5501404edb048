"""Command-line behaviour: verdicts, exit codes, files, error paths."""

import json

import pytest

from bfoml.cli import main

ONE_WORLD = {
    "worlds": ["w0"], "domain": ["a"], "edges": [],
    "local": {"w0": ["a"]}, "rho": {"w0": {"P": [["a"]]}},
}


@pytest.fixture()
def model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(ONE_WORLD))
    return str(path)


def test_sat_increasing(capsys):
    assert main(["sat", "--semantics", "increasing", "E x [] P(x)"]) == 10
    assert capsys.readouterr().out.strip() == "SAT"


def test_sat_unsat_exit_code(capsys):
    assert main(["sat", "--semantics", "constant",
                 "(E x [] P(x) & A y <> !P(y))"]) == 20
    assert capsys.readouterr().out.strip() == "UNSAT"


def test_sat_fragment_error(capsys):
    assert main(["sat", "--semantics", "constant", "A x [] P(x)"]) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "fragment" in captured.err


def test_sat_parse_error_position(capsys):
    assert main(["sat", "(P(x) &"]) == 1
    assert "column" in capsys.readouterr().err


def test_sat_writes_model_and_trace(tmp_path, capsys):
    model_path = tmp_path / "out.json"
    trace_path = tmp_path / "trace.txt"
    code = main(["sat", "E x <> P(x)", "--model", str(model_path),
                 "--trace", str(trace_path)])
    assert code == 10
    doc = json.loads(model_path.read_text())
    assert set(doc) == {"worlds", "domain", "edges", "local", "rho"}
    assert "[br]" in trace_path.read_text()


def test_check_true_and_false(model_file, capsys):
    assert main(["check", model_file, "E x [] P(x)", "--world", "w0"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert main(["check", model_file, "E x <> P(x)", "--world", "w0"]) == 3
    assert capsys.readouterr().out.strip() == "false"


def test_check_with_assignment(model_file, capsys):
    assert main(["check", model_file, "P(x)", "--world", "w0",
                 "--assign", "x=a"]) == 0
    assert capsys.readouterr().out.strip() == "true"


def test_check_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{broken")
    assert main(["check", str(path), "T", "--world", "w0"]) == 1
    assert capsys.readouterr().out == ""


def test_check_irrelevant_assignment(model_file, capsys):
    assert main(["check", model_file, "P(x)", "--world", "w0",
                 "--assign", "x=missing"]) == 1


def test_nnf_and_clean(capsys):
    assert main(["nnf", "!E x [] P(x)"]) == 0
    assert capsys.readouterr().out.strip() == "A x <> !P(x)"
    assert main(["clean", "(P(x) & E x [] Q(x))"]) == 0
    assert capsys.readouterr().out.strip() == "(P(x) & E x^1 [] Q(x^1))"


def test_info(capsys):
    assert main(["info", "(E x [] P(x) & A y <> Q(y))"]) == 0
    out = capsys.readouterr().out
    assert "fragment=exists-box" in out
    assert "modal-depth=1" in out


def test_translate_round_trips(capsys):
    assert main(["translate", "EX x . EX y . R(x,y)"]) == 0
    text = capsys.readouterr().out.strip()
    from bfoml import parse, format_formula
    assert format_formula(parse(text)) == text


def test_translate_witness(tmp_path, capsys):
    fo_model = tmp_path / "fo.json"
    fo_model.write_text(json.dumps({"domain": ["a"], "R": [["a", "a"]]}))
    out = tmp_path / "witness.json"
    code = main(["translate", "EX x . EX y . R(x,y)",
                 "--fo-model", str(fo_model), "--witness", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert len(doc["worlds"]) == 5


def test_translate_witness_rejects_bad_model(tmp_path, capsys):
    fo_model = tmp_path / "fo.json"
    fo_model.write_text(json.dumps({"domain": ["a"], "R": []}))
    out = tmp_path / "witness.json"
    code = main(["translate", "EX x . EX y . R(x,y)",
                 "--fo-model", str(fo_model), "--witness", str(out)])
    assert code == 1
    assert "does not satisfy" in capsys.readouterr().err


def test_translate_open_formula(capsys):
    assert main(["translate", "EX x . R(x,y)"]) == 1


def test_oracle(capsys, tmp_path):
    out = tmp_path / "oracle.json"
    assert main(["oracle", "E x [] P(x)", "--max-worlds", "1",
                 "--max-domain", "1", "--model", str(out)]) == 10
    assert capsys.readouterr().out.strip() == "SAT"
    assert json.loads(out.read_text())["worlds"] == ["w0"]
    assert main(["oracle", "(P(x) & !P(x))", "--max-worlds", "2",
                 "--max-domain", "2"]) == 20
    assert capsys.readouterr().out.strip() == "NONE"


def test_oracle_budget_error(capsys):
    assert main(["oracle", "(E x [] P(x) & A y <> !P(y))",
                 "--budget", "40"]) == 1
    assert "budget" in capsys.readouterr().err


def test_fuzz_command(capsys):
    assert main(["fuzz", "--seed", "1", "--count", "15", "--fragment", "eb",
                 "--max-worlds", "2", "--max-domain", "2",
                 "--oracle-budget", "200000"]) == 0
    out = capsys.readouterr().out
    assert "eb-equivalence" in out and "PASS" in out


def test_fuzz_zero_cases(capsys):
    assert main(["fuzz", "--count", "0"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_fuzz_report_is_deterministic(capsys):
    argv = ["fuzz", "--seed", "7", "--count", "10", "--max-worlds", "2",
            "--max-domain", "2", "--oracle-budget", "150000"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_validate_command(model_file, capsys):
    assert main(["validate", model_file]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_missing_formula(capsys):
    assert main(["sat"]) == 1
    assert "provide a formula" in capsys.readouterr().err


def test_formula_from_file(tmp_path, capsys):
    path = tmp_path / "f.txt"
    path.write_text("E x [] P(x)\n")
    assert main(["sat", "--file", str(path)]) == 10


def test_budget_env_default(monkeypatch, capsys):
    # This decision needs 88 nodes; the environment only allows 40.
    monkeypatch.setenv("BFOML_BUDGET", "40")
    assert main(["sat", "E a <> E b <> E c <> A u <> A v <> A w1 <> P(u)"]) == 1
    assert "budget" in capsys.readouterr().err