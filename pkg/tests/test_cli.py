import json

import pytest

from chibound.cli import run
from chibound.constructions import mycielski_tower
from chibound.dimacs import read_dimacs, write_dimacs
from chibound.graph import complete_graph


@pytest.fixture
def t4(tmp_path):
    path = tmp_path / "t4.col"
    assert run(["gen", "tower", "--r", "4", "-o", str(path)]) == 0
    return path


def test_gen_tower(t4):
    G = read_dimacs(t4)
    assert G.order == 11 and G == mycielski_tower(4)[0]
    claims = json.loads(t4.with_suffix(".claims").read_text())
    assert claims["claimed_chi_lb"] == 4 and claims["claimed_omega"] == 2


def test_gen_mycielski_and_block(tmp_path, t4):
    out = tmp_path / "m.col"
    assert run(["gen", "mycielski", str(t4), "-o", str(out)]) == 0
    assert read_dimacs(out) == mycielski_tower(5)[0]
    block = tmp_path / "x.col"
    assert run(["gen", "block", "--r", "2", "--m", "3", "-o", str(block)]) == 0
    assert read_dimacs(block).order == 7
    assert json.loads(block.with_suffix(".claims").read_text())["m"] == 3


def test_solve_chi(t4, capsys):
    assert run(["solve", "chi", str(t4)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("chi 4\n") and out.count("color ") == 11


def test_solve_and_verify_certificate(t4, tmp_path, capsys):
    run(["solve", "omega", str(t4)])
    cert = tmp_path / "w.txt"
    cert.write_text(capsys.readouterr().out)
    assert cert.read_text().startswith("omega 2\n")
    assert run(["verify", "cert", str(t4), str(cert)]) == 0
    cert.write_text("omega 2\nmember 0\nmember 2\n")
    assert run(["verify", "cert", str(t4), str(cert)]) == 1


def test_solve_chi_n_and_k_color(t4, capsys):
    assert run(["solve", "chi-n", str(t4), "--n", "2"]) == 0
    assert capsys.readouterr().out.startswith("chi_n 2 4\n")
    assert run(["solve", "k-color", str(t4), "--k", "3"]) == 1
    assert capsys.readouterr().out == "none 3\n"
    assert run(["solve", "k-color", str(t4), "--k", "4"]) == 0


def test_solve_timeout_exit_code(tmp_path):
    path = tmp_path / "t6.col"
    write_dimacs(mycielski_tower(6)[0], path)
    assert run(["solve", "chi", str(path), "--budget", "0.05"]) == 3


def test_oracle(t4, capsys):
    assert run(["oracle", "chi", str(t4)]) == 0
    assert run(["oracle", "omega", str(t4)]) == 0
    assert capsys.readouterr().out == "chi 4\nomega 2\n"


def test_verify_nonpoly_cubic(capsys):
    assert run(["verify", "nonpoly", "--r", "2", "--poly", "0,0,0,1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["values"]["m"] == 9
    assert doc["values"]["chi"] == {"value": 9, "provenance": "CLAIM"}
    assert doc["seed"] == 0


def test_verify_pollyanna(capsys):
    assert run(["verify", "pollyanna", "--phi", "1,3,7,9"]) == 0
    assert json.loads(capsys.readouterr().out)["values"] == {"R": 3, "M": 7}
    assert run(["verify", "pollyanna", "--phi", "1,5,2"]) == 2
    assert run(["verify", "pollyanna", "--phi", "1,4,4,4", "--r", "2", "--m", "1..3"]) == 0


def test_verify_mycielski_lemma(tmp_path):
    path = tmp_path / "k3.col"
    write_dimacs(complete_graph(3), path)
    assert run(["verify", "mycielski-lemma", str(path)]) == 2
    write_dimacs(complete_graph(2), path)
    assert run(["verify", "mycielski-lemma", str(path)]) == 0


def test_verify_block_and_goodness(capsys):
    assert run(["verify", "block", "--r", "2", "--m", "4", "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert "values.chi" in out and "4 [EXACT]" in out
    assert run(["verify", "goodness", "--r", "2", "--m", "1..3", "--deterministic"]) == 0
    assert json.loads(capsys.readouterr().out)["values"]["max_observed"] == 1


def test_verify_all(capsys):
    assert run(["verify", "all", "--r", "2", "--m", "1..4", "--poly", "0,1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "pass" and len(doc["checks"]) == 7


def test_verify_all_slice_file_with_bad_provider(tmp_path, capsys):
    (tmp_path / "bad.col").write_text("p edge 2 1\ne 1 5\n")
    (tmp_path / "slice.json").write_text(json.dumps(
        {"entries": [{"r": 3, "m": [1], "providers": {"1": "bad.col"}}, {"r": 2, "m": "1..2"}]}))
    assert run(["verify", "all", "--slice", str(tmp_path / "slice.json")]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["checks"][0]["check"] == "provider"
    assert [c["status"] for c in doc["checks"][2:]] == ["pass"] * 4


def test_verify_all_empty_slice(tmp_path, capsys):
    (tmp_path / "slice.json").write_text('{"entries": []}')
    assert run(["verify", "all", "--slice", str(tmp_path / "slice.json")]) == 0


def test_deterministic_reports_are_byte_identical(capsys):
    argv = ["verify", "goodness", "--r", "2", "--m", "5", "--strategy", "random", "--limit", "50",
            "--seed", "4", "--deterministic", "--samples"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_usage_errors(tmp_path):
    assert run([]) == 2
    assert run(["solve", "chi"]) == 2
    assert run(["solve", "chi", str(tmp_path / "missing.col")]) == 2
    assert run(["gen", "tower", "--r", "1", "-o", str(tmp_path / "x.col")]) == 2
    assert run(["verify", "all"]) == 2
    assert run(["solve", "chi", "x.col", "--budget", "0"]) == 2


def test_budget_env_override(monkeypatch, tmp_path):
    path = tmp_path / "t6.col"
    write_dimacs(mycielski_tower(6)[0], path)
    monkeypatch.setenv("CHIBOUND_BUDGET", "0.05")
    assert run(["solve", "chi", str(path)]) == 3
