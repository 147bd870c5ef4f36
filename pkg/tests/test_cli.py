import json

import pytest

from hypermc.cli import main

AGREE = "forall p1. forall p2. [any*] (a@p1 <-> a@p2)\n"

UNIFORM = """
aps a
programs s
state q0 { a }
state q1 { a }
init q0
edge q0 s q1
edge q1 s q0
"""

SPLIT = """
aps a
programs s
state q0 { }
state q1 { a }
state q2 { }
init q0
edge q0 s q1
edge q0 s q2
edge q1 s q1
edge q2 s q2
"""


@pytest.fixture
def files(tmp_path):
    def save(name, content):
        path = tmp_path / name
        path.write_text(content)
        return str(path)
    return save


def test_check_true_exits_zero(files, capsys):
    code = main(["check", files("f.hpdl", AGREE),
                 files("m.kts", UNIFORM)])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0] == "true"
    assert "criticality 0" in out


def test_check_false_exits_one_with_counterexample(files, capsys):
    code = main(["check", files("f.hpdl", AGREE), files("m.kts", SPLIT)])
    out = capsys.readouterr().out
    assert code == 1
    assert out.splitlines()[0] == "false"
    assert "counterexample" in out


def test_check_json_schema(files, capsys):
    code = main(["check", "--json", files("f.hpdl", AGREE),
                 files("m.kts", SPLIT)])
    data = json.loads(capsys.readouterr().out)
    assert code == 1
    assert data["schema"] == "hypermc.check/1"
    assert data["verdict"] is False
    assert data["leaves"][0]["witness"] is not None


def test_missing_file_exits_two(files, capsys):
    code = main(["check", "/nonexistent/f.hpdl", files("m.kts", UNIFORM)])
    err = capsys.readouterr().err
    assert code == 2
    assert err.startswith("error:")


def test_parse_error_exits_two(files, capsys):
    code = main(["check", files("f.hpdl", "forall p1. <(s)>"),
                 files("m.kts", UNIFORM)])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_sat_verdicts_and_fragment_gate(files, capsys):
    assert main(["sat", files("s.hpdl", "forall p1. a@p1\n")]) == 0
    out = capsys.readouterr().out
    assert "satisfiable" in out and "fragment forall" in out

    assert main(["sat", files("u.hpdl",
                              "exists p1. a@p1 & !a@p1\n")]) == 1
    assert "unsatisfiable" in capsys.readouterr().out

    code = main(["sat", files("ae.hpdl",
                              "forall p1. exists p2. a@p1 & a@p2\n")])
    assert code == 3
    assert capsys.readouterr().err.startswith("unsupported:")


def test_sat_json_schema(files, capsys):
    code = main(["sat", "--json", files("s.hpdl", "forall p1. a@p1\n")])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["schema"] == "hypermc.sat/1"
    assert data["satisfiable"] is True
    assert data["witness"] is not None


def test_compile_omega_outputs_formula(files, capsys):
    spec = files("e.omega", """
aps a
programs s
pair:
  stem: eps
  loop: [{a}]|(s) [{}]|(s)
""")
    assert main(["compile-omega", spec]) == 0
    text = capsys.readouterr().out
    assert "delta" in text

    assert main(["compile-omega", "--json", spec]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema"] == "hypermc.omega/1"
    assert data["paths"] == 1


def test_criticality_output(files, capsys):
    path = files("f.hpdl", "exists p1. forall p2. a@p1 & a@p2\n")
    assert main(["criticality", path]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert main(["criticality", "--json", path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"schema": "hypermc.criticality/1", "criticality": 1}


def test_dot_stages(files, capsys):
    assert main(["dot", "--stage", "marked-nfa",
                 "--program", "((s) ; {a@p1}?)*"]) == 0
    assert capsys.readouterr().out.startswith("digraph")

    args = ["--formula", files("f.hpdl", "exists p1. [any*] a@p1\n"),
            "--kts", files("m.kts", UNIFORM)]
    assert main(["dot", "--stage", "aba"] + args) == 0
    assert capsys.readouterr().out.startswith("digraph")
    assert main(["dot", "--stage", "nba"] + args) == 0
    assert capsys.readouterr().out.startswith("digraph")

    assert main(["dot", "--stage", "marked-nfa"]) == 2
    assert "error:" in capsys.readouterr().err


def test_eval_lasso_both_conventions(files, capsys):
    formula = files("f.hpdl", "a@p1 & <(s)> !a@p1\n")
    lasso = files("w.lasso", "path p1: ({a} s) | ({} s)\n")
    assert main(["eval-lasso", "--trace", formula, lasso]) == 0
    assert capsys.readouterr().out.strip() == "true"

    assert main(["eval-lasso", "--trace", "--pos", "1", formula, lasso]) == 1
    assert capsys.readouterr().out.strip() == "false"

    assert main(["eval-lasso", "--trace", "--json", formula, lasso]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"schema": "hypermc.eval/1", "verdict": True}


def test_eval_lasso_state_lasso_against_system(files, capsys):
    # quantified path ranges over the system; a only appears one step in
    lasso = files("w.lasso", "path p1: (q0 s) | (q1 s)\n")
    kts = files("m.kts", SPLIT)
    code = main(["eval-lasso", files("g.hpdl", "exists p2. <(_,s)> a@p2\n"),
                 lasso, "--kts", kts])
    assert code == 0
    assert capsys.readouterr().out.strip() == "true"
    code = main(["eval-lasso", files("f.hpdl", "exists p2. a@p2\n"),
                 lasso, "--kts", kts])
    assert code == 1
    assert capsys.readouterr().out.strip() == "false"


def test_config_file_is_honored(files, capsys):
    cfg = files("opts.cfg", "trace_alphabet_cap=1\n")
    code = main(["sat", "--config", cfg,
                 files("s.hpdl", "exists p1. a@p1\n")])
    assert code == 2
    assert "cap" in capsys.readouterr().err
