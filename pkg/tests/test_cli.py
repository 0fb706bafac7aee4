import json

import pytest

from symbreak.cli import run

PROBLEM_2x2 = {"n": 4, "domains": [[0, 1]] * 4, "constraints": [], "shape": [2, 2]}
ROWCOL_2x2 = {"generators": [{"kind": "row_col", "rows": 2, "cols": 2}]}


@pytest.fixture
def files(tmp_path):
    problem = tmp_path / "problem.json"
    problem.write_text(json.dumps(PROBLEM_2x2))
    syms = tmp_path / "syms.json"
    syms.write_text(json.dumps(ROWCOL_2x2))
    return tmp_path, str(problem), str(syms)


def invoke(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_unrank_gray(capsys):
    code, out, _ = invoke(capsys, ["unrank", "--ordering", "gray", "--n", "4", "--k", "2"])
    assert code == 0
    assert out.strip() == "0011"


def test_rank_round_trips_unrank(capsys):
    code, out, _ = invoke(capsys, ["rank", "--ordering", "gray", "--n", "4", "0011"])
    assert code == 0 and out.strip() == "2"
    code, out, _ = invoke(capsys, ["rank", "--ordering", "snakelex", "--n", "4",
                                   "--shape", "2x2", "0110"])
    assert code == 0
    code, out2, _ = invoke(capsys, ["unrank", "--ordering", "snakelex", "--n", "4",
                                    "--shape", "2x2", "--k", out.strip()])
    assert out2.strip() == "0110"


def test_solve_lists_every_assignment(capsys, files):
    _, problem, _ = files
    code, out, _ = invoke(capsys, ["solve", "--problem", problem, "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "# seed=0 solutions=16"
    assert lines[1] == "assignment"
    assert len(lines) == 18


def test_solve_infeasible_exit_code(capsys, tmp_path):
    problem = tmp_path / "p.json"
    problem.write_text(json.dumps({
        "n": 1, "domains": [[0, 1]],
        "constraints": [{"kind": "table", "scope": [0], "tuples": []}]}))
    code, out, _ = invoke(capsys, ["solve", "--problem", str(problem)])
    assert code == 1


def test_orbits_report(capsys, files):
    _, problem, syms = files
    code, out, _ = invoke(capsys, ["orbits", "--problem", problem,
                                   "--symmetries", syms, "--format", "csv"])
    assert code == 0
    assert "# seed=0 orbits=7" in out


def test_break_leader_full(capsys, files):
    _, problem, syms = files
    code, out, _ = invoke(capsys, ["break", "--problem", problem, "--symmetries", syms,
                                   "--ordering", "lex", "--method", "leader-full",
                                   "--format", "csv"])
    assert code == 0
    head = out.splitlines()[0]
    assert "survivors=7" in head and "constraints=3" in head
    body = out.split("\n\n")[0].splitlines()
    assert body[1] == "assignment"
    assert len(body) == 9  # header comment + column header + 7 survivors


def test_check_doublelex_2x2(capsys, files):
    _, problem, syms = files
    code, out, _ = invoke(capsys, ["check", "--problem", problem, "--symmetries", syms,
                                   "--method", "doublelex", "--format", "csv"])
    assert code == 0
    assert "true,true,7,7" in out


def test_break_output_round_trips_into_check(capsys, files, tmp_path):
    _, problem, syms = files
    code, out, _ = invoke(capsys, ["break", "--problem", problem, "--symmetries", syms,
                                   "--ordering", "gray", "--method", "leader-full",
                                   "--format", "csv"])
    assert code == 0
    surv = tmp_path / "survivors.csv"
    surv.write_text(out)
    code, direct, _ = invoke(capsys, ["check", "--problem", problem, "--symmetries", syms,
                                      "--ordering", "gray", "--method", "leader-full",
                                      "--format", "csv"])
    code2, reread, _ = invoke(capsys, ["check", "--problem", problem, "--symmetries", syms,
                                       "--survivors", str(surv), "--format", "csv"])
    assert code == code2 == 0
    assert direct == reread


def test_check_incomplete_set_exits_one(capsys, tmp_path):
    # doublelex keeps two members of one orbit at 2x3
    problem = tmp_path / "p23.json"
    problem.write_text(json.dumps({"n": 6, "domains": [[0, 1]] * 6, "shape": [2, 3]}))
    syms = tmp_path / "s23.json"
    syms.write_text(json.dumps({"generators": [{"kind": "row_col", "rows": 2, "cols": 3}]}))
    code, out, _ = invoke(capsys, ["check", "--problem", str(problem),
                                   "--symmetries", str(syms),
                                   "--method", "doublelex", "--format", "csv"])
    assert "true,false" in out
    assert code == 1


def test_gray_check_full_domains(capsys):
    code, out, _ = invoke(capsys, ["gray-check", "--n", "1", "--format", "csv"])
    assert code == 0
    assert "lhs1,0" in out and "rhs1,1" in out
    assert "events=" in out


def test_gray_check_store_file_and_failure(capsys, tmp_path):
    store = tmp_path / "store.json"
    store.write_text(json.dumps({"strict": True, "lhs": [[1], [0]],
                                 "rhs": [[0, 1], [0, 1]]}))
    code, out, _ = invoke(capsys, ["gray-check", "--store", str(store)])
    assert code == 1
    assert "FAIL" in out


def test_gray_check_non_strict(capsys):
    code, out, _ = invoke(capsys, ["gray-check", "--n", "1", "--non-strict",
                                   "--format", "csv"])
    assert code == 0
    assert "lhs1,0 1" in out


def test_demo_prop1(capsys, tmp_path):
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps({"clauses": [[1, 2, 3]]}))
    code, out, _ = invoke(capsys, ["demo-prop1", "--instance", str(inst)])
    assert code == 0
    assert "verdict: SAT" in out and "oracle: SAT" in out and "agreement: true" in out
    inst.write_text(json.dumps({"clauses": [[1, 1, 1]]}))
    code, out, _ = invoke(capsys, ["demo-prop1", "--instance", str(inst)])
    assert code == 1
    assert "verdict: UNSAT" in out and "agreement: true" in out


def test_demo_prop2(capsys, tmp_path):
    inst = tmp_path / "phi.json"
    inst.write_text(json.dumps({"n": 2, "clauses": [[1, 2]]}))
    code, out, _ = invoke(capsys, ["demo-prop2", "--instance", str(inst)])
    assert code == 0
    assert "verdict: SAT" in out and "agreement: true" in out
    inst.write_text(json.dumps({"n": 1, "clauses": [[1], [-1]]}))
    code, out, _ = invoke(capsys, ["demo-prop2", "--instance", str(inst)])
    assert code == 1
    assert "verdict: UNSAT" in out and "agreement: true" in out


def test_compare_grid(capsys, files):
    _, problem, syms = files
    code, out, _ = invoke(capsys, ["compare", "--problem", problem,
                                   "--symmetries", syms, "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "ordering,method,constraints,survivors,orbits,sound,complete"
    assert "lex,leader-full,3,7,7,true,true" in lines
    assert "gray,leader-full,3,7,7,true,true" in lines
    assert any(row.startswith("lex,doublelex") for row in lines)


def test_identical_runs_are_byte_identical(capsys, files):
    _, problem, syms = files
    argv = ["compare", "--problem", problem, "--symmetries", syms, "--format", "csv"]
    _, first, _ = invoke(capsys, argv)
    _, second, _ = invoke(capsys, argv)
    assert first == second


def test_input_error_exit_code(capsys, tmp_path):
    missing = tmp_path / "nope.json"
    code, _, err = invoke(capsys, ["solve", "--problem", str(missing)])
    assert code == 2
    assert "error:" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 1, "domains": [[0, 1]], "colour": "red"}')
    code, _, err = invoke(capsys, ["solve", "--problem", str(bad)])
    assert code == 2


def test_cap_overflow_exit_code(capsys, tmp_path):
    problem = tmp_path / "p33.json"
    problem.write_text(json.dumps({"n": 9, "domains": [[0, 1]] * 9, "shape": [3, 3]}))
    syms = tmp_path / "s33.json"
    syms.write_text(json.dumps({"generators": [{"kind": "row_col", "rows": 3, "cols": 3}],
                                "cap": 5}))
    code, _, err = invoke(capsys, ["break", "--problem", str(problem),
                                   "--symmetries", str(syms),
                                   "--method", "leader-full"])
    assert code == 3
    assert "cap" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        run(["break", "--method", "sideways"])
    assert exc.value.code == 2
