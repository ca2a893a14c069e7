import csv
import io
import json

import pytest

from discfrac import catalog
from discfrac.cli import load_problem, main
from discfrac.errors import ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def write(tmp_path, doc, name="p.yaml"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


Z3_DOC = {
    "lagrangian": "(1/2)*v^2 - u",
    "grid": {"a": 0, "h": 1, "b": 2},
    "alpha": 1,
    "bc": {"left": 0, "right": 0},
    "solver": {"n_starts": 30},
}


def test_reproduce_z1_row(capsys):
    code, out, _ = run(capsys, "reproduce", "--example", "z1", "--alpha", "0.5")
    assert code == 0
    (r,) = rows(out)
    assert r["y(1)"] == "0.20997375328084"
    assert r["y(2)"] == "0.356955380577428"
    assert r["J"] == "0.671916010498688"
    assert r["legendre"] == "verified"


def test_reproduce_z3_row(capsys):
    _, out, _ = run(capsys, "reproduce", "--example", "z3", "--alpha", "0.75")
    (r,) = rows(out)
    assert float(r["y(1)"]) == pytest.approx(0.64, abs=1e-14)
    assert float(r["J"]) == pytest.approx(-0.32, abs=1e-14)


def test_reproduce_hz3b(capsys, tmp_path):
    out_path = tmp_path / "hz3b.csv"
    code, _, _ = run(capsys, "reproduce", "--example", "hz3b", "--out", str(out_path))
    assert code == 0
    table = rows(out_path.read_text())
    assert len(table) == 16
    assert [r["legendre"] for r in table].count("verified") == 1
    series = sorted(tmp_path.glob("hz3b_candidate*.csv"))
    assert len(series) == 16
    assert series[0].read_text().splitlines()[0] == "t,y"


def test_reproduce_is_byte_stable(capsys):
    _, a, _ = run(capsys, "reproduce", "--example", "hz3a")
    _, b, _ = run(capsys, "reproduce", "--example", "hz3a")
    assert a == b


def test_solve_z3_alpha_one(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "--problem", write(tmp_path, Z3_DOC))
    assert code == 0
    (r,) = rows(out)
    assert float(r["y(1)"]) == pytest.approx(0.5, abs=1e-12)
    assert float(r["J"]) == pytest.approx(-0.25, abs=1e-12)


def test_solve_zero_solution_pretty(capsys, tmp_path):
    doc = """
lagrangian: v^2
grid: {a: 0, h: 0.5, n_points: 5}
alpha: 0.6
bc: {left: 0, right: 0.0e0}
solver: {n_starts: 20, newton_tol: 1e-10}
"""
    code, out, _ = run(capsys, "solve", "--problem", write(tmp_path, doc), "--format", "pretty")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3 and set(lines[1]) <= {"-", " "}
    assert "verified" in lines[2]


def test_malformed_expression_exit_2(capsys, tmp_path):
    doc = dict(Z3_DOC, lagrangian="v^^2")
    code, _, err = run(capsys, "solve", "--problem", write(tmp_path, doc))
    assert code == 2
    assert "offset 2" in err


@pytest.mark.parametrize(
    "mutate,path",
    [
        (lambda d: d.pop("alpha"), "alpha"),
        (lambda d: d["grid"].update(h="fast"), "grid.h"),
        (lambda d: d["bc"].update(left="loose"), "bc.left"),
        (lambda d: d.update(params={"k": None}), "params.k"),
        (lambda d: d["solver"].update(colour=1), "solver"),
        (lambda d: d.update(lagrangian="k*v^2"), "unbound"),
    ],
)
def test_validation_errors_name_the_field(capsys, tmp_path, mutate, path):
    doc = json.loads(json.dumps(Z3_DOC))
    mutate(doc)
    code, _, err = run(capsys, "solve", "--problem", write(tmp_path, doc))
    assert code == 2
    assert path in err


def test_solver_failure_exit_3(capsys, tmp_path):
    doc = dict(Z3_DOC, lagrangian="u")
    code, _, err = run(capsys, "solve", "--problem", write(tmp_path, doc))
    assert code == 3
    assert "solver failure" in err


def test_load_problem_free_end_and_params(tmp_path):
    doc = {
        "lagrangian": "c*v^2",
        "params": {"c": "2.5e0"},
        "grid": {"h": 1, "b": 3},
        "alpha": 0.5,
        "beta": 0.25,
        "bc": {"left": 1, "right": "free"},
        "solver": {"seed": 7},
    }
    p, cfg = load_problem(write(tmp_path, doc))
    assert p.grid.n_points == 4 and p.beta == 0.25 and cfg.seed == 7
    assert p.unknown_indices == [1, 2, 3]
    with pytest.raises(ConfigError):
        load_problem(str(tmp_path / "missing.yaml"))
