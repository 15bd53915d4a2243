"""Smoke tests for the Python bindings."""

import sys
import os

sys.path.insert(0, os.environ.get("LIMBELIEF_PY_SRC", "python"))

import limbelief


RUNNING_EXAMPLE = """
sort human
name Sally, Frank, Fred : human
fun fatherOf/1 : human
fun rich/1 : bool
var x : human
kb: fatherOf(Sally) == Frank || fatherOf(Sally) == Fred
kb: fatherOf(Sally) != x || rich(x) == T
query: K1 exists x (fatherOf(Sally) == x && rich(x) == T && M1 fatherOf(Sally) != x)
expect: true
query: K0 (rich(Frank) == T || rich(Fred) == T)
expect: false
query: K1 (rich(Frank) == T || rich(Fred) == T)
expect: true
"""


def test_running_example_script():
    session = limbelief.Session()
    out = session.run_script(RUNNING_EXAMPLE)
    assert out["ok"], out
    results = [q["result"] for q in out["results"]]
    assert results == ["true", "false", "true"]


def test_incremental_session():
    session = limbelief.Session()
    session.execute("sort s")
    session.execute("name a, b : s")
    session.execute("fun f/0 : s")
    session.execute("kb: f == a || f == b")
    assert session.query("K1 f != a || K1 f == a") is False
    session.execute("kb: f != b")
    assert session.query("K0 f == a") is True


def test_sudoku_binding():
    puzzle = (
        "483921657967345821251876493548132976729564138136798245"
        "372689514814253769695417382"
    )
    out = limbelief.solve_sudoku(puzzle, max_level=0)
    assert out["solved"]
    assert out["clues"] == 81


def test_minesweeper_binding():
    out = limbelief.minesweeper_benchmark(
        width=5, height=5, mines=3, runs=5, seed=3, max_level=1
    )
    assert out["runs"] == 5
    assert 0 <= out["wins"] <= 5
