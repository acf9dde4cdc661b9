from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anfbridge.anf import AnfSystem, Polynomial
from anfbridge.convert import MonomialVarMap
from anfbridge.formats import (AnfDocument, ParseError, parse_anf, parse_anf_document, parse_dimacs, parse_map,
                               parse_solution, write_anf, write_dimacs, write_map, write_solution)

from conftest import poly
from test_anf import systems

GOLDEN = Path(__file__).resolve().parent.parent / "docs" / "golden"

# reference encodings of x1*x3 + x1 + x2 + x4 + 1 (minimized, and with x5 = x1*x3)
QUAD_XOR_KARNAUGH = {(1, 2, 4), (-1, -2, 3, 4), (2, -3, 4), (-1, 2, 3, -4), (1, -2, -4), (-2, -3, -4)}
QUAD_XOR_TSEITIN = {(1, -5), (3, -5), (-1, -3, 5),
                (1, 2, 4, 5), (-1, -2, 4, 5), (-1, 2, -4, 5), (1, -2, -4, 5),
                (-1, 2, 4, -5), (1, -2, 4, -5), (1, 2, -4, -5), (-1, -2, -4, -5)}


# ANF -----------------------------------------------------------------------

def test_parse_polynomial_line():
    (p,) = parse_anf("x1*x2 + x1 + 1\n").polynomials()
    assert p == poly((1, 2), (1,), ())


def test_parse_constant_one():
    assert parse_anf("1\n").polynomials() == [Polynomial.one()]


def test_parse_cancelling_line():
    doc = parse_anf_document("x2*x2 + x2\n")
    assert doc.polys == [Polynomial.zero()]
    assert parse_anf("x2*x2 + x2\n").polynomials() == []


def test_comments_and_vars_header():
    doc = parse_anf_document("c vars 9\nc hello\n\nx3 + 1\n")
    assert doc.num_vars == 9 and doc.comments == ["c hello"]


@pytest.mark.parametrize("text", ["x1 +", "x0", "y1", "x1 * ", "x1 ++ x2", "2", "x1*x", "c vars 99999999\n"])
def test_malformed_anf(text):
    with pytest.raises(ParseError):
        parse_anf(text)


@settings(max_examples=100)
@given(systems(n=8, max_polys=6))
def test_anf_round_trip(ps):
    doc = AnfDocument(8, [p for p in ps])
    back = parse_anf_document(doc.render())
    assert back.num_vars == 8 and back.polys == doc.polys


def test_write_anf_lists_state_first():
    s = AnfSystem(4, [poly((1,), ()), poly((2,), (3,)), poly((3, 4), (1, 4))])
    s.propagate()
    assert write_anf(s).splitlines() == ["c vars 4", "x1 + 1", "x3 + x2", "x2*x4 + x4"]


# DIMACS ----------------------------------------------------------------------

def test_parse_dimacs_examples():
    assert parse_dimacs("p cnf 2 1\n-1 2 0\n") == [(-1, 2)]
    assert parse_dimacs("p cnf 1 2\n1 0\n-1 0\n") == [(1,), (-1,)]
    assert parse_dimacs("c x\np cnf 3 1\n1 -2\n 3 0\n") == [(1, -2, 3)]


@pytest.mark.parametrize("text", ["1 0\n", "p cnf 1 1\n2 0\n", "p cnf 2 1\n1 a 0\n", "p cnf x 1\n",
                                  "p dnf 1 1\n1 0\n", "p cnf 1 1\np cnf 1 1\n", ""])
def test_malformed_dimacs(text):
    with pytest.raises(ParseError):
        parse_dimacs(text)


def test_dimacs_round_trip_1000():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.integers(1, 30))
        cls = [tuple(int(v) * int(rng.choice([-1, 1])) for v in rng.integers(1, n + 1, size=int(rng.integers(0, 6))))
               for _ in range(int(rng.integers(0, 20)))]
        assert parse_dimacs(write_dimacs(cls, n)) == cls


@settings(max_examples=300)
@given(st.text(alphabet="pcnf 0123456789-\nx*+", max_size=40))
def test_fuzzed_inputs_parse_or_raise_cleanly(text):
    for parser in (parse_dimacs, parse_anf):
        try:
            parser(text)
        except ParseError:
            pass


# map / solution ----------------------------------------------------------------

def test_map_lines():
    vm = MonomialVarMap.for_anf(4)
    vm.var_for((0, 2))
    text = write_map(vm)
    assert "5 = x1*x3\n" in text and "2 = x2\n" in text
    assert write_map(MonomialVarMap()) == ""
    back = parse_map(text)
    assert back.var_to_mono == vm.var_to_mono


def test_solution_round_trip():
    text = write_solution("SAT", [1, 1, 1, 1, 0])
    assert text == "s SATISFIABLE\nv 1 2 3 4 -5 0\n"
    assert parse_solution(text) == ("SAT", [1, 1, 1, 1, 0])
    assert parse_solution(write_solution("UNSAT")) == ("UNSAT", None)
    assert parse_solution(write_solution("FIXPOINT")) == ("UNKNOWN", None)


# golden files ------------------------------------------------------------------

def test_golden_quad_xor_matches_source_figure():
    assert set(parse_dimacs((GOLDEN / "quad_xor.karnaugh.cnf").read_text())) == QUAD_XOR_KARNAUGH
    assert set(parse_dimacs((GOLDEN / "quad_xor.tseitin.cnf").read_text())) == QUAD_XOR_TSEITIN


@pytest.mark.parametrize("stem,flags", [
    ("five_eq", []),
    ("quad_xor.karnaugh", ["--no-learn"]),
    ("quad_xor.tseitin", ["--no-learn", "--karn", "3"]),
])
def test_cli_reproduces_golden_files(tmp_path, stem, flags):
    from anfbridge.cli import main
    src = GOLDEN / (stem.split(".")[0] + ".anf")
    main(["--anf", str(src), "--out-cnf", str(tmp_path / "o.cnf"), "--out-map", str(tmp_path / "o.map"),
          "--out-anf", str(tmp_path / "o.anf"), "--out-solution", str(tmp_path / "o.sol"), *flags])
    assert (tmp_path / "o.cnf").read_text() == (GOLDEN / f"{stem}.cnf").read_text()
    assert (tmp_path / "o.map").read_text() == (GOLDEN / f"{stem}.map").read_text()
    if stem == "five_eq":
        assert (tmp_path / "o.anf").read_text() == (GOLDEN / "five_eq.processed.anf").read_text()
        assert (tmp_path / "o.sol").read_text() == (GOLDEN / "five_eq.sol").read_text()
