from __future__ import annotations

from math import comb

import numpy as np
from hypothesis import given, settings, strategies as st

from anfbridge.anf import AnfSystem, LearntFact, Polynomial
from anfbridge.gf2 import BitMatrix
from anfbridge.xl import LinearizationMap, XlParams, extract_facts, linearize, subsample, xl, xl_expand

from conftest import poly
from oracles import anf_solutions
from test_anf import systems
from test_gf2 import EXPANDED_ROWS

D1 = XlParams(D=1)


def test_linearize_two_eq_originals(two_eq):
    m, lmap = linearize(two_eq)
    # the full expansion has 8 columns; the originals use a subset, same order
    assert [str(Polynomial([c])) for c in lmap.col_to_mono] == ["x2*x3", "x1*x2", "x3", "x1", "1"]
    assert m.to_dense().astype(int).tolist() == [[0, 1, 0, 1, 1], [1, 0, 1, 0, 0]]


def test_linearize_empty_and_zero():
    m, _ = linearize([])
    assert m.rows == 0
    m, _ = linearize([poly((1,), (1,))])
    assert m.rows == 0


def test_two_eq_expansion(two_eq):
    rows = xl_expand(two_eq, D1)
    assert len(rows) == 8
    nonzero = [p for p in rows if not p.is_zero()]
    assert len(nonzero) == 7
    m, lmap = linearize(rows)
    assert [str(Polynomial([c])) for c in lmap.col_to_mono] == [
        "x1*x2*x3", "x2*x3", "x1*x3", "x1*x2", "x3", "x2", "x1", "1"]
    assert m.to_dense().astype(int).tolist() == EXPANDED_ROWS


def test_two_eq_facts(two_eq):
    assert sorted(str(f) for f in xl(two_eq, D1)) == ["x1 + 1", "x2", "x3"]


def test_degree_zero_is_identity(two_eq):
    assert xl_expand(two_eq, XlParams(D=0)) == sorted(two_eq, key=lambda p: p.degree)


def test_count_formula():
    rng = np.random.default_rng(0)
    for n, m, D in [(3, 2, 1), (5, 4, 2), (6, 3, 3)]:
        ps = []
        while len(ps) < m:
            p = Polynomial([tuple(sorted(set(rng.integers(0, n, 2).tolist()))) for _ in range(3)] + [(0,), (n - 1,)])
            if not p.is_zero():
                ps.append(p)
        vs = set().union(*(p.variables() for p in ps))
        assert len(xl_expand(ps, XlParams(D=D))) == m * sum(comb(len(vs), j) for j in range(D + 1))


def test_five_eq_facts(five_eq):
    got = {str(f) for f in xl(five_eq, D1)}
    for want in ["x2*x3*x4 + 1", "x1*x3*x4 + 1", "x5 + x1 + 1", "x4 + x1", "x3 + 1", "x2 + x1"]:
        assert want in got


def test_zero_matrix_gives_no_facts():
    lmap = LinearizationMap.from_monomials([(0,), ()])
    assert extract_facts(BitMatrix(3, 2), lmap) == []


def test_extract_shapes():
    lmap = LinearizationMap.from_monomials([(0, 1), (0,), (1,), ()])
    m = BitMatrix.from_dense([[1, 0, 0, 1], [0, 1, 1, 0], [1, 1, 0, 0]])
    facts = extract_facts(m, lmap)
    assert [(f.kind, str(f)) for f in facts] == [
        (LearntFact.MONOMIAL_ONE, "x1*x2 + 1"), (LearntFact.LINEAR, "x2 + x1")]


def test_subsampling_respects_budget():
    rng = np.random.default_rng(3)
    ps = [Polynomial([tuple(sorted(set(rng.integers(0, 20, 2).tolist()))) for _ in range(4)]) for _ in range(60)]
    base = subsample(ps, 6, np.random.default_rng(0))
    bm, _ = linearize(base)
    assert bm.rows * bm.cols >= 2 ** 6
    assert (bm.rows - 1) * bm.cols < 2 ** 6 or bm.rows == 1
    rows = xl_expand(ps, XlParams(D=1, M=6, deltaM=1), np.random.default_rng(0))
    m, _ = linearize(rows)
    assert len(rows) > len(base)
    # expansion stops shortly after rows * cols reaches 2^(M + dM)
    assert (m.rows - 1) * m.cols < 2 * 2 ** 7


@settings(max_examples=80, deadline=None)
@given(systems(n=6, max_polys=5), st.integers(0, 2))
def test_facts_hold_on_every_solution(ps, D):
    sols = anf_solutions(6, [p.terms for p in ps])
    for f in xl(ps, XlParams(D=D)):
        assert f.kind in (LearntFact.LINEAR, LearntFact.MONOMIAL_ONE)
        assert all(f.poly.evaluate(a) == 0 for a in sols)


def test_deterministic_under_seed():
    rng = np.random.default_rng(5)
    ps = [Polynomial([tuple(sorted(set(rng.integers(0, 12, 2).tolist()))) for _ in range(3)]) for _ in range(40)]
    p = XlParams(D=1, M=7, deltaM=2, seed=9)
    a = [str(f) for f in xl(AnfSystem(12, ps), p)]
    b = [str(f) for f in xl(AnfSystem(12, ps), p)]
    assert a == b
