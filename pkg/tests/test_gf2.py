from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anfbridge.gf2 import BitMatrix, gauss_jordan, xor_row_into

from oracles import naive_rref, row_span

# columns: x1x2x3 x2x3 x1x3 x1x2 x3 x2 x1 1
EXPANDED_ROWS = [
    [0, 0, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, 0],
]
REDUCED_ROWS = [
    [1, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1],
]


def dense(m: BitMatrix) -> list[list[int]]:
    return m.to_dense().astype(int).tolist()


def test_two_eq_rref():
    red, rank, pivots = gauss_jordan(BitMatrix.from_dense(EXPANDED_ROWS))
    assert rank == 6
    assert dense(red)[:6] == REDUCED_ROWS
    assert dense(red)[6] == [0] * 8
    assert pivots == [0, 1, 3, 4, 5, 6]


def test_identity_is_fixed():
    eye = np.eye(70, dtype=int)
    red, rank, _ = gauss_jordan(BitMatrix.from_dense(eye))
    assert rank == 70 and dense(red) == eye.tolist()


def test_xor_row_examples():
    m = BitMatrix.from_dense([[1, 0, 1], [1, 1, 0], [0, 0, 0]])
    xor_row_into(m, 0, 1)
    assert dense(m)[1] == [0, 1, 1]
    xor_row_into(m, 2, 0)
    assert dense(m)[0] == [1, 0, 1]
    with pytest.raises(ValueError):
        m.xor_row_into(1, 1)
    with pytest.raises(IndexError):
        m.xor_row_into(0, 3)


def test_random_24x24_against_naive():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = rng.integers(0, 2, size=(24, 24)).tolist()
        red, rank, _ = gauss_jordan(BitMatrix.from_dense(a))
        assert dense(red) == naive_rref(a)


def test_packed_and_unpacked_agree_on_1000_shapes():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        r, c = int(rng.integers(1, 65)), int(rng.integers(1, 97))
        a = (rng.random((r, c)) < rng.uniform(0.05, 0.6)).astype(int).tolist()
        red, rank, pivots = gauss_jordan(BitMatrix.from_dense(a))
        want = naive_rref(a)
        assert dense(red) == want
        assert rank == sum(any(row) for row in want)
        assert pivots == [row.index(1) for row in want if any(row)]


@settings(max_examples=100)
@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_row_space_preserved_and_idempotent(r, c, data):
    a = [data.draw(st.lists(st.integers(0, 1), min_size=c, max_size=c)) for _ in range(r)]
    m = BitMatrix.from_dense(a)
    red, _, _ = gauss_jordan(m)
    assert row_span(dense(red)) == row_span(a)
    again, _, _ = gauss_jordan(red)
    assert again == red
    assert dense(m) == a  # copy=True leaves the input alone


@given(st.integers(1, 200), st.data())
def test_pad_bits_stay_zero(c, data):
    cols = data.draw(st.sets(st.integers(0, c - 1)))
    m = BitMatrix.from_row_sets([cols, cols], c)
    m.xor_row_into(0, 1)
    red, _, _ = gauss_jordan(m)
    for word_row in red.data:
        tail = c % 64
        if tail:
            assert int(word_row[-1]) >> tail == 0
    assert m.row_bits(0) == sorted(cols) and m.row_is_zero(1)
