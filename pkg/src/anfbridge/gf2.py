"""Packed GF(2) matrices and Gauss-Jordan elimination."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

WORD = 64


class BitMatrix:
    """Row-major bit matrix, 64 columns per ``uint64`` word.

    Column ``c`` lives in word ``c // 64`` at bit ``c % 64``.  Pad bits past
    ``cols`` are kept at zero.
    """

    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols
        self.words = max(1, (cols + WORD - 1) // WORD)
        self.data = np.zeros((rows, self.words), dtype=np.uint64)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]] | np.ndarray) -> "BitMatrix":
        arr = np.asarray(dense, dtype=bool)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        m = cls(arr.shape[0], arr.shape[1])
        for r, c in zip(*np.nonzero(arr)):
            m.set(int(r), int(c))
        return m

    @classmethod
    def from_row_sets(cls, rows: Iterable[Iterable[int]], cols: int) -> "BitMatrix":
        rows = [list(r) for r in rows]
        m = cls(len(rows), cols)
        for i, r in enumerate(rows):
            for c in r:
                m.set(i, c)
        return m

    def copy(self) -> "BitMatrix":
        m = BitMatrix(self.rows, self.cols)
        m.data = self.data.copy()
        return m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def __str__(self) -> str:
        return "\n".join("".join("1" if b else "." for b in row) for row in self.to_dense())

    def get(self, r: int, c: int) -> int:
        return int((int(self.data[r, c // WORD]) >> (c % WORD)) & 1)

    def set(self, r: int, c: int, bit: int = 1) -> None:
        if not 0 <= c < self.cols:
            raise IndexError(c)
        mask = np.uint64(1 << (c % WORD))
        if bit:
            self.data[r, c // WORD] |= mask
        else:
            self.data[r, c // WORD] &= ~mask

    def row_bits(self, r: int) -> list[int]:
        """Set column indices of row ``r``, ascending."""
        out = []
        for w in range(self.words):
            x = int(self.data[r, w])
            base = w * WORD
            while x:
                low = x & -x
                out.append(base + low.bit_length() - 1)
                x ^= low
        return out

    def row_is_zero(self, r: int) -> bool:
        return not self.data[r].any()

    def to_dense(self) -> np.ndarray:
        bits = np.unpackbits(self.data.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.cols].astype(bool)

    def xor_row_into(self, src: int, dst: int) -> None:
        if src == dst:
            raise ValueError("src and dst must differ")
        for i in (src, dst):
            if not 0 <= i < self.rows:
                raise IndexError(i)
        self.data[dst] ^= self.data[src]

    def swap_rows(self, a: int, b: int) -> None:
        if a != b:
            self.data[[a, b]] = self.data[[b, a]]


def xor_row_into(m: BitMatrix, src: int, dst: int) -> BitMatrix:
    m.xor_row_into(src, dst)
    return m


def gauss_jordan(m: BitMatrix, copy: bool = True) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row echelon form over GF(2).

    Pivots are taken scanning columns left to right.  Returns the reduced
    matrix (zero rows at the bottom), its rank and the pivot columns.
    """
    if copy:
        m = m.copy()
    data = m.data
    rank = 0
    pivots: list[int] = []
    for c in range(m.cols):
        if rank == m.rows:
            break
        w, bit = divmod(c, WORD)
        col = (data[rank:, w] >> np.uint64(bit)) & np.uint64(1)
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        p = rank + int(nz[0])
        if p != rank:
            data[[rank, p]] = data[[p, rank]]
        hit = ((data[:, w] >> np.uint64(bit)) & np.uint64(1)).astype(bool)
        hit[rank] = False
        if hit.any():
            data[hit] ^= data[rank]
        pivots.append(c)
        rank += 1
    return m, rank, pivots
