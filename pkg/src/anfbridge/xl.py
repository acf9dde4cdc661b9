"""Linearization, eXtended Linearization (XL) and fact harvesting from RREF rows."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .anf import AnfSystem, LearntFact, Monomial, Polynomial, mono_key
from .gf2 import BitMatrix, gauss_jordan


@dataclass(frozen=True)
class XlParams:
    """Expansion degree and size budget.

    ``M`` bounds the subsampled linearized size (rows * columns ~ 2**M),
    ``deltaM`` the extra allowance for expansion (~ 2**(M + deltaM)).
    """

    D: int = 1
    M: int = 30
    deltaM: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.D < 0 or self.M < 0 or self.deltaM < 0:
            raise ValueError("D, M and deltaM must be non-negative")


@dataclass
class LinearizationMap:
    col_to_mono: list[Monomial] = field(default_factory=list)
    mono_to_col: dict[Monomial, int] = field(default_factory=dict)

    @classmethod
    def from_monomials(cls, monos) -> "LinearizationMap":
        cols = sorted(set(monos), key=mono_key, reverse=True)
        return cls(cols, {m: i for i, m in enumerate(cols)})

    def __len__(self) -> int:
        return len(self.col_to_mono)

    def delinearize(self, bits: Sequence[int]) -> Polynomial:
        return Polynomial._wrap(frozenset(self.col_to_mono[c] for c in bits))


def linearize(polys: Sequence[Polynomial]) -> tuple[BitMatrix, LinearizationMap]:
    """One row per nonzero polynomial, one column per monomial."""
    polys = [p for p in polys if not p.is_zero()]
    monos = set()
    for p in polys:
        monos.update(p.terms)
    lmap = LinearizationMap.from_monomials(monos)
    m = BitMatrix(len(polys), len(lmap))
    for i, p in enumerate(polys):
        for t in p.terms:
            m.set(i, lmap.mono_to_col[t])
    return m, lmap


def rref_polynomials(polys: Sequence[Polynomial]) -> tuple[list[Polynomial], list[int]]:
    """Gauss-Jordan the linearization; nonzero rows back as polynomials."""
    m, lmap = linearize(polys)
    red, rank, pivots = gauss_jordan(m, copy=False)
    return [lmap.delinearize(red.row_bits(r)) for r in range(rank)], pivots


def multipliers(variables: Sequence[int], D: int) -> list[Monomial]:
    """All monomials of degree 1..D over ``variables``, ascending graded-lex."""
    out: list[Monomial] = []
    vs = sorted(variables)
    for d in range(1, D + 1):
        out.extend(combinations(vs, d))
    return out


def subsample(polys: Sequence[Polynomial], budget_log2: int, rng: np.random.Generator) -> list[Polynomial]:
    """Uniformly random subset whose linearized size first reaches 2**budget_log2.

    Returns all of ``polys`` (in input order) if the whole system fits.
    """
    target = 1 << budget_log2
    monos: set[Monomial] = set()
    for p in polys:
        monos.update(p.terms)
    if len(polys) * len(monos) <= target:
        return list(polys)
    order = rng.permutation(len(polys))
    chosen: list[int] = []
    monos = set()
    for i in order:
        chosen.append(int(i))
        monos.update(polys[i].terms)
        if len(chosen) * len(monos) >= target:
            break
    chosen.sort()
    return [polys[i] for i in chosen]


def xl_expand(polys: Sequence[Polynomial] | AnfSystem, params: XlParams,
              rng: np.random.Generator | None = None) -> list[Polynomial]:
    """Expand by all multipliers up to degree ``params.D``.

    Equations are taken in ascending degree order (stable on input order).
    Each selected equation contributes itself followed by its products; zero
    products are kept so the count matches ``m * sum(C(n, j))`` when the
    budget allows full expansion.  The sampled originals are always kept,
    products stop once rows * columns reaches ``2**(M + deltaM)``.
    """
    if isinstance(polys, AnfSystem):
        polys = polys.polynomials()
    if rng is None:
        rng = np.random.default_rng(params.seed)
    base = subsample(list(polys), params.M, rng)
    base = sorted(base, key=lambda p: p.degree)
    variables: set[int] = set()
    for p in base:
        variables |= p.variables()
    mults = multipliers(sorted(variables), params.D)
    limit = 1 << (params.M + params.deltaM)

    monos: set[Monomial] = set()
    for p in base:
        monos.update(p.terms)
    rows = len(base)
    products: dict[int, list[Polynomial]] = {i: [] for i in range(len(base))}
    full = True
    for i, p in enumerate(base):
        for mono in mults:
            if rows * len(monos) >= limit:
                full = False
                break
            q = p.mul_monomial(mono)
            products[i].append(q)
            monos.update(q.terms)
            rows += 1
        if not full:
            break
    out: list[Polynomial] = []
    for i, p in enumerate(base):
        out.append(p)
        out.extend(products[i])
    return out


def extract_facts(rref: BitMatrix, lmap: LinearizationMap) -> list[LearntFact]:
    """Keep linear rows and rows of the exact shape ``m + 1``."""
    facts = []
    for r in range(rref.rows):
        bits = rref.row_bits(r)
        if not bits:
            continue
        monos = [lmap.col_to_mono[c] for c in bits]
        if all(len(m) <= 1 for m in monos):
            facts.append(LearntFact(LearntFact.LINEAR, lmap.delinearize(bits)))
        elif len(monos) == 2 and monos[1] == () and len(monos[0]) >= 2:
            facts.append(LearntFact(LearntFact.MONOMIAL_ONE, lmap.delinearize(bits)))
    return facts


def xl(system: AnfSystem | Sequence[Polynomial], params: XlParams,
       rng: np.random.Generator | None = None) -> list[LearntFact]:
    """Expand, linearize, eliminate and harvest facts."""
    expanded = xl_expand(system, params, rng)
    m, lmap = linearize(expanded)
    red, _, _ = gauss_jordan(m, copy=False)
    return extract_facts(red, lmap)
