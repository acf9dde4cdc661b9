"""Exact two-level minimization (Quine-McCluskey prime implicants + minimum cover).

Cubes are ``(value, care)`` bit-pairs over ``n`` inputs: bit ``i`` of ``care``
says whether input ``i`` is fixed, and bit ``i`` of ``value`` gives its
polarity.  A cube covers minterm ``x`` iff ``x & care == value``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

Cube = tuple[int, int]


def prime_implicants(n: int, onset: frozenset[int]) -> list[Cube]:
    full = (1 << n) - 1
    current = {(m, full) for m in onset}
    primes: set[Cube] = set()
    while current:
        merged: set[Cube] = set()
        used: set[Cube] = set()
        by_care: dict[int, set[int]] = {}
        for value, care in current:
            by_care.setdefault(care, set()).add(value)
        for care, values in by_care.items():
            for value in values:
                bits = care
                while bits:
                    b = bits & -bits
                    bits ^= b
                    if value & b:
                        continue
                    partner = value | b
                    if partner in values:
                        merged.add((value, care & ~b))
                        used.add((value, care))
                        used.add((partner, care))
        primes |= current - used
        current = merged
    return sorted(primes, key=lambda c: (-bin(c[1]).count("1"), c[1], c[0]))


def _covers(cube: Cube, m: int) -> bool:
    return (m & cube[1]) == cube[0]


def minimum_cover(n: int, onset: frozenset[int], primes: list[Cube]) -> list[Cube]:
    """Minimum-cardinality subset of ``primes`` covering ``onset``.

    Essential primes are taken first; the remaining cyclic core is solved as
    a 0/1 set-cover integer program.
    """
    remaining = set(onset)
    chosen: list[Cube] = []
    cover_of = {m: [i for i, p in enumerate(primes) if _covers(p, m)] for m in onset}
    taken: set[int] = set()
    for m in sorted(onset):
        if len(cover_of[m]) == 1:
            i = cover_of[m][0]
            if i not in taken:
                taken.add(i)
                chosen.append(primes[i])
    for i in taken:
        remaining -= {m for m in remaining if _covers(primes[i], m)}
    if not remaining:
        return chosen
    rows = sorted(remaining)
    cols = sorted({i for m in rows for i in cover_of[m]} - taken)
    col_index = {c: j for j, c in enumerate(cols)}
    a = np.zeros((len(rows), len(cols)))
    for r, m in enumerate(rows):
        for i in cover_of[m]:
            if i in col_index:
                a[r, col_index[i]] = 1
    # tiny secondary weight on literal count keeps the choice deterministic and tidy
    lits = np.array([bin(primes[c][1]).count("1") for c in cols], dtype=float)
    cost = np.ones(len(cols)) + lits / (n * len(cols) + 1.0) / 2
    res = milp(cost, constraints=LinearConstraint(a, lb=np.ones(len(rows)), ub=np.inf),
               integrality=np.ones(len(cols)), bounds=Bounds(0, 1),
               options={"mip_rel_gap": 0.0})
    if not res.success:
        raise RuntimeError(f"set cover failed: {res.message}")
    for j, x in enumerate(res.x):
        if x > 0.5:
            chosen.append(primes[cols[j]])
    return chosen


@lru_cache(maxsize=4096)
def minimize(n: int, onset: frozenset[int]) -> tuple[Cube, ...]:
    """Minimum sum-of-products cover of the function whose true points are ``onset``."""
    if not onset:
        return ()
    if len(onset) == 1 << n:
        return ((0, 0),)
    primes = prime_implicants(n, onset)
    cover = minimum_cover(n, onset, primes)
    return tuple(sorted(cover, key=lambda c: (c[1], c[0])))
