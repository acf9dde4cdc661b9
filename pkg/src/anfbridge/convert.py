"""ANF <-> CNF conversion.

CNF variables are DIMACS integers.  ANF variable ``i`` (0-based) is CNF
variable ``i + 1``; monomials of degree >= 2 and cutting auxiliaries get
fresh CNF variables after those.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .anf import AnfSystem, Monomial, Polynomial, mono_str
from .karnaugh import minimize

Clause = tuple[int, ...]


@dataclass(frozen=True)
class ConvParams:
    K: int = 8
    L: int = 5
    Lp: int = 5

    def __post_init__(self):
        if self.K < 1 or self.L < 2 or self.Lp < 1:
            raise ValueError("need K >= 1, L >= 2, Lp >= 1")


def make_clause(lits: Iterable[int]) -> Clause | None:
    """Sorted, duplicate-free clause; None if it is a tautology."""
    s = set(lits)
    if any(-x in s for x in s):
        return None
    return tuple(sorted(s, key=lambda x: (abs(x), x)))


@dataclass
class MonomialVarMap:
    """Bidirectional monomial <-> CNF variable map, plus pure cutting auxiliaries."""

    num_anf_vars: int = 0
    mono_to_var: dict[Monomial, int] = field(default_factory=dict)
    var_to_mono: dict[int, Monomial] = field(default_factory=dict)
    aux: set[int] = field(default_factory=set)
    num_vars: int = 0

    @classmethod
    def for_anf(cls, n: int) -> "MonomialVarMap":
        vm = cls(num_anf_vars=n, num_vars=n)
        for v in range(n):
            vm.mono_to_var[(v,)] = v + 1
            vm.var_to_mono[v + 1] = (v,)
        return vm

    def var_for(self, m: Monomial) -> tuple[int, bool]:
        """CNF variable for monomial ``m``; the flag says it was just created."""
        v = self.mono_to_var.get(m)
        if v is not None:
            return v, False
        self.num_vars += 1
        v = self.num_vars
        self.mono_to_var[m] = v
        self.var_to_mono[v] = m
        return v, True

    def new_aux(self) -> int:
        self.num_vars += 1
        self.aux.add(self.num_vars)
        return self.num_vars

    def monomial_of(self, cnf_var: int) -> Monomial | None:
        return self.var_to_mono.get(cnf_var)

    def __str__(self) -> str:
        return ", ".join(f"{v}={mono_str(m)}" for v, m in sorted(self.var_to_mono.items()))


# ---------------------------------------------------------------------------
# ANF -> CNF


def xor_to_clauses(lits: Sequence[int], parity: int) -> list[Clause]:
    """CNF for ``l1 xor ... xor lk = parity``: one clause per violating pattern."""
    k = len(lits)
    if k == 0:
        return [()] if parity else []
    out = []
    for bits in product((0, 1), repeat=k):
        if sum(bits) % 2 == parity:
            continue
        # exclude this assignment: literal must differ from its value in `bits`
        out.append(tuple(-l if b else l for l, b in zip(lits, bits)))
    return out


def and_definition(v: int, inputs: Sequence[int]) -> list[Clause]:
    """Clauses for ``v <-> AND(inputs)``."""
    out = [(-v, x) for x in inputs]
    out.append(tuple([v] + [-x for x in inputs]))
    return out


def karnaugh_minimize(poly: Polynomial, K: int = 8, var_offset: int = 1) -> list[Clause]:
    """Minimal CNF for ``poly = 0`` over its own variables.

    Variables of ``poly`` are index-space integers; the clause literal for
    index ``i`` is ``i + var_offset``.
    """
    vs = sorted(poly.variables())
    if len(vs) > K:
        raise ValueError(f"{len(vs)} variables exceed Karnaugh bound K={K}")
    n = len(vs)
    pos = {v: i for i, v in enumerate(vs)}
    masks = [sum(1 << pos[v] for v in m) for m in poly.terms]
    onset = frozenset(
        a for a in range(1 << n)
        if sum((a & mk) == mk for mk in masks) & 1
    )
    clauses = []
    for value, care in minimize(n, onset):
        lits = []
        for i, v in enumerate(vs):
            if care >> i & 1:
                lit = v + var_offset
                lits.append(-lit if value >> i & 1 else lit)
        clauses.append(tuple(lits))
    return clauses


def _cut(terms: list[Monomial], constant: int, L: int, vmap: MonomialVarMap) -> list[tuple[list, int]]:
    """Split an XOR of ``terms`` (+ constant) into chained pieces of <= L terms.

    Pieces hold monomials over the extended index space (aux ``a`` appears
    as the degree-1 monomial ``(a - 1,)``).
    """
    if len(terms) <= L:
        return [(terms, constant)]
    if L < 3:
        raise ValueError("XOR cutting needs L >= 3")
    pieces = []
    first, rest = terms[: L - 1], terms[L - 1:]
    a = vmap.new_aux()
    pieces.append((first + [(a - 1,)], constant))
    while len(rest) > L - 1:
        chunk, rest = rest[: L - 2], rest[L - 2:]
        b = vmap.new_aux()
        pieces.append(([(a - 1,)] + chunk + [(b - 1,)], 0))
        a = b
    pieces.append(([(a - 1,)] + rest, 0))
    return pieces


def encode_polynomial(poly: Polynomial, params: ConvParams, vmap: MonomialVarMap) -> list[Clause]:
    """Clauses for ``poly = 0``, allocating monomial and cutting variables in ``vmap``."""
    if poly.is_zero():
        return []
    terms = [m for m in poly.sorted_terms() if m]
    constant = 1 if poly.has_constant else 0
    out: list[Clause] = []
    for piece_terms, c in _cut(terms, constant, params.L, vmap):
        piece = Polynomial._wrap(frozenset(piece_terms + ([()] if c else [])))
        if len(piece.variables()) <= params.K:
            out.extend(karnaugh_minimize(piece, params.K))
            continue
        lits = []
        for m in piece_terms:
            if len(m) == 1:
                lits.append(m[0] + 1)
            else:
                v, fresh = vmap.var_for(m)
                if fresh:
                    out.extend(and_definition(v, [x + 1 for x in m]))
                lits.append(v)
        out.extend(xor_to_clauses(lits, c))
    return [tuple(sorted(c, key=abs)) for c in out]


def anf_to_cnf(system: AnfSystem, params: ConvParams = ConvParams()) -> tuple[list[Clause], MonomialVarMap]:
    """Units for values, binary pairs for equivalences, then each polynomial."""
    vmap = MonomialVarMap.for_anf(system.num_vars)
    clauses: list[Clause] = []
    for v, x in system.assignments():
        clauses.append((v + 1,) if x else (-(v + 1),))
    for v, root, par in system.equivalences():
        a, b = v + 1, root + 1
        if par:
            clauses += [(b, a) if b < a else (a, b), (-min(a, b), -max(a, b))]
        else:
            lo, hi = min(a, b), max(a, b)
            clauses += [(lo, -hi), (-lo, hi)]
    for p in system.polynomials():
        clauses.extend(encode_polynomial(p, params, vmap))
    return _dedup(clauses), vmap


def _dedup(clauses: list[Clause]) -> list[Clause]:
    seen: set[Clause] = set()
    out = []
    for c in clauses:
        key = tuple(sorted(c))
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def polynomials_to_cnf(polys: Sequence[Polynomial], params: ConvParams = ConvParams(),
                       num_vars: int | None = None) -> tuple[list[Clause], MonomialVarMap]:
    """Encode raw polynomials without building or propagating a system."""
    if num_vars is None:
        num_vars = max((max(p.variables(), default=-1) for p in polys), default=-1) + 1
    vmap = MonomialVarMap.for_anf(num_vars)
    clauses: list[Clause] = []
    for p in polys:
        clauses.extend(encode_polynomial(p, params, vmap))
    return _dedup(clauses), vmap


# ---------------------------------------------------------------------------
# CNF -> ANF


def split_clause(clause: Sequence[int], Lp: int, new_var) -> list[list[int]]:
    """Chain a clause into pieces with at most ``Lp`` positive literals each."""
    pos = [l for l in clause if l > 0]
    if len(pos) <= Lp:
        return [list(clause)]
    if Lp < 2:
        raise ValueError("clause cutting needs Lp >= 2")
    neg = [l for l in clause if l < 0]
    pieces = []
    a = new_var()
    pieces.append(neg + pos[: Lp - 1] + [a])
    rest = pos[Lp - 1:]
    while len(rest) > Lp:
        b = new_var()
        pieces.append([-a] + rest[: Lp - 1] + [b])
        rest = rest[Lp - 1:]
        a = b
    pieces.append([-a] + rest)
    return pieces


def clause_to_polynomial(clause: Sequence[int]) -> Polynomial:
    """Product of negated literals (over 0-based ANF variables)."""
    p = Polynomial.one()
    for l in clause:
        v = abs(l) - 1
        p = p * (Polynomial.var(v) if l < 0 else Polynomial([(v,), ()]))
    return p


def cnf_to_anf(clauses: Sequence[Sequence[int]], params: ConvParams = ConvParams(),
               num_vars: int | None = None) -> AnfSystem:
    """Clause-by-clause polynomial encoding; long positive parts are cut first."""
    if num_vars is None:
        num_vars = max((abs(l) for c in clauses for l in c), default=0)
    counter = [num_vars]

    def new_var() -> int:
        counter[0] += 1
        return counter[0]

    polys = []
    for c in clauses:
        if len(c) == 0:
            polys.append(Polynomial.one())
            continue
        if any(-l in c for l in c):
            continue
        for piece in split_clause(list(dict.fromkeys(c)), params.Lp, new_var):
            polys.append(clause_to_polynomial(piece))
    return AnfSystem(counter[0], polys)
