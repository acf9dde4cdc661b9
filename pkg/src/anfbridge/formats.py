"""Text formats: ANF, DIMACS CNF, monomial map and solution files.

ANF grammar (one equation ``poly = 0`` per line)::

    line     := comment | blank | poly
    comment  := "c" <anything>
    poly     := term ("+" term)*
    term     := "1" | "0" | var ("*" var)*
    var      := "x" <digits>          (1-based)

A comment of the form ``c vars <N>`` declares the variable count, which is
otherwise the largest index seen.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .anf import AnfSystem, Monomial, Polynomial, mono_str
from .convert import Clause, MonomialVarMap

MAX_VARS = 1 << 20

_VAR = re.compile(r"x(\d+)\Z")
_VARS_DECL = re.compile(r"c\s+vars\s+(\d+)\s*\Z")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


# ---------------------------------------------------------------------------
# ANF


@dataclass
class AnfDocument:
    num_vars: int = 0
    polys: list[Polynomial] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def render(self) -> str:
        lines = [f"c vars {self.num_vars}"]
        lines += [c if c.startswith("c") else f"c {c}" for c in self.comments]
        lines += [str(p) for p in self.polys]
        return "\n".join(lines) + "\n"

    def to_system(self) -> AnfSystem:
        return AnfSystem(self.num_vars, self.polys)


def _parse_poly(src: str, lineno: int) -> Polynomial:
    terms: list[Monomial] = []
    for raw in src.split("+"):
        tok = raw.strip()
        if not tok:
            raise ParseError("empty term", lineno)
        if tok == "1":
            terms.append(())
            continue
        if tok == "0":
            continue
        vs = []
        for factor in tok.split("*"):
            factor = factor.strip()
            m = _VAR.match(factor)
            if not m:
                raise ParseError(f"bad token {factor!r}", lineno)
            idx = int(m.group(1))
            if idx < 1 or idx > MAX_VARS:
                raise ParseError(f"variable index {idx} out of range", lineno)
            vs.append(idx - 1)
        terms.append(tuple(vs))
    return Polynomial(terms)


def parse_anf_document(text: str) -> AnfDocument:
    doc = AnfDocument()
    declared = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("c"):
            m = _VARS_DECL.match(s)
            if m:
                declared = int(m.group(1))
                if declared > MAX_VARS:
                    raise ParseError(f"variable count {declared} out of range", lineno)
            else:
                doc.comments.append(s)
            continue
        p = _parse_poly(s, lineno)
        doc.polys.append(p)
        if p.terms:
            doc.num_vars = max(doc.num_vars, max(p.variables(), default=-1) + 1)
    doc.num_vars = max(doc.num_vars, declared)
    return doc


def parse_anf(text: str) -> AnfSystem:
    """Parse ANF text into a (not yet propagated) system; duplicates collapse."""
    return parse_anf_document(text).to_system()


def write_anf(system: AnfSystem | Iterable[Polynomial], num_vars: int | None = None) -> str:
    """Values, equivalences and remaining polynomials of a system, one per line."""
    if isinstance(system, AnfSystem):
        polys = system.to_polynomials()
        num_vars = system.num_vars
    else:
        polys = list(system)
        if num_vars is None:
            num_vars = max((max(p.variables(), default=-1) for p in polys), default=-1) + 1
    return AnfDocument(num_vars, polys).render()


# ---------------------------------------------------------------------------
# DIMACS


def parse_dimacs(text: str, return_header: bool = False):
    """Clauses from DIMACS text.  Optionally also the declared (vars, clauses)."""
    header: tuple[int, int] | None = None
    clauses: list[Clause] = []
    cur: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("c") or s.startswith("%"):
            continue
        if s.startswith("p"):
            parts = s.split()
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad header {s!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"bad header {s!r}", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("negative counts in header", lineno)
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", lineno)
        for tok in s.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"non-integer token {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(cur))
                cur = []
            elif abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds declared {header[0]} variables", lineno)
            else:
                cur.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if cur:
        clauses.append(tuple(cur))
    if return_header:
        return clauses, header
    return clauses


def write_dimacs(clauses: Sequence[Sequence[int]], num_vars: int | None = None) -> str:
    if num_vars is None:
        num_vars = max((abs(l) for c in clauses for l in c), default=0)
    lines = [f"p cnf {num_vars} {len(clauses)}"]
    lines += [" ".join(str(l) for l in c) + (" 0" if c else "0") for c in clauses]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Monomial map


def write_map(vmap: MonomialVarMap) -> str:
    lines = []
    for v in range(1, vmap.num_vars + 1):
        if v in vmap.var_to_mono:
            lines.append(f"{v} = {mono_str(vmap.var_to_mono[v])}")
        elif v in vmap.aux:
            lines.append(f"{v} = aux")
    return "".join(line + "\n" for line in lines)


def parse_map(text: str) -> MonomialVarMap:
    vmap = MonomialVarMap()
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("c"):
            continue
        lhs, sep, rhs = s.partition("=")
        if not sep:
            raise ParseError(f"expected '<var> = <monomial>' in {s!r}", lineno)
        try:
            v = int(lhs)
        except ValueError:
            raise ParseError(f"bad CNF variable {lhs.strip()!r}", lineno) from None
        if v < 1:
            raise ParseError(f"bad CNF variable {v}", lineno)
        rhs = rhs.strip()
        vmap.num_vars = max(vmap.num_vars, v)
        if rhs == "aux":
            vmap.aux.add(v)
            continue
        p = _parse_poly(rhs, lineno)
        if len(p.terms) != 1 or p.has_constant:
            raise ParseError(f"expected a single monomial, got {rhs!r}", lineno)
        (m,) = p.terms
        vmap.mono_to_var[m] = v
        vmap.var_to_mono[v] = m
        if len(m) == 1:
            vmap.num_anf_vars = max(vmap.num_anf_vars, m[0] + 1)
    return vmap


# ---------------------------------------------------------------------------
# Solutions

STATUS_LINES = {"SAT": "SATISFIABLE", "UNSAT": "UNSATISFIABLE"}


def write_solution(status: str, model: Sequence[int] | None = None, per_line: int = 10) -> str:
    """``s`` status line, then ``v`` lines of signed 1-based ANF variables."""
    lines = [f"s {STATUS_LINES.get(status, 'UNKNOWN')}"]
    if status == "SAT" and model is not None:
        lits = [str(i + 1) if b else str(-(i + 1)) for i, b in enumerate(model)] + ["0"]
        for k in range(0, len(lits), per_line):
            lines.append("v " + " ".join(lits[k:k + per_line]))
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> tuple[str, list[int] | None]:
    status = None
    lits: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s.startswith("s "):
            word = s[2:].strip()
            status = {"SATISFIABLE": "SAT", "UNSATISFIABLE": "UNSAT"}.get(word, "UNKNOWN")
        elif s.startswith("v "):
            try:
                lits += [int(t) for t in s[2:].split()]
            except ValueError:
                raise ParseError(f"bad value line {s!r}", lineno) from None
    if status is None:
        raise ParseError("missing status line")
    if status != "SAT":
        return status, None
    lits = [l for l in lits if l != 0]
    model = [0] * max((abs(l) for l in lits), default=0)
    for l in lits:
        model[abs(l) - 1] = int(l > 0)
    return status, model
