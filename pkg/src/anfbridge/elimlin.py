"""ElimLin: harvest linear equations after GJE and eliminate one variable per equation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .anf import AnfSystem, LearntFact, Polynomial
from .xl import rref_polynomials, subsample


@dataclass
class SubstitutionRecord:
    """Eliminations in the order they were applied."""

    steps: list[tuple[int, Polynomial]] = field(default_factory=list)

    def append(self, var: int, replacement: Polynomial) -> None:
        self.steps.append((var, replacement))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def replay(self, assignment: list[int]) -> list[int]:
        """Fill in eliminated variables, last elimination first."""
        out = list(assignment)
        for var, repl in reversed(self.steps):
            out[var] = repl.evaluate(out)
        return out


@dataclass
class ElimLinResult:
    system: AnfSystem
    facts: list[LearntFact]
    record: SubstitutionRecord
    rounds: int = 0
    sampled: bool = False

    @property
    def contradiction(self) -> bool:
        return self.system.contradiction


def elimlin(system: AnfSystem | Sequence[Polynomial], M: int = 30,
            rng: np.random.Generator | None = None, max_rounds: int | None = None) -> ElimLinResult:
    """Run ElimLin to its fixed point on a copy of ``system``.

    The input is subsampled to a linearized size of about ``2**M``.  Facts
    are the harvested linear equations; they hold for every solution of the
    input.  A derived constant 1 is reported as the single fact ``1``.
    """
    if isinstance(system, AnfSystem):
        polys = system.polynomials()
        num_vars = system.num_vars
    else:
        polys = list(system)
        num_vars = max((max(p.variables(), default=-1) for p in polys), default=-1) + 1
    if rng is None:
        rng = np.random.default_rng(0)
    work = subsample(polys, M, rng)
    sampled = len(work) < len(polys)

    record = SubstitutionRecord()
    facts: list[LearntFact] = []
    rounds = 0
    while max_rounds is None or rounds < max_rounds:
        rows, _ = rref_polynomials(work)
        rounds += 1
        linear = [p for p in rows if p.degree <= 1]
        if not linear:
            work = rows
            break
        if any(p.is_one() for p in linear):
            return _unsat(num_vars, facts, record, rounds, sampled)
        sys = AnfSystem(num_vars, [p for p in rows if p.degree > 1])
        pending = list(linear)
        for i, lin in enumerate(pending):
            if lin.is_zero():
                continue
            if lin.is_one():
                return _unsat(num_vars, facts, record, rounds, sampled)
            facts.append(LearntFact(LearntFact.LINEAR, lin))
            cand = sorted(lin.variables())
            if not cand:
                continue
            var = min(cand, key=lambda v: (len(sys.occurrences(v)), v))
            repl = lin + Polynomial.var(var)
            sys.substitute(var, repl)
            record.append(var, repl)
            for j in range(i + 1, len(pending)):
                pending[j] = pending[j].substitute(var, repl)
            if sys.contradiction:
                return _unsat(num_vars, facts, record, rounds, sampled)
        work = sys.polynomials()
    out = AnfSystem(num_vars)
    for p in work:
        out.add_polynomial(p)
    return ElimLinResult(out, facts, record, rounds, sampled)


def _unsat(num_vars, facts, record, rounds, sampled) -> ElimLinResult:
    facts = facts + [LearntFact(LearntFact.LINEAR, Polynomial.one())]
    return ElimLinResult(AnfSystem(num_vars, [Polynomial.one()]), facts, record, rounds, sampled)
