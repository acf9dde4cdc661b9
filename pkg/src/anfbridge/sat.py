"""Conflict-bounded CDCL solver and fact extraction from its clauses.

MiniSat-style: two watched literals, first-UIP learning with recursive-free
clause minimization, VSIDS activity with a lazy heap, Luby restarts and
phase saving.  Nothing is randomized, so runs are reproducible.

Internal literals are ``2*v`` (positive) and ``2*v + 1`` (negative) for the
0-based variable ``v``; the public interface speaks DIMACS integers.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .anf import LearntFact, Polynomial
from .convert import MonomialVarMap

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"

_UNDEF = -1


@dataclass(frozen=True)
class ConflictBudget:
    """Conflict limit with an escalation schedule (start, step, cap)."""

    limit: int = 10_000
    step: int = 10_000
    cap: int = 100_000

    def __post_init__(self):
        if self.limit < 0:
            raise ValueError("conflict limit must be non-negative")

    def escalate(self) -> "ConflictBudget":
        return ConflictBudget(min(self.limit + self.step, self.cap), self.step, self.cap)

    @property
    def at_cap(self) -> bool:
        return self.limit >= self.cap


@dataclass
class SolveOutcome:
    status: str
    model: list[bool] | None = None  # index v -> value of DIMACS var v+1
    learnt: list[tuple[int, ...]] = field(default_factory=list)
    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0

    def value(self, var: int) -> bool:
        assert self.model is not None
        return self.model[var - 1]


def luby(i: int) -> int:
    """i-th element (0-based) of the Luby sequence 1,1,2,1,1,2,4,..."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


class Solver:
    def __init__(self, num_vars: int = 0, restart_base: int = 64, var_decay: float = 0.95):
        self.n = 0
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.watches: list[list[list[int]]] = []
        self.assigns: list[int] = []  # per literal: 1 true, 0 false, -1 unassigned
        self.level: list[int] = []
        self.reason: list[list[int] | None] = []
        self.activity: list[float] = []
        self.polarity: list[int] = []
        self.seen: list[int] = []
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.heap: list[tuple[float, int]] = []
        self.var_inc = 1.0
        self.var_decay = var_decay
        self.restart_base = restart_base
        self.ok = True
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        self.ensure_vars(num_vars)

    def ensure_vars(self, n: int) -> None:
        while self.n < n:
            v = self.n
            self.n += 1
            self.watches += [[], []]
            self.assigns += [_UNDEF, _UNDEF]
            self.level.append(0)
            self.reason.append(None)
            self.activity.append(0.0)
            self.polarity.append(1)  # prefer the negative literal first
            self.seen.append(0)
            heapq.heappush(self.heap, (0.0, v))

    # -- clause database -----------------------------------------------
    @staticmethod
    def _lit(d: int) -> int:
        return 2 * (d - 1) if d > 0 else 2 * (-d - 1) + 1

    @staticmethod
    def _dimacs(lit: int) -> int:
        v = (lit >> 1) + 1
        return -v if lit & 1 else v

    def add_clause(self, dimacs: Sequence[int]) -> bool:
        if not self.ok:
            return False
        if dimacs:
            self.ensure_vars(max(abs(d) for d in dimacs))
        lits = sorted({self._lit(d) for d in dimacs})
        out = []
        for i, l in enumerate(lits):
            if i + 1 < len(lits) and lits[i + 1] == l ^ 1:
                return True  # tautology
            val = self.assigns[l]
            if val == 1:
                return True
            if val == 0:
                continue
            out.append(l)
        if not out:
            self.ok = False
            return False
        if len(out) == 1:
            self._enqueue(out[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self.clauses.append(out)
        self._watch(out)
        return True

    def _watch(self, c: list[int]) -> None:
        self.watches[c[0] ^ 1].append(c)
        self.watches[c[1] ^ 1].append(c)

    # -- assignment ------------------------------------------------------
    def _enqueue(self, lit: int, reason: list[int] | None) -> None:
        self.assigns[lit] = 1
        self.assigns[lit ^ 1] = 0
        v = lit >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self) -> list[int] | None:
        """Unit propagation; returns a conflicting clause or None."""
        assigns = self.assigns
        watches = self.watches
        trail = self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            false_lit = p ^ 1
            ws = watches[p]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if assigns[first] == 1:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if assigns[lk] != 0:
                        c[1], c[k] = lk, false_lit
                        watches[lk ^ 1].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if assigns[first] == 0:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.qhead = len(trail)
                        return c
                    self._enqueue(first, c)
            del ws[j:]
        return None

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        start = self.trail_lim[lvl]
        for lit in reversed(self.trail[start:]):
            v = lit >> 1
            self.assigns[lit] = _UNDEF
            self.assigns[lit ^ 1] = _UNDEF
            self.reason[v] = None
            self.polarity[v] = lit & 1
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    # -- heuristics --------------------------------------------------------
    def _bump(self, v: int) -> None:
        a = self.activity[v] + self.var_inc
        self.activity[v] = a
        if a > 1e100:
            self.activity = [x * 1e-100 for x in self.activity]
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(self.n)]
            heapq.heapify(self.heap)
        elif self.assigns[2 * v] == _UNDEF:
            heapq.heappush(self.heap, (-a, v))

    def _pick_branch(self) -> int | None:
        heap = self.heap
        while heap:
            neg_act, v = heapq.heappop(heap)
            if self.assigns[2 * v] != _UNDEF:
                continue
            if -neg_act != self.activity[v]:
                continue  # stale entry; a fresher one is in the heap
            return 2 * v + self.polarity[v]
        # stale-only heap: fall back to a linear scan
        for v in range(self.n):
            if self.assigns[2 * v] == _UNDEF:
                return 2 * v + self.polarity[v]
        return None

    # -- conflict analysis ---------------------------------------------------
    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        seen = self.seen
        level = self.level
        cur = len(self.trail_lim)
        learnt = [0]
        counter = 0
        p = -1
        idx = len(self.trail) - 1
        to_clear = []
        while True:
            for q in (confl if p == -1 else confl[1:]):
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    to_clear.append(v)
                    self._bump(v)
                    if level[v] >= cur:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            confl = self.reason[p >> 1]
            seen[p >> 1] = 0
            counter -= 1
            if counter == 0:
                break
        learnt[0] = p ^ 1

        # drop literals implied by the rest of the clause (one-step minimization)
        keep = [learnt[0]]
        for q in learnt[1:]:
            r = self.reason[q >> 1]
            if r is None:
                keep.append(q)
                continue
            for x in r[1:]:
                u = x >> 1
                if not seen[u] and level[u] > 0:
                    keep.append(q)
                    break
        learnt = keep
        for v in to_clear:
            seen[v] = 0

        if len(learnt) == 1:
            back = 0
        else:
            best = 1
            for i in range(2, len(learnt)):
                if level[learnt[i] >> 1] > level[learnt[best] >> 1]:
                    best = i
            learnt[1], learnt[best] = learnt[best], learnt[1]
            back = level[learnt[1] >> 1]
        self.var_inc /= self.var_decay
        return learnt, back

    # -- search ----------------------------------------------------------------
    def solve(self, max_conflicts: int) -> SolveOutcome:
        start_conflicts = self.conflicts
        if not self.ok:
            return self._outcome(UNSAT)
        if self._propagate() is not None:
            self.ok = False
            return self._outcome(UNSAT)
        restart_idx = 0
        budget_left = luby(restart_idx) * self.restart_base
        while True:
            confl = self._propagate()
            if confl is not None:
                if not self.trail_lim:
                    self.ok = False
                    return self._outcome(UNSAT)
                if self.conflicts - start_conflicts >= max_conflicts:
                    self._cancel_until(0)
                    return self._outcome(UNKNOWN)
                self.conflicts += 1
                budget_left -= 1
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self.learnts.append(learnt)
                    self._enqueue(learnt[0], None)
                else:
                    self.learnts.append(learnt)
                    self._watch(learnt)
                    self._enqueue(learnt[0], learnt)
                continue
            if budget_left <= 0:
                restart_idx += 1
                budget_left = luby(restart_idx) * self.restart_base
                self._cancel_until(0)
                continue
            lit = self._pick_branch()
            if lit is None:
                model = [self.assigns[2 * v] == 1 for v in range(self.n)]
                out = self._outcome(SAT, model)
                self._cancel_until(0)
                return out
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, None)

    def level0_units(self) -> list[int]:
        end = self.trail_lim[0] if self.trail_lim else len(self.trail)
        return [self._dimacs(l) for l in self.trail[:end]]

    def _outcome(self, status: str, model: list[bool] | None = None) -> SolveOutcome:
        learnt = [tuple(self._dimacs(l) for l in c) for c in self.learnts]
        if status != UNSAT:
            have = {c[0] for c in learnt if len(c) == 1}
            learnt += [(u,) for u in self.level0_units() if u not in have]
        return SolveOutcome(status, model, learnt, self.conflicts, self.decisions, self.propagations)


def solve(clauses: Sequence[Sequence[int]], budget: ConflictBudget | int = ConflictBudget(),
          num_vars: int = 0) -> SolveOutcome:
    """Solve ``clauses`` with at most ``budget`` conflicts."""
    limit = budget.limit if isinstance(budget, ConflictBudget) else int(budget)
    n = max([num_vars] + [abs(l) for c in clauses for l in c])
    s = Solver(n)
    for c in clauses:
        if not s.add_clause(c):
            break
    return s.solve(limit)


def extract_sat_facts(outcome: SolveOutcome, vmap: MonomialVarMap,
                      clauses: Sequence[Sequence[int]] = ()) -> list[LearntFact]:
    """Value and equivalence facts over monomial-mapped variables.

    Units give ``m`` / ``m + 1`` (``m = 0`` for a degree >= 2 monomial is not
    a fact kind and is dropped).  A binary pair ``(a | b), (-a | -b)`` or
    ``(a | -b), (-a | b)`` over two degree-1 mapped variables gives a linear
    fact.  Anything touching an unmapped variable is ignored.
    """
    if outcome.status == UNSAT:
        return [LearntFact(LearntFact.LINEAR, Polynomial.one())]
    facts: list[LearntFact] = []
    seen: set[Polynomial] = set()

    def emit(p: Polynomial) -> None:
        if p not in seen and not p.is_zero():
            seen.add(p)
            facts.append(LearntFact.from_poly(p))

    for c in outcome.learnt:
        if len(c) != 1:
            continue
        m = vmap.monomial_of(abs(c[0]))
        if m is None:
            continue
        if c[0] > 0:
            emit(Polynomial([m, ()]))
        elif len(m) == 1:
            emit(Polynomial([m]))

    binaries = set()
    for c in list(clauses) + list(outcome.learnt):
        if len(c) != 2:
            continue
        a, b = c
        ma, mb = vmap.monomial_of(abs(a)), vmap.monomial_of(abs(b))
        if ma is None or mb is None or len(ma) != 1 or len(mb) != 1 or abs(a) == abs(b):
            continue
        binaries.add(frozenset((a, b)))
    for pair in sorted(binaries, key=lambda s: sorted(s, key=lambda x: (abs(x), x))):
        a, b = sorted(pair, key=lambda x: (abs(x), x))
        if frozenset((-a, -b)) not in binaries:
            continue
        # (a | b) & (-a | -b)  =>  lit_a xor lit_b = 1
        sa, sb = int(a < 0), int(b < 0)
        ma, mb = vmap.monomial_of(abs(a)), vmap.monomial_of(abs(b))
        emit(Polynomial([ma, mb] + ([()] if 1 ^ sa ^ sb else [])))
    return facts
