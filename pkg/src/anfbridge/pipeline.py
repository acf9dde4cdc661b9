"""The XL -> ElimLin -> SAT fact-learning loop around a propagated master system."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .anf import AnfSystem, LearntFact, Polynomial
from .convert import Clause, ConvParams, MonomialVarMap, anf_to_cnf
from .elimlin import SubstitutionRecord, elimlin
from .sat import SAT, UNKNOWN, UNSAT, ConflictBudget, extract_sat_facts, solve
from .xl import XlParams, xl

log = logging.getLogger(__name__)

FIXPOINT = "FIXPOINT"


@dataclass(frozen=True)
class PipelineConfig:
    xl: XlParams = XlParams()
    conv: ConvParams = ConvParams()
    budget: ConflictBudget = ConflictBudget()
    max_time: float | None = None
    stop_on_sat: bool = False
    learn: bool = True
    max_iterations: int | None = None


@dataclass
class PhaseRecord:
    iteration: int
    phase: str  # "xl" | "elimlin" | "sat"
    facts: list[LearntFact]
    new: list[Polynomial]
    seconds: float
    sat_status: str | None = None


@dataclass
class PipelineResult:
    status: str
    system: AnfSystem
    clauses: list[Clause]
    var_map: MonomialVarMap
    facts: list[Polynomial] = field(default_factory=list)
    model: list[int] | None = None
    trace: list[PhaseRecord] = field(default_factory=list)
    iterations: int = 0
    timed_out: bool = False

    def facts_by_phase(self, phase: str, new_only: bool = False) -> list[Polynomial]:
        out = []
        for rec in self.trace:
            if rec.phase == phase:
                out.extend(rec.new if new_only else [f.poly for f in rec.facts])
        return out


def reconstruct_model(partial: Mapping[int, int], record: SubstitutionRecord | None = None,
                      states: AnfSystem | None = None, num_vars: int | None = None) -> list[int]:
    """Full assignment from values of the surviving free variables.

    ``partial`` maps variable -> bit for every free variable (class
    representatives, not eliminated).  Eliminated variables come from
    replaying ``record`` backwards; equivalent and determined variables from
    ``states``.
    """
    if num_vars is None:
        num_vars = states.num_vars if states is not None else max(partial, default=-1) + 1
    eliminated = {v for v, _ in record} if record is not None else set()
    free = []
    for v in range(num_vars):
        if v in eliminated:
            continue
        if states is not None:
            if states.value(v) is not None or states.find(v)[0] != v:
                continue
        free.append(v)
    missing = [v for v in free if v not in partial]
    if missing:
        raise ValueError(f"no value for free variable(s) {[v + 1 for v in missing]}")
    if states is not None:
        out = states.model({v: partial[v] for v in free})
    else:
        out = [0] * num_vars
        for v in free:
            out[v] = partial[v]
    if record is not None:
        out = record.replay(out)
        if states is not None:
            # equivalent variables may depend on eliminated representatives
            for v in range(num_vars):
                if states.value(v) is None:
                    root, par = states.find(v)
                    if root != v:
                        out[v] = out[root] ^ par
    return out


def satisfies(polys: Sequence[Polynomial], model: Sequence[int]) -> bool:
    return all(p.evaluate(model) == 0 for p in polys)


def _phase_copy(base: AnfSystem, extra: Sequence[LearntFact]) -> AnfSystem:
    """Iteration-start master plus this iteration's earlier facts, unpropagated."""
    c = base.copy()
    for f in extra:
        c.add_polynomial(f.poly)
    return c


def run(system: AnfSystem, cfg: PipelineConfig = PipelineConfig()) -> PipelineResult:
    """Propagate, then learn facts with XL, ElimLin and SAT until nothing new appears.

    The master system is changed only through ``add_facts`` (which
    propagates).  Within one iteration every phase works on a copy of the
    master as it stood at the start of the iteration, extended with the raw
    facts found by the earlier phases of that iteration.
    """
    t0 = time.monotonic()
    original = system.to_polynomials()
    n_orig = system.num_vars
    master = system.copy()
    master.propagate()
    trace: list[PhaseRecord] = []
    learnt: list[Polynomial] = []
    seen: set[Polynomial] = set()
    model: list[int] | None = None
    budget = cfg.budget
    seeds = np.random.SeedSequence(cfg.xl.seed)
    iteration = 0
    timed_out = False

    def finish(status: str) -> PipelineResult:
        clauses, vmap = anf_to_cnf(master, cfg.conv)
        if status == SAT and model is None:
            raise RuntimeError("SAT result without a model")
        return PipelineResult(status, master, clauses, vmap, learnt, model, trace, iteration, timed_out)

    def merge(phase: str, facts: list[LearntFact], started: float, sat_status=None) -> list[Polynomial]:
        fresh = [f for f in facts if f.poly not in seen]
        seen.update(f.poly for f in fresh)
        new = master.add_facts(fresh)
        learnt.extend(new)
        trace.append(PhaseRecord(iteration, phase, facts, new, time.monotonic() - started, sat_status))
        log.debug("iter %d %s: %d facts, %d new", iteration, phase, len(facts), len(new))
        return new

    def solved_model() -> list[int]:
        m = master.model()
        if not satisfies(original, m):
            raise RuntimeError("model from solved master does not satisfy the input")
        return m

    if master.contradiction:
        return finish(UNSAT)
    if master.is_solved():
        model = solved_model()
        return finish(SAT)
    if not cfg.learn:
        return finish(FIXPOINT)

    while True:
        if cfg.max_iterations is not None and iteration >= cfg.max_iterations:
            return finish(SAT if model is not None else FIXPOINT)
        if cfg.max_time is not None and time.monotonic() - t0 > cfg.max_time:
            timed_out = True
            return finish(SAT if model is not None else FIXPOINT)
        iteration += 1
        snapshot = master.copy()
        child = seeds.spawn(2)
        new_count = 0
        earlier: list[LearntFact] = []

        started = time.monotonic()
        facts = xl(snapshot, cfg.xl, np.random.default_rng(child[0]))
        new_count += len(merge("xl", facts, started))
        earlier += facts
        if master.contradiction:
            return finish(UNSAT)

        started = time.monotonic()
        res = elimlin(_phase_copy(snapshot, earlier), cfg.xl.M, np.random.default_rng(child[1]))
        new_count += len(merge("elimlin", res.facts, started))
        earlier += res.facts
        if master.contradiction:
            return finish(UNSAT)

        started = time.monotonic()
        sat_input = _phase_copy(snapshot, earlier)
        clauses, vmap = anf_to_cnf(sat_input, cfg.conv)
        outcome = solve(clauses, budget, num_vars=vmap.num_vars)
        sat_facts = extract_sat_facts(outcome, vmap, clauses)
        sat_new = merge("sat", sat_facts, started, outcome.status)
        new_count += len(sat_new)
        if master.contradiction or outcome.status == UNSAT:
            return finish(UNSAT)
        if outcome.status == SAT:
            candidate = [int(outcome.model[v]) for v in range(n_orig)]
            if not satisfies(original, candidate):
                raise RuntimeError("SAT model does not satisfy the input system")
            if model is None or cfg.stop_on_sat:
                model = candidate
            if cfg.stop_on_sat:
                return finish(SAT)

        if master.is_solved():
            if model is None:
                model = solved_model()
            return finish(SAT)
        if new_count == 0:
            if outcome.status == UNKNOWN and not budget.at_cap:
                budget = budget.escalate()
                log.debug("raising conflict budget to %d", budget.limit)
                continue
            return finish(SAT if model is not None else FIXPOINT)
        if not sat_new and outcome.status == UNKNOWN and not budget.at_cap:
            budget = budget.escalate()
