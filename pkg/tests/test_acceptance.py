"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v -s``; the lines are
also repeated in the terminal summary.
"""

from __future__ import annotations

import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from anfbridge.anf import AnfSystem, Polynomial
from anfbridge.bench import BenchSpec, baseline_solve, check_instance_model, generate_instance
from anfbridge.convert import ConvParams, MonomialVarMap, cnf_to_anf, encode_polynomial, polynomials_to_cnf
from anfbridge.elimlin import elimlin
from anfbridge.formats import write_dimacs
from anfbridge.pipeline import PipelineConfig, run
from anfbridge.sat import SAT, UNSAT
from anfbridge.xl import XlParams, linearize, xl, xl_expand

from conftest import poly
from oracles import all_assignments, anf_has_extension, anf_solution_mask, cnf_solutions, count_extensions

RESULTS: list[str] = []


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def random_system(rng, n, m, degree, planted):
    point = rng.integers(0, 2, n)
    polys = []
    while len(polys) < m:
        terms = []
        for _ in range(int(rng.integers(1, 7))):
            d = int(rng.integers(0, min(degree, n) + 1))
            terms.append(tuple(sorted(rng.choice(n, d, replace=False).tolist())))
        p = Polynomial(terms)
        if planted and p.evaluate(point):
            p = p + Polynomial.one()
        if not p.is_zero():
            polys.append(p)
    return polys


# 1 ------------------------------------------------------------------------------

def test_criterion_1_xl_table(two_eq):
    t = time.monotonic()
    rows = [p for p in xl_expand(two_eq, XlParams(D=1)) if not p.is_zero()]
    m, _ = linearize(rows)
    facts = sorted(str(f) for f in xl(two_eq, XlParams(D=1)))
    dt = time.monotonic() - t
    ok = m.rows == 7 and facts == ["x1 + 1", "x2", "x3"] and dt < 1
    report(1, ok, f"{m.rows} expanded rows, facts {facts}, {dt:.3f}s")


# 2 ------------------------------------------------------------------------------

def test_criterion_2_worked_system(five_eq):
    t = time.monotonic()
    res = run(AnfSystem(5, five_eq))
    dt = time.monotonic() - t
    x3, x1 = poly((3,), ()), poly((1,), ())
    xl_facts, el_facts = res.facts_by_phase("xl"), res.facts_by_phase("elimlin")
    values = [res.system.value(v) for v in range(5)]
    ok = (res.status == SAT and values == [1, 1, 1, 1, 0] and res.model == [1, 1, 1, 1, 0]
          and x3 in xl_facts and x1 in el_facts and x1 not in xl_facts and dt < 1)
    report(2, ok, f"status {res.status}, values {values}, x3 from XL: {x3 in xl_facts}, "
                  f"x1 first from ElimLin: {x1 in el_facts and x1 not in xl_facts}, {dt:.3f}s")


# 3 ------------------------------------------------------------------------------

def test_criterion_3_conversion_counts(quad_xor):
    t = time.monotonic()
    vm = MonomialVarMap.for_anf(4)
    karn = encode_polynomial(quad_xor, ConvParams(), vm)
    vm2 = MonomialVarMap.for_anf(4)
    tseitin = encode_polynomial(quad_xor, ConvParams(K=3), vm2)
    zeros = {a for a in map(tuple, all_assignments(4).tolist()) if quad_xor.evaluate(a) == 0}
    karn_ok = set(cnf_solutions(4, karn)) == zeros
    # Tseitin: projection onto x1..x4 equals the zeros, and x5 is forced to x1*x3
    tseitin_models = cnf_solutions(5, tseitin)
    tseitin_ok = ({m[:4] for m in tseitin_models} == zeros
                  and all(m[4] == m[0] & m[2] for m in tseitin_models)
                  and len(tseitin_models) == len(zeros))
    dt = time.monotonic() - t
    ok = len(karn) == 6 and len(tseitin) == 11 and karn_ok and tseitin_ok and dt < 1
    report(3, ok, f"Karnaugh {len(karn)} clauses (equivalent: {karn_ok}), "
                  f"Tseitin {len(tseitin)} clauses (equivalent: {tseitin_ok}), {dt:.3f}s")


# 4 ------------------------------------------------------------------------------

def test_criterion_4_elimlin_example():
    t = time.monotonic()
    ps = [poly((1,), (2,), (3,)), poly((1, 2), (2, 3), ())]
    res = elimlin(ps)
    s = AnfSystem(3, ps)
    s.add_facts(res.facts)
    dt = time.monotonic() - t
    learned = poly((2,), ()) in [f.poly for f in res.facts]
    anti = s.find(2) == (0, 1) and s.value(0) is None
    ok = learned and anti and s.value(1) == 1 and dt < 1
    report(4, ok, f"facts {[str(f) for f in res.facts]}, x1 = not x3 after propagation: {anti}, {dt:.3f}s")


# 5 ------------------------------------------------------------------------------

def test_criterion_5_oracle_equisatisfiability():
    t = time.monotonic()
    rng = np.random.default_rng(2024)
    mismatches = []
    sat = unsat = facts_checked = looped = 0
    for i in range(500):
        n = int(rng.integers(1, 15))
        m = int(rng.integers(1, 31))
        degree = int(rng.integers(1, 4))
        polys = random_system(rng, n, m, degree, planted=i % 2 == 0)
        mask = anf_solution_mask(n, [p.terms for p in polys])
        sols = all_assignments(n)[mask]
        res = run(AnfSystem(n, polys), PipelineConfig(xl=XlParams(seed=i)))
        want = SAT if mask.any() else UNSAT
        looped += res.iterations > 0
        if res.status != want:
            mismatches.append((i, "status", res.status, want))
            continue
        if want == SAT:
            sat += 1
            idx = sum(b << v for v, b in enumerate(res.model))
            if len(res.model) != n or not mask[idx]:
                mismatches.append((i, "model"))
        else:
            unsat += 1
        emitted = res.facts + [f.poly for rec in res.trace for f in rec.facts]
        for f in emitted:
            facts_checked += 1
            if sols.size and any(f.evaluate(a) for a in sols.tolist()):
                mismatches.append((i, "fact", str(f)))
    dt = time.monotonic() - t
    ok = not mismatches and dt < 300
    report(5, ok, f"500 systems ({sat} SAT, {unsat} UNSAT, {looped} needed the learning loop), {facts_checked} facts checked, "
                  f"{len(mismatches)} mismatches {mismatches[:3]}, {dt:.1f}s")


# 6 ------------------------------------------------------------------------------

def test_criterion_6_conversion_soundness():
    t = time.monotonic()
    rng = np.random.default_rng(77)
    bad = []
    for i in range(200):
        n = int(rng.integers(1, 11))
        polys = random_system(rng, n, int(rng.integers(1, 8)), int(rng.integers(1, 4)), planted=i % 3 != 0)
        params = ConvParams(K=int(rng.integers(2, 9)), L=int(rng.integers(3, 6)), Lp=int(rng.integers(2, 6)))
        mask = anf_solution_mask(n, [p.terms for p in polys])
        clauses, vm = polynomials_to_cnf(polys, params, num_vars=n)
        back = cnf_to_anf(clauses, params, vm.num_vars)
        back_polys = [p.terms for p in back.polynomials()]
        for a, want in zip(all_assignments(n).tolist(), mask.tolist()):
            fixed = {v + 1: b for v, b in enumerate(a)}
            if (count_extensions(clauses, fixed, vm.num_vars, limit=1) > 0) != want:
                bad.append((i, "anf->cnf", a))
                break
            if anf_has_extension(back_polys, {v: b for v, b in enumerate(a)}, back.num_vars) != want:
                bad.append((i, "anf->cnf->anf", a))
                break
    dt = time.monotonic() - t
    ok = not bad and dt < 120
    report(6, ok, f"200 systems, projection and round-trip checks, {len(bad)} mismatches {bad[:3]}, {dt:.1f}s")


# 7 ------------------------------------------------------------------------------

def test_criterion_7_toy_feistel():
    t = time.monotonic()
    rows = []
    for seed in range(50):
        rounds = 2 + seed % 3
        inst = generate_instance(BenchSpec("toy-feistel", seed=seed, width=8, rounds=rounds, pairs=2))
        system = inst.document.to_system()
        base_status, base_model = baseline_solve(system)
        res = run(system)
        rows.append(dict(
            rounds=rounds,
            base_solved=base_status == SAT and check_instance_model(inst, base_model),
            solved=res.status == SAT and check_instance_model(inst, res.model),
            facts=len(res.facts),
        ))
    dt = time.monotonic() - t
    lost = [i for i, r in enumerate(rows) if r["base_solved"] and not r["solved"]]
    with_facts = sum(r["facts"] > 0 for r in rows)
    by_round = {k: f"{sum(r['facts'] > 0 for r in rows if r['rounds'] == k)}/"
                   f"{sum(r['rounds'] == k for r in rows)}" for k in (2, 3, 4)}
    ok = not lost and all(r["solved"] for r in rows) and with_facts >= 40 and dt < 600
    report(7, ok, f"solved {sum(r['solved'] for r in rows)}/50 (baseline {sum(r['base_solved'] for r in rows)}), "
                  f"keys verified by forward simulation, learnt facts on {with_facts}/50 "
                  f"(by rounds {by_round}; need 40), {dt:.1f}s")


# 8 ------------------------------------------------------------------------------

def _determinism_inputs(tmp: Path) -> list[tuple[Path, list[str]]]:
    cases = []
    rng = np.random.default_rng(8)
    for k in range(20):
        if k < 6:
            doc = generate_instance(BenchSpec("toy-feistel", seed=k, rounds=2 + k % 3, pairs=1 + k % 2)).document
            text, flags = doc.render(), ["--anf"]
        elif k < 12:
            doc = generate_instance(BenchSpec("random-planted", seed=k, num_vars=12, num_polys=14, degree=3)).document
            text, flags = doc.render(), ["--anf"]
        elif k < 16:
            polys = random_system(rng, 10, 12, 2, planted=False)
            text, flags = "".join(f"{p}\n" for p in polys), ["--anf"]
        else:
            n = 15
            cls = [[int(v) * int(rng.choice([-1, 1])) for v in rng.choice(np.arange(1, n + 1), 3, replace=False)]
                   for _ in range(60)]
            text, flags = write_dimacs(cls, n), ["--cnf"]
        src = tmp / f"in{k}.{'cnf' if flags == ['--cnf'] else 'anf'}"
        src.write_text(text)
        extra = [["--xl-deg", "2"], ["--karn", "4", "--xor-cut", "3"], ["--seed", "3", "--sample-m", "8"],
                 ["--stop-on-sat"], ["--clause-cut", "2"]][k % 5]
        cases.append((src, flags + [str(src)] + extra))
    return cases


def test_criterion_8_determinism(tmp_path):
    t = time.monotonic()
    differing = []
    for k, (src, args) in enumerate(_determinism_inputs(tmp_path)):
        outputs = []
        for run_id, hashseed in enumerate(("1", "2")):
            d = tmp_path / f"run{k}_{run_id}"
            d.mkdir()
            files = [d / "out.anf", d / "out.cnf", d / "out.map", d / "out.sol"]
            cmd = [sys.executable, "-m", "anfbridge", *args, "--out-anf", str(files[0]), "--out-cnf", str(files[1]),
                   "--out-map", str(files[2]), "--out-solution", str(files[3])]
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            proc = subprocess.run(cmd, capture_output=True, text=True, env=env)
            assert proc.returncode in (0, 10, 20), proc.stderr
            outputs.append((proc.returncode, [f.read_bytes() for f in files]))
        if outputs[0] != outputs[1]:
            differing.append(k)
    dt = time.monotonic() - t
    report(8, not differing, f"20 instances run twice under different hash seeds, "
                             f"{len(differing)} differing {differing}, {dt:.1f}s")
