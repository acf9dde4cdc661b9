"""Toy benchmark instances and the with/without-learning harness.

Two instance families:

* ``random-planted``: random polynomials whose constants are adjusted so a
  hidden random assignment satisfies every equation.
* ``toy-feistel``: a scaled-down Simon-style Feistel cipher.  Each round maps
  ``(L, R)`` to ``(R ^ f(L) ^ k_i, L)`` with
  ``f(x) = (x <<< 1) & (x <<< h/2) ^ (x <<< 2)`` on ``h``-bit halves.
  Plaintext and ciphertext bits are fixed by equations, round keys are free.

CSV report columns: see :data:`CSV_FIELDS`.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .anf import AnfSystem, Polynomial
from .convert import ConvParams, anf_to_cnf
from .formats import AnfDocument
from .pipeline import PipelineConfig, PipelineResult, run, satisfies
from .sat import SAT, ConflictBudget, solve

RANDOM_PLANTED = "random-planted"
TOY_FEISTEL = "toy-feistel"


@dataclass(frozen=True)
class BenchSpec:
    kind: str
    seed: int = 0
    # random-planted
    num_vars: int = 8
    num_polys: int = 12
    degree: int = 2
    max_terms: int = 6
    # toy-feistel
    width: int = 8
    rounds: int = 2
    pairs: int = 1


@dataclass
class Instance:
    spec: BenchSpec
    document: AnfDocument
    witness: list[int]  # planted assignment, or the key bits for toy-feistel
    key_vars: list[int] = field(default_factory=list)
    plaintexts: list[tuple[int, int]] = field(default_factory=list)
    ciphertexts: list[tuple[int, int]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# random planted systems


def _random_monomial(rng: np.random.Generator, n: int, degree: int) -> tuple[int, ...]:
    d = int(rng.integers(1, degree + 1))
    d = min(d, n)
    return tuple(sorted(int(v) for v in rng.choice(n, size=d, replace=False)))


def random_planted(spec: BenchSpec) -> Instance:
    n = spec.num_vars
    if not 1 <= n <= 32:
        raise ValueError("random-planted needs 1..32 variables")
    if spec.num_polys < 0 or spec.degree < 1 or spec.max_terms < 1:
        raise ValueError("bad random-planted parameters")
    rng = np.random.default_rng(spec.seed)
    planted = [int(b) for b in rng.integers(0, 2, size=n)]
    polys = []
    while len(polys) < spec.num_polys:
        k = int(rng.integers(1, spec.max_terms + 1))
        p = Polynomial(_random_monomial(rng, n, spec.degree) for _ in range(k))
        if p.evaluate(planted):
            p = p + Polynomial.one()
        if p.is_zero() or p.is_one():
            continue
        polys.append(p)
    doc = AnfDocument(n, polys, [f"c {RANDOM_PLANTED} vars={n} polys={spec.num_polys} "
                                 f"degree={spec.degree} seed={spec.seed}"])
    return Instance(spec, doc, planted)


# ---------------------------------------------------------------------------
# toy Feistel


def _rotations(h: int) -> tuple[int, int, int]:
    return 1 % h, (h // 2) % h, 2 % h


def feistel_round_fn(x: Sequence[int], h: int) -> list[int]:
    a, b, c = _rotations(h)
    return [(x[(j + a) % h] & x[(j + b) % h]) ^ x[(j + c) % h] for j in range(h)]


def feistel_encrypt(left: int, right: int, round_keys: Sequence[int], h: int) -> tuple[int, int]:
    """Forward simulation on integers (bit j of a half is bit j of the int)."""
    L = [(left >> j) & 1 for j in range(h)]
    R = [(right >> j) & 1 for j in range(h)]
    for k in round_keys:
        f = feistel_round_fn(L, h)
        newL = [R[j] ^ f[j] ^ ((k >> j) & 1) for j in range(h)]
        L, R = newL, L
    return sum(b << j for j, b in enumerate(L)), sum(b << j for j, b in enumerate(R))


def toy_feistel(spec: BenchSpec) -> Instance:
    w, r = spec.width, spec.rounds
    if w < 2 or w > 16 or w % 2:
        raise ValueError("toy-feistel width must be even and in 2..16")
    if not 0 <= r <= 8:
        raise ValueError("toy-feistel rounds must be in 0..8")
    if spec.pairs < 1:
        raise ValueError("need at least one plaintext/ciphertext pair")
    h = w // 2
    rng = np.random.default_rng(spec.seed)
    round_keys = [int(rng.integers(0, 1 << h)) for _ in range(r)]
    key_vars = list(range(r * h))
    nxt = r * h
    polys: list[Polynomial] = []
    pts, cts = [], []
    a, b, c = _rotations(h)
    for _ in range(spec.pairs):
        pl, pr = int(rng.integers(0, 1 << h)), int(rng.integers(0, 1 << h))
        cl, cr = feistel_encrypt(pl, pr, round_keys, h)
        pts.append((pl, pr))
        cts.append((cl, cr))
        L = list(range(nxt, nxt + h))
        R = list(range(nxt + h, nxt + 2 * h))
        nxt += 2 * h
        for j in range(h):
            polys.append(_fix(L[j], (pl >> j) & 1))
            polys.append(_fix(R[j], (pr >> j) & 1))
        for i in range(r):
            newL = list(range(nxt, nxt + h))
            nxt += h
            for j in range(h):
                k = key_vars[i * h + j]
                polys.append(Polynomial([
                    (newL[j],), (R[j],), tuple(sorted({L[(j + a) % h], L[(j + b) % h]})),
                    (L[(j + c) % h],), (k,),
                ]))
            L, R = newL, L
        for j in range(h):
            polys.append(_fix(L[j], (cl >> j) & 1))
            polys.append(_fix(R[j], (cr >> j) & 1))
    key_bits = [(round_keys[i] >> j) & 1 for i in range(r) for j in range(h)]
    doc = AnfDocument(nxt, polys, [f"c {TOY_FEISTEL} width={w} rounds={r} pairs={spec.pairs} seed={spec.seed}"])
    return Instance(spec, doc, key_bits, key_vars, pts, cts)


def _fix(v: int, bit: int) -> Polynomial:
    return Polynomial([(v,), ()]) if bit else Polynomial.var(v)


def generate_instance(spec: BenchSpec) -> Instance:
    if spec.kind == RANDOM_PLANTED:
        return random_planted(spec)
    if spec.kind == TOY_FEISTEL:
        return toy_feistel(spec)
    raise ValueError(f"unknown benchmark kind {spec.kind!r}")


def generate(spec: BenchSpec) -> AnfDocument:
    return generate_instance(spec).document


def check_instance_model(inst: Instance, model: Sequence[int]) -> bool:
    """Planted: model satisfies the system.  Feistel: key reproduces every pair."""
    if not satisfies(inst.document.polys, model):
        return False
    if inst.spec.kind != TOY_FEISTEL:
        return True
    h = inst.spec.width // 2
    keys = [sum(model[inst.key_vars[i * h + j]] << j for j in range(h)) for i in range(inst.spec.rounds)]
    return all(feistel_encrypt(pl, pr, keys, h) == ct for (pl, pr), ct in zip(inst.plaintexts, inst.ciphertexts))


# ---------------------------------------------------------------------------
# harness

CSV_FIELDS = [
    "kind", "seed", "width", "rounds", "pairs", "num_vars", "num_polys",
    "mode", "status", "verified", "iterations", "facts",
    "facts_xl", "facts_elimlin", "facts_sat", "seconds",
]


def baseline_solve(system: AnfSystem, conv: ConvParams = ConvParams(),
                   budget: ConflictBudget = ConflictBudget(100_000, 0, 100_000)):
    """Convert without learning and hand the CNF to the solver once."""
    clauses, vmap = anf_to_cnf(system, conv)
    outcome = solve(clauses, budget, num_vars=vmap.num_vars)
    model = None
    if outcome.status == SAT:
        model = [int(outcome.model[v]) for v in range(system.num_vars)]
    return outcome.status, model


def run_instance(inst: Instance, cfg: PipelineConfig) -> tuple[dict, dict, PipelineResult]:
    system = inst.document.to_system()
    base = dict(kind=inst.spec.kind, seed=inst.spec.seed, width=inst.spec.width, rounds=inst.spec.rounds,
                pairs=inst.spec.pairs, num_vars=inst.document.num_vars, num_polys=len(inst.document.polys))

    t = time.monotonic()
    status, model = baseline_solve(system, cfg.conv, ConflictBudget(cfg.budget.cap, 0, cfg.budget.cap))
    without = dict(base, mode="without", status=status,
                   verified=model is not None and check_instance_model(inst, model),
                   iterations=0, facts=0, facts_xl=0, facts_elimlin=0, facts_sat=0,
                   seconds=round(time.monotonic() - t, 4))

    t = time.monotonic()
    res = run(system, cfg)
    with_ = dict(base, mode="with", status=res.status,
                 verified=res.model is not None and check_instance_model(inst, res.model),
                 iterations=res.iterations, facts=len(res.facts),
                 facts_xl=len(res.facts_by_phase("xl", True)),
                 facts_elimlin=len(res.facts_by_phase("elimlin", True)),
                 facts_sat=len(res.facts_by_phase("sat", True)),
                 seconds=round(time.monotonic() - t, 4))
    return without, with_, res


def run_benchmark(specs: Sequence[BenchSpec], cfg: PipelineConfig, csv_path: str | Path | None = None) -> list[dict]:
    rows: list[dict] = []
    for spec in specs:
        without, with_, _ = run_instance(generate_instance(spec), cfg)
        rows += [without, with_]
    if csv_path is not None:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
            writer.writeheader()
            writer.writerows(rows)
    return rows


def main(argv: Sequence[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="anfbridge-bench", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--kind", choices=[RANDOM_PLANTED, TOY_FEISTEL], default=TOY_FEISTEL)
        p.add_argument("--vars", type=int, default=8)
        p.add_argument("--polys", type=int, default=12)
        p.add_argument("--degree", type=int, default=2)
        p.add_argument("--width", type=int, default=8)
        p.add_argument("--rounds", type=int, default=2)
        p.add_argument("--pairs", type=int, default=1)

    g = sub.add_parser("generate", help="write one instance in ANF format")
    common(g)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", default="-")

    r = sub.add_parser("run", help="compare with/without learning over seeds, write CSV")
    common(r)
    r.add_argument("--seeds", type=int, default=10)
    r.add_argument("--first-seed", type=int, default=0)
    r.add_argument("--csv", default="bench.csv")
    r.add_argument("--max-time", type=float, default=None)

    args = ap.parse_args(argv)

    def spec(seed):
        return BenchSpec(args.kind, seed, args.vars, args.polys, args.degree, 6,
                         args.width, args.rounds, args.pairs)

    try:
        if args.cmd == "generate":
            text = generate(spec(args.seed)).render()
            if args.output == "-":
                sys.stdout.write(text)
            else:
                Path(args.output).write_text(text)
            return 0
        specs = [spec(s) for s in range(args.first_seed, args.first_seed + args.seeds)]
        rows = run_benchmark(specs, PipelineConfig(max_time=args.max_time), args.csv)
    except (ValueError, OSError) as exc:
        print(f"anfbridge-bench: error: {exc}", file=sys.stderr)
        return 2
    solved = {m: sum(1 for x in rows if x["mode"] == m and x["verified"]) for m in ("without", "with")}
    print(f"{len(specs)} instances; verified without={solved['without']} with={solved['with']}; csv={args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
