"""Command-line front end.

Exit codes follow the SAT-competition convention: 10 satisfiable,
20 unsatisfiable, 0 fixed point / unknown, 1 usage or I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from .anf import AnfSystem
from .convert import ConvParams, anf_to_cnf, cnf_to_anf
from .formats import ParseError, parse_anf, parse_dimacs, write_anf, write_dimacs, write_map, write_solution
from .pipeline import FIXPOINT, PipelineConfig, run
from .sat import ConflictBudget
from .xl import XlParams

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_OTHER = 0
EXIT_ERROR = 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="anfbridge",
                                 description="Learn facts on an ANF (or CNF) with XL, ElimLin and CDCL.")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--anf", metavar="FILE", help="input polynomial system")
    src.add_argument("--cnf", metavar="FILE", help="input DIMACS CNF (preprocessor mode)")
    ap.add_argument("--out-anf", metavar="FILE")
    ap.add_argument("--out-cnf", metavar="FILE")
    ap.add_argument("--out-map", metavar="FILE")
    ap.add_argument("--out-solution", metavar="FILE")
    ap.add_argument("--xl-deg", type=int, default=1, metavar="D")
    ap.add_argument("--karn", type=int, default=8, metavar="K")
    ap.add_argument("--xor-cut", type=int, default=5, metavar="L")
    ap.add_argument("--clause-cut", type=int, default=5, metavar="Lp")
    ap.add_argument("--confl-budget", type=int, default=10_000, metavar="C",
                    help="starting conflict budget (raised by 10000 up to 100000)")
    ap.add_argument("--sample-m", type=int, default=30, metavar="M")
    ap.add_argument("--sample-dm", type=int, default=4, metavar="dM")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-time", type=float, default=None, metavar="SECONDS")
    ap.add_argument("--stop-on-sat", action="store_true")
    ap.add_argument("--no-learn", action="store_true", help="only convert, learn nothing")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _write(path: str | None, text: str) -> None:
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        conv = ConvParams(args.karn, args.xor_cut, args.clause_cut)
        xlp = XlParams(args.xl_deg, args.sample_m, args.sample_dm, args.seed)
        cap = max(100_000, args.confl_budget)
        budget = ConflictBudget(args.confl_budget, 10_000, cap)
    except ValueError as exc:
        ap.error(str(exc))

    outputs = [p for p in (args.out_anf, args.out_cnf, args.out_map, args.out_solution) if p not in (None, "-")]
    inputs = [Path(p).resolve() for p in (args.anf, args.cnf) if p]
    if any(Path(p).resolve() in inputs for p in outputs):
        ap.error("an output file would overwrite the input")
    if len(set(Path(p).resolve() for p in outputs)) != len(outputs):
        ap.error("two outputs point at the same file")

    try:
        if args.anf:
            system = parse_anf(Path(args.anf).read_text())
            n_orig = system.num_vars
        else:
            clauses, (nv, _) = parse_dimacs(Path(args.cnf).read_text(), return_header=True)
            system = cnf_to_anf(clauses, conv, nv)
            n_orig = nv
    except (OSError, ParseError, ValueError) as exc:
        print(f"anfbridge: error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if args.no_learn:
        status = FIXPOINT
        clauses, vmap = anf_to_cnf(system, conv)
        processed: AnfSystem = system
        model = None
    else:
        cfg = PipelineConfig(xlp, conv, budget, args.max_time, args.stop_on_sat)
        res = run(system, cfg)
        status, processed, clauses, vmap, model = res.status, res.system, res.clauses, res.var_map, res.model
        if args.verbose:
            for rec in res.trace:
                print(f"c iter {rec.iteration} {rec.phase}: {len(rec.facts)} facts, {len(rec.new)} new",
                      file=sys.stderr)

    try:
        _write(args.out_anf, write_anf(processed))
        _write(args.out_cnf, write_dimacs(clauses, vmap.num_vars))
        _write(args.out_map, write_map(vmap))
        _write(args.out_solution, write_solution(status, model[:n_orig] if model else None))
    except OSError as exc:
        print(f"anfbridge: error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    print(f"s {'SATISFIABLE' if status == 'SAT' else 'UNSATISFIABLE' if status == 'UNSAT' else 'UNKNOWN'}")
    return {"SAT": EXIT_SAT, "UNSAT": EXIT_UNSAT}.get(status, EXIT_OTHER)


if __name__ == "__main__":
    sys.exit(main())
