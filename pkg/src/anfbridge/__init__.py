"""Fact learning between GF(2) polynomial systems (ANF) and CNF.

XL, ElimLin and a conflict-bounded CDCL solver each learn linear or
``m + 1`` facts that are fed back into a propagated master system.
"""

from .anf import AnfSystem, LearntFact, Monomial, Polynomial, VarState, normalize
from .convert import ConvParams, MonomialVarMap, anf_to_cnf, cnf_to_anf, karnaugh_minimize, xor_to_clauses
from .elimlin import SubstitutionRecord, elimlin
from .formats import AnfDocument, ParseError, parse_anf, parse_dimacs, write_anf, write_dimacs, write_map
from .gf2 import BitMatrix, gauss_jordan
from .pipeline import PipelineConfig, PipelineResult, reconstruct_model, run
from .sat import ConflictBudget, SolveOutcome, extract_sat_facts, solve
from .xl import LinearizationMap, XlParams, extract_facts, linearize, xl, xl_expand

__version__ = "0.1.0"

__all__ = [
    "AnfDocument", "AnfSystem", "BitMatrix", "ConflictBudget", "ConvParams", "LearntFact",
    "LinearizationMap", "Monomial", "MonomialVarMap", "ParseError", "PipelineConfig",
    "PipelineResult", "Polynomial", "SolveOutcome", "SubstitutionRecord", "VarState", "XlParams",
    "anf_to_cnf", "cnf_to_anf", "elimlin", "extract_facts", "extract_sat_facts", "gauss_jordan",
    "karnaugh_minimize", "linearize", "normalize", "parse_anf", "parse_dimacs", "reconstruct_model",
    "run", "solve", "write_anf", "write_dimacs", "write_map", "xl", "xl_expand", "xor_to_clauses",
]
