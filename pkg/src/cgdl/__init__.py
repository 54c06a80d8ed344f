"""Lattice-parametric model checking and axiom search for multi-valued
concurrent dynamic logic."""

from .errors import ModelFormatError, StarNonConvergenceError, UndeclaredNameError
from .lattice import (
    AuditReport, LatticeError, audit_axioms, boolean, eval_op, fold,
    godel_chain, lattice_from_cli_spec, lattice_from_spec, leq,
    lukasiewicz_chain,
)
from .multirel import (
    SEQ_LITERAL, SEQ_SUPPORT_GUARDED, BinaryMultirelation, ComparisonReport,
    FuzzyMultirelation, FuzzySet, bin_parikh_seq, bin_peleg_seq,
    compare_seq, embed_boolean, fs_union, fuzzy_set, mrel_identity,
    mrel_parallel, mrel_seq, mrel_star, mrel_union, multirelation,
    strip_weights,
)
from .matrices import (
    GdlModel, LatticeMatrix, gdl_interpret, gdl_sat, mat_add, mat_identity,
    mat_mul, mat_star, mat_zero, matrix,
)
from .syntax import (
    ParseError, parse_formula, parse_program, render_formula, render_program,
)
from .semantics import (
    DIAMOND_DEFINITION, DIAMOND_PROOF_FORM, CgdlModel, Signature,
    interpret_program, make_model, sat, validity,
)
from .axioms import (
    CATALOGUE, SearchConfig, SearchReport, Verdict, check_axiom,
    lattice_property_check, replay_verdict, search_counterexamples,
)
from .modelio import load_model_file, model_from_dict, model_to_dict

__version__ = "0.1.0"
