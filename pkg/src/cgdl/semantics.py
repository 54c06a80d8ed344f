"""Models, program interpretation over fuzzy multirelations, and graded
satisfaction.

Satisfaction maps a state and a formula to a lattice value.  And/or/
implies/iff go to meet/join/residuum and the seq of the two residua;
constants go to top/bottom; a proposition reads the valuation.

The diamond clause ships in two modes, differing in how the target states
of one execution are aggregated:

* ``definition``: join over pairs (w, phi) of the program of the seq
  product over u in support(phi) of seq(phi(u), value of the subformula
  at u) - one execution counts as much as its weakest branch allows.
* ``proof-form``: join over pairs of the join over u in support(phi) of
  seq(phi(u), value at u) - the aggregation used by equational
  derivations; one branch suffices.

Box has a single form: the product over pairs and branches of
residuum(phi(u), value at u).  Empty quantification follows the fold
units: an empty join is bottom, an empty product is top.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import StarNonConvergenceError, UndeclaredNameError
from .lattice import Lattice, fold
from .multirel import (
    SEQ_SUPPORT_GUARDED, FuzzyMultirelation, StarResult, mrel_identity,
    mrel_parallel, mrel_seq, mrel_star, mrel_union,
)
from .syntax import (
    And, Atomic, Box, Bot, Choice, Diamond, Formula, Iff, Implies, Or,
    Par, Program, Prop, Seq, Star, Top, render_formula,
)

__all__ = [
    "DIAMOND_DEFINITION", "DIAMOND_PROOF_FORM", "DIAMOND_MODES",
    "Signature", "CgdlModel", "Evaluator", "make_model",
    "SatResult", "TraceEntry", "interpret_program", "sat",
    "ValidityResult", "validity",
]

DIAMOND_DEFINITION = "definition"
DIAMOND_PROOF_FORM = "proof-form"
DIAMOND_MODES = (DIAMOND_DEFINITION, DIAMOND_PROOF_FORM)


@dataclass(frozen=True)
class Signature:
    propositions: tuple[str, ...]
    programs: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.propositions)) != len(self.propositions):
            raise ValueError("proposition names must be unique")
        if len(set(self.programs)) != len(self.programs):
            raise ValueError("program names must be unique")


@dataclass
class CgdlModel:
    """States, lattice, total valuation, and a fuzzy multirelation per
    atomic program.  Treated as immutable once built."""

    lattice: Lattice
    states: tuple[str, ...]
    signature: Signature
    valuation: dict     # (prop, state) -> value; missing entries read as zero
    programs: dict      # atomic program name -> FuzzyMultirelation

    def __post_init__(self):
        if not self.states:
            raise ValueError("a model needs at least one state")
        if len(set(self.states)) != len(self.states):
            raise ValueError("model states must be unique")
        for name in self.programs:
            if name not in self.signature.programs:
                raise ValueError(f"interpretation for undeclared program {name!r}")
        for name in self.signature.programs:
            rel = self.programs.get(name)
            if rel is None:
                self.programs[name] = FuzzyMultirelation(
                    self.lattice, self.states, frozenset())
            else:
                if rel.states != self.states:
                    raise ValueError(f"relation for {name!r} has the wrong ambient states")
                if rel.lattice != self.lattice:
                    raise ValueError(f"relation for {name!r} is over the wrong lattice")
        for (prop, state), value in self.valuation.items():
            if prop not in self.signature.propositions:
                raise ValueError(f"valuation mentions undeclared proposition {prop!r}")
            if state not in self.states:
                raise ValueError(f"valuation mentions unknown state {state!r}")
            if not self.lattice.contains(value):
                raise ValueError(f"valuation value {value!r} outside the carrier")

    def value_of(self, prop: str, state: str) -> int:
        if prop not in self.signature.propositions:
            raise UndeclaredNameError("proposition", prop)
        return self.valuation.get((prop, state), self.lattice.zero)


def make_model(lattice: Lattice, states, valuation: Mapping,
               programs: Mapping, propositions: Optional[Iterable[str]] = None,
               program_names: Optional[Iterable[str]] = None) -> CgdlModel:
    """Build a model, deriving the signature from the data when not given."""
    states = tuple(states)
    if propositions is None:
        propositions = sorted({prop for (prop, _state) in valuation})
    if program_names is None:
        program_names = sorted(programs)
    signature = Signature(tuple(propositions), tuple(program_names))
    return CgdlModel(lattice, states, signature, dict(valuation), dict(programs))


@dataclass(frozen=True)
class TraceEntry:
    formula: str
    state: str
    value: str


@dataclass(frozen=True)
class SatResult:
    value: int
    trace: Optional[tuple[TraceEntry, ...]] = None


class Evaluator:
    """Shared-cache evaluation context for one model and one mode choice.

    Values are memoised per (sub-formula, state) and interpretations per
    program, keyed structurally.  Sharing one evaluator across queries is
    purely a speed matter - results are identical to fresh evaluation.
    """

    def __init__(self, model: CgdlModel, seq_mode: str = SEQ_SUPPORT_GUARDED,
                 diamond_mode: str = DIAMOND_DEFINITION,
                 star_max_iterations: Optional[int] = None,
                 trace: bool = False):
        if diamond_mode not in DIAMOND_MODES:
            raise ValueError(f"unknown diamond mode {diamond_mode!r}")
        self.model = model
        self.seq_mode = seq_mode
        self.diamond_mode = diamond_mode
        self.star_max_iterations = star_max_iterations
        self._values: dict = {}
        self._programs: dict = {}
        self._trace: Optional[list] = [] if trace else None

    def interpret(self, program: Program) -> FuzzyMultirelation:
        # structural keys: caches survive the formula objects they came from
        hit = self._programs.get(program)
        if hit is None:
            hit = self._programs[program] = self._interpret(program)
        return hit

    def _interpret(self, program: Program) -> FuzzyMultirelation:
        model = self.model
        if isinstance(program, Atomic):
            if program.name not in model.signature.programs:
                raise UndeclaredNameError("program", program.name)
            return model.programs[program.name]
        if isinstance(program, Seq):
            return mrel_seq(self.interpret(program.left),
                            self.interpret(program.right), self.seq_mode)
        if isinstance(program, Par):
            return mrel_parallel(self.interpret(program.left),
                                 self.interpret(program.right))
        if isinstance(program, Choice):
            return mrel_union(self.interpret(program.left),
                              self.interpret(program.right))
        if isinstance(program, Star):
            result: StarResult = mrel_star(
                self.interpret(program.child), self.seq_mode,
                self.star_max_iterations)
            if not result.converged:
                raise StarNonConvergenceError(result.iterations)
            return result.relation
        raise TypeError(f"not a program: {program!r}")

    def value(self, state: str, formula: Formula) -> int:
        key = (formula, state)
        hit = self._values.get(key)
        if hit is not None:
            return hit
        lat = self.model.lattice
        if isinstance(formula, Top):
            v = lat.top
        elif isinstance(formula, Bot):
            v = lat.bottom
        elif isinstance(formula, Prop):
            v = self.model.value_of(formula.name, state)
        elif isinstance(formula, And):
            v = lat.meet(self.value(state, formula.left),
                         self.value(state, formula.right))
        elif isinstance(formula, Or):
            v = lat.join(self.value(state, formula.left),
                         self.value(state, formula.right))
        elif isinstance(formula, Implies):
            v = lat.residuum(self.value(state, formula.left),
                             self.value(state, formula.right))
        elif isinstance(formula, Iff):
            fwd = lat.residuum(self.value(state, formula.left),
                               self.value(state, formula.right))
            bwd = lat.residuum(self.value(state, formula.right),
                               self.value(state, formula.left))
            v = lat.seq(fwd, bwd)
        elif isinstance(formula, Diamond):
            v = self._diamond(state, formula)
        elif isinstance(formula, Box):
            v = self._box(state, formula)
        else:
            raise TypeError(f"not a formula: {formula!r}")
        self._values[key] = v
        if self._trace is not None:
            self._trace.append(TraceEntry(render_formula(formula), state,
                                          lat.value_str(v)))
        return v

    def _diamond(self, state: str, formula: Diamond) -> int:
        lat = self.model.lattice
        rel = self.interpret(formula.program)
        total = lat.zero
        for source, phi in rel.sorted_pairs():
            if source != state:
                continue
            if self.diamond_mode == DIAMOND_DEFINITION:
                score = lat.one
                for u, weight in phi.items:
                    score = lat.seq(score, lat.seq(weight, self.value(u, formula.child)))
            else:
                score = lat.zero
                for u, weight in phi.items:
                    score = lat.join(score, lat.seq(weight, self.value(u, formula.child)))
            total = lat.join(total, score)
        return total

    def _box(self, state: str, formula: Box) -> int:
        lat = self.model.lattice
        rel = self.interpret(formula.program)
        total = lat.one
        for source, phi in rel.sorted_pairs():
            if source != state:
                continue
            for u, weight in phi.items:
                total = lat.seq(total,
                                lat.residuum(weight, self.value(u, formula.child)))
        return total

    def trace_entries(self) -> tuple[TraceEntry, ...]:
        seen = set()
        entries = []
        for entry in self._trace or ():
            key = (entry.formula, entry.state)
            if key not in seen:
                seen.add(key)
                entries.append(entry)
        return tuple(entries)


def interpret_program(model: CgdlModel, program: Program,
                      seq_mode: str = SEQ_SUPPORT_GUARDED,
                      star_max_iterations: Optional[int] = None) -> FuzzyMultirelation:
    """Interpret a program in the model; star non-convergence raises."""
    return Evaluator(model, seq_mode=seq_mode,
                     star_max_iterations=star_max_iterations).interpret(program)


def sat(model: CgdlModel, state: str, formula: Formula,
        diamond_mode: str = DIAMOND_DEFINITION,
        seq_mode: str = SEQ_SUPPORT_GUARDED,
        star_max_iterations: Optional[int] = None,
        trace: bool = False) -> SatResult:
    """Graded satisfaction of a formula at one state."""
    if state not in model.states:
        raise ValueError(f"unknown state {state!r}")
    ev = Evaluator(model, seq_mode=seq_mode, diamond_mode=diamond_mode,
                   star_max_iterations=star_max_iterations, trace=trace)
    value = ev.value(state, formula)
    return SatResult(value, ev.trace_entries() if trace else None)


@dataclass(frozen=True)
class ValidityResult:
    values: tuple[tuple[str, int], ...]   # (state, value), in state order
    valid: bool                           # value == top at every state

    def value_at(self, state: str) -> int:
        for s, v in self.values:
            if s == state:
                return v
        raise KeyError(state)


def validity(model: CgdlModel, formula: Formula,
             diamond_mode: str = DIAMOND_DEFINITION,
             seq_mode: str = SEQ_SUPPORT_GUARDED,
             star_max_iterations: Optional[int] = None) -> ValidityResult:
    """Evaluate at every state; valid in this model iff always top."""
    ev = Evaluator(model, seq_mode=seq_mode, diamond_mode=diamond_mode,
                   star_max_iterations=star_max_iterations)
    values = tuple((w, ev.value(w, formula)) for w in model.states)
    top = model.lattice.top
    return ValidityResult(values, all(v == top for _, v in values))
