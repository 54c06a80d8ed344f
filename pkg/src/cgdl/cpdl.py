"""Directly coded two-valued evaluator over classical binary multirelations.

This is an independent implementation kept deliberately free of the lattice
machinery: programs denote sets of (state, target set) pairs combined with
plain set operations, and satisfaction is a bool.  It exists to check that
the graded semantics over the two-element lattice collapses to exactly
this classical behaviour.

Program operators: choice is set union; parallel composition unions the
target sets of pairs sharing a source; sequential composition is the
choice-function (Peleg) composition; star accumulates powers from the
diagonal until no new pair appears.

Satisfaction: diamond holds at w when some pair (w, A) of the program has
every state of A satisfying the subformula; box when every pair does.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import StarNonConvergenceError, UndeclaredNameError
from .syntax import (
    And, Atomic, Box, Bot, Choice, Diamond, Formula, Iff, Implies, Or,
    Par, Program, Prop, Seq, Star, Top,
)

__all__ = ["ClassicalModel", "classical_interpret", "classical_sat"]

Rel = frozenset  # of (state, frozenset-of-states) pairs


@dataclass
class ClassicalModel:
    states: tuple[str, ...]
    propositions: tuple[str, ...]
    truths: dict          # prop name -> frozenset of states where it holds
    programs: dict        # program name -> Rel

    def holds(self, prop: str, state: str) -> bool:
        if prop not in self.propositions:
            raise UndeclaredNameError("proposition", prop)
        return state in self.truths.get(prop, frozenset())


def _peleg(R: Rel, S: Rel) -> Rel:
    by_source = {}
    for source, targets in S:
        by_source.setdefault(source, []).append(targets)
    out = set()
    for source, intermediate in R:
        if not intermediate:
            out.add((source, frozenset()))
            continue
        options = [by_source.get(b) for b in sorted(intermediate)]
        if any(opt is None for opt in options):
            continue
        for combo in itertools.product(*options):
            out.add((source, frozenset(itertools.chain.from_iterable(combo))))
    return frozenset(out)


def _parallel(R: Rel, S: Rel) -> Rel:
    return frozenset(
        (a, A | B) for a, A in R for b, B in S if a == b
    )


def _star(R: Rel, states: tuple[str, ...]) -> Rel:
    # same power schedule and stop rule as the graded closure, so the two
    # routes converge (or refuse) on exactly the same inputs
    max_iterations = len(states) ** 2 + 2
    diagonal = frozenset((w, frozenset((w,))) for w in states)
    acc = diagonal | R
    if not R or R <= diagonal:
        return acc
    power = R
    iterations = 1
    while iterations < max_iterations:
        power = _peleg(power, R)
        iterations += 1
        if power <= acc:
            return acc
        acc = acc | power
    raise StarNonConvergenceError(max_iterations)


def classical_interpret(model: ClassicalModel, program: Program) -> Rel:
    if isinstance(program, Atomic):
        try:
            return model.programs[program.name]
        except KeyError:
            raise UndeclaredNameError("program", program.name) from None
    if isinstance(program, Choice):
        return classical_interpret(model, program.left) | classical_interpret(model, program.right)
    if isinstance(program, Par):
        return _parallel(classical_interpret(model, program.left),
                         classical_interpret(model, program.right))
    if isinstance(program, Seq):
        return _peleg(classical_interpret(model, program.left),
                      classical_interpret(model, program.right))
    if isinstance(program, Star):
        return _star(classical_interpret(model, program.child), model.states)
    raise TypeError(f"not a program: {program!r}")


def classical_sat(model: ClassicalModel, state: str, formula: Formula) -> bool:
    if isinstance(formula, Top):
        return True
    if isinstance(formula, Bot):
        return False
    if isinstance(formula, Prop):
        return model.holds(formula.name, state)
    if isinstance(formula, And):
        return classical_sat(model, state, formula.left) and \
            classical_sat(model, state, formula.right)
    if isinstance(formula, Or):
        return classical_sat(model, state, formula.left) or \
            classical_sat(model, state, formula.right)
    if isinstance(formula, Implies):
        return (not classical_sat(model, state, formula.left)) or \
            classical_sat(model, state, formula.right)
    if isinstance(formula, Iff):
        return classical_sat(model, state, formula.left) == \
            classical_sat(model, state, formula.right)
    if isinstance(formula, Diamond):
        rel = classical_interpret(model, formula.program)
        return any(
            source == state and all(classical_sat(model, u, formula.child) for u in targets)
            for source, targets in rel
        )
    if isinstance(formula, Box):
        rel = classical_interpret(model, formula.program)
        return all(
            all(classical_sat(model, u, formula.child) for u in targets)
            for source, targets in rel
            if source == state
        )
    raise TypeError(f"not a formula: {formula!r}")
