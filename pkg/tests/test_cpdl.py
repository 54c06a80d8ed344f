"""Self-checks for the classical two-valued evaluator (it serves as the
degeneracy oracle, so its own behaviour is pinned by hand-worked cases)."""

import pytest

from cgdl.cpdl import ClassicalModel, classical_interpret, classical_sat
from cgdl.errors import UndeclaredNameError
from cgdl.syntax import parse_formula, parse_program


def model(states, programs, truths):
    return ClassicalModel(
        states=tuple(states),
        propositions=("p", "q"),
        truths={k: frozenset(v) for k, v in truths.items()},
        programs={k: frozenset((s, frozenset(t)) for s, t in v)
                  for k, v in programs.items()},
    )


BASE = model(
    ("w1", "w2", "w3"),
    {"a": [("w1", {"w2"})], "b": [("w2", {"w3"}), ("w2", {"w1"})]},
    {"p": {"w2"}, "q": {"w3"}},
)


class TestProgramOps:
    def test_choice_is_union(self):
        rel = classical_interpret(BASE, parse_program("a + b"))
        assert rel == BASE.programs["a"] | BASE.programs["b"]

    def test_seq_glues_choice_functions(self):
        rel = classical_interpret(BASE, parse_program("a ; b"))
        assert rel == frozenset({("w1", frozenset({"w3"})),
                                 ("w1", frozenset({"w1"}))})

    def test_parallel_unions_target_sets(self):
        m = model(("w1", "w2", "w3"),
                  {"a": [("w1", {"w2"})], "b": [("w1", {"w3"})]},
                  {"p": set(), "q": set()})
        rel = classical_interpret(m, parse_program("a & b"))
        assert rel == frozenset({("w1", frozenset({"w2", "w3"}))})

    def test_star_accumulates_powers(self):
        rel = classical_interpret(BASE, parse_program("a*"))
        assert ("w1", frozenset({"w1"})) in rel       # diagonal
        assert ("w1", frozenset({"w2"})) in rel       # one step
        assert ("w3", frozenset({"w3"})) in rel


class TestSat:
    def test_constants_and_props(self):
        assert classical_sat(BASE, "w1", parse_formula("true"))
        assert not classical_sat(BASE, "w1", parse_formula("false"))
        assert classical_sat(BASE, "w2", parse_formula("p"))
        assert not classical_sat(BASE, "w1", parse_formula("p"))

    def test_diamond_requires_all_targets(self):
        """One execution of b from w2 lands in {w3} (all satisfy q), the
        other in {w1} (does not); the diamond needs just one good one."""
        assert classical_sat(BASE, "w2", parse_formula("<b>q"))
        assert not classical_sat(BASE, "w2", parse_formula("<b>p"))

    def test_box_requires_every_execution(self):
        assert not classical_sat(BASE, "w2", parse_formula("[b]q"))
        assert classical_sat(BASE, "w1", parse_formula("[a]p"))

    def test_box_vacuous_on_no_executions(self):
        assert classical_sat(BASE, "w3", parse_formula("[a]p"))

    def test_connectives(self):
        assert classical_sat(BASE, "w2", parse_formula("p & (q -> false)"))
        assert classical_sat(BASE, "w2", parse_formula("p <-> p"))
        assert classical_sat(BASE, "w1", parse_formula("p -> q"))

    def test_undeclared_names(self):
        with pytest.raises(UndeclaredNameError):
            classical_sat(BASE, "w1", parse_formula("zz"))
        with pytest.raises(UndeclaredNameError):
            classical_sat(BASE, "w1", parse_formula("<zz>p"))
