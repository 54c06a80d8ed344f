"""Graded satisfaction: hand-worked values, mode behaviour, and the
degeneracy / monotonicity properties."""

from random import Random

import pytest

from cgdl.cpdl import ClassicalModel, classical_sat
from cgdl.errors import StarNonConvergenceError, UndeclaredNameError
from cgdl.lattice import boolean, godel_chain
from cgdl.multirel import multirelation, random_fuzzy_multirelation
from cgdl.semantics import (
    DIAMOND_DEFINITION, DIAMOND_PROOF_FORM, Evaluator, interpret_program,
    make_model, sat, validity,
)
from cgdl.syntax import parse_formula, parse_program

G3 = godel_chain(3)
BOOL = boolean()


def weighted_model():
    """One program pair from w1 reaching w1 at 1/2 and w2 at 1;
    p graded 1/2 at w1 and 1 at w2."""
    states = ("w1", "w2")
    rel = multirelation(G3, states, [("w1", {"w1": 1, "w2": 2})])
    return make_model(G3, states, {("p", "w1"): 1, ("p", "w2"): 2},
                      {"pi": rel})


class TestSatClauses:
    def test_constants(self):
        model = weighted_model()
        assert sat(model, "w1", parse_formula("true")).value == G3.top
        assert sat(model, "w1", parse_formula("false")).value == G3.bottom

    def test_or_bot_is_identity(self):
        model = weighted_model()
        assert sat(model, "w1", parse_formula("p | false")).value == \
            sat(model, "w1", parse_formula("p")).value

    def test_diamond_definition_mode_hand_value(self):
        """min(min(1/2, 1/2), min(1, 1)) = 1/2."""
        model = weighted_model()
        assert sat(model, "w1", parse_formula("<pi>p")).value == 1

    def test_diamond_proof_form_hand_value(self):
        """max(min(1/2, 1/2), min(1, 1)) = 1."""
        model = weighted_model()
        result = sat(model, "w1", parse_formula("<pi>p"),
                     diamond_mode=DIAMOND_PROOF_FORM)
        assert result.value == 2

    def test_box_hand_value(self):
        """min(1/2 -> 1/2, 1 -> 1) = top."""
        model = weighted_model()
        assert sat(model, "w1", parse_formula("[pi]p")).value == G3.top

    def test_empty_quantification_conventions(self):
        """No executions: the diamond is the empty join (bottom), the box
        the empty product (top)."""
        model = weighted_model()
        assert sat(model, "w2", parse_formula("<pi>p")).value == G3.bottom
        assert sat(model, "w2", parse_formula("[pi]p")).value == G3.top

    def test_iff_clause_is_product_of_residua(self):
        model = weighted_model()
        v = sat(model, "w1", parse_formula("p <-> true")).value
        assert v == 1   # (1/2 -> 1) ; (1 -> 1/2) = min(1, 1/2)

    def test_unknown_prop_and_program(self):
        model = weighted_model()
        with pytest.raises(UndeclaredNameError):
            sat(model, "w1", parse_formula("zz"))
        with pytest.raises(UndeclaredNameError):
            sat(model, "w1", parse_formula("<zz>p"))

    def test_unknown_state(self):
        with pytest.raises(ValueError):
            sat(weighted_model(), "w9", parse_formula("p"))

    def test_trace_lists_subformulas(self):
        model = weighted_model()
        result = sat(model, "w1", parse_formula("<pi>p & p"), trace=True)
        rendered = {(t.formula, t.state): t.value for t in result.trace}
        assert rendered[("p", "w1")] == "1/2"
        assert rendered[("p", "w2")] == "1"
        assert rendered[("<pi>p & p", "w1")] == "1/2"


class TestInterpretProgram:
    def test_atomic_verbatim(self):
        model = weighted_model()
        assert interpret_program(model, parse_program("pi")).pairs == \
            model.programs["pi"].pairs

    def test_choice_is_union(self):
        states = ("w1", "w2")
        ra = multirelation(BOOL, states, [("w1", {"w2": 1})])
        rb = multirelation(BOOL, states, [("w2", {"w1": 1})])
        model = make_model(BOOL, states, {}, {"a": ra, "b": rb},
                           propositions=("p",))
        assert interpret_program(model, parse_program("a + b")).pairs == \
            ra.pairs | rb.pairs

    def test_boolean_seq_matches_relational_composition(self):
        states = ("w1", "w2", "w3")
        ra = multirelation(BOOL, states, [("w1", {"w2": 1})])
        rb = multirelation(BOOL, states, [("w2", {"w3": 1})])
        model = make_model(BOOL, states, {}, {"a": ra, "b": rb},
                           propositions=("p",))
        got = interpret_program(model, parse_program("a ; b"))
        expected = multirelation(BOOL, states, [("w1", {"w3": 1})])
        assert got.pairs == expected.pairs

    def test_star_divergence_raises(self):
        states = ("w1", "w2", "w3")
        ra = multirelation(BOOL, states,
                           [("w1", {"w2": 1}), ("w2", {"w3": 1})])
        model = make_model(BOOL, states, {}, {"a": ra}, propositions=("p",))
        with pytest.raises(StarNonConvergenceError):
            interpret_program(model, parse_program("a*"),
                              star_max_iterations=1)


class TestValidity:
    def test_top_always_valid(self):
        assert validity(weighted_model(), parse_formula("true")).valid

    def test_bot_never_valid(self):
        assert not validity(weighted_model(), parse_formula("false")).valid

    def test_diamond_bot_collapse_on_random_models(self):
        """<pi>false <-> false comes out top everywhere, any lattice."""
        rng = Random(55)
        states = ("s0", "s1")
        f = parse_formula("<a>false <-> false")
        for _ in range(150):
            rel = random_fuzzy_multirelation(rng, G3, states)
            model = make_model(G3, states, {}, {"a": rel}, propositions=("p",))
            for dmode in (DIAMOND_DEFINITION, DIAMOND_PROOF_FORM):
                assert validity(model, f, diamond_mode=dmode).valid


class TestOrderReflection:
    def test_implication_reflects_order_small_enumeration(self):
        """(w |= r -> r') is top exactly when value(r) <= value(r'),
        checked over every valuation pair on a Gödel-3 singleton model."""
        states = ("w",)
        fr, fr2 = parse_formula("p"), parse_formula("q")
        arrow = parse_formula("p -> q")
        iff = parse_formula("p <-> q")
        for vp in G3.carrier:
            for vq in G3.carrier:
                model = make_model(
                    G3, states, {("p", "w"): vp, ("q", "w"): vq}, {},
                    propositions=("p", "q"), program_names=())
                ev = Evaluator(model)
                holds = ev.value("w", arrow) == G3.top
                assert holds == G3.leq(vp, vq)
                equal = ev.value("w", iff) == G3.top
                assert equal == (vp == vq)


class TestBooleanDegeneracy:
    def test_spot_check_against_classical_evaluator(self):
        rng = Random(303)
        corpus = [parse_formula(t) for t in (
            "p", "p -> q", "<a>p", "[a]q", "<a ; b>p", "<a & b>(p | q)",
            "[a + b]p", "<a*>q", "[b*](p & q)", "<a>(p <-> q)",
        )]
        for _ in range(200):
            states = tuple(f"s{i}" for i in range(rng.randint(1, 3)))
            programs = {
                name: random_fuzzy_multirelation(rng, BOOL, states,
                                                 max_support=2, max_pairs=3)
                for name in ("a", "b")
            }
            valuation = {}
            for prop in ("p", "q"):
                for s in states:
                    if rng.random() < 0.5:
                        valuation[(prop, s)] = 1
            model = make_model(BOOL, states, valuation, programs,
                               propositions=("p", "q"))
            oracle = ClassicalModel(
                states=states,
                propositions=("p", "q"),
                truths={prop: frozenset(s for s in states
                                        if valuation.get((prop, s)) == 1)
                        for prop in ("p", "q")},
                programs={
                    name: frozenset((src, frozenset(phi.support))
                                    for src, phi in rel.pairs)
                    for name, rel in programs.items()
                },
            )
            ev = Evaluator(model)
            for f in corpus:
                for w in states:
                    assert (ev.value(w, f) == BOOL.top) == \
                        classical_sat(oracle, w, f), (f, w)


class TestDiamondMonotonicity:
    def test_larger_interpretation_gives_larger_diamond(self):
        """Adding pairs to a program cannot shrink the diamond value, in
        either diamond mode."""
        rng = Random(606)
        states = ("s0", "s1", "s2")
        f = parse_formula("<a>p")
        for _ in range(200):
            small = random_fuzzy_multirelation(rng, G3, states,
                                               max_support=2, max_pairs=2)
            extra = random_fuzzy_multirelation(rng, G3, states,
                                               max_support=2, max_pairs=2)
            big = multirelation(G3, states, [])
            big = type(big)(G3, states, small.pairs | extra.pairs)
            valuation = {("p", s): rng.choice(G3.carrier) for s in states}
            m_small = make_model(G3, states, valuation, {"a": small})
            m_big = make_model(G3, states, valuation, {"a": big})
            for dmode in (DIAMOND_DEFINITION, DIAMOND_PROOF_FORM):
                for w in states:
                    lo = sat(m_small, w, f, diamond_mode=dmode).value
                    hi = sat(m_big, w, f, diamond_mode=dmode).value
                    assert G3.leq(lo, hi)
