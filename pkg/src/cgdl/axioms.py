"""Axiom schemes as checkable objects, plus finite-model counterexample
search.

The catalogue covers the distribution laws for diamond and box over the
program operators (ids 2.1 - 2.7), and the two order-reflection
properties of implication and equivalence (ids L1.1, L1.2):

    2.1  <pi0>(r | r') <-> <pi0>r | <pi0>r'     (pi0 atomic)
    2.2  <pi>(r & r')  ->  <pi>r & <pi>r'       (checked as <=)
    2.3  <pi + pi'>r  <->  <pi>r | <pi'>r
    2.4  <pi>false    <->  false
    2.5  <pi & pi'>r  <->  <pi>r & <pi'>r       (program parallel)
    2.6  [pi + pi']r  <->  [pi]r & [pi']r
    2.7  [pi](r & r') ->   [pi]r & [pi]r'       (checked as <=)
    L1.1 (w |= r -> r') is top  iff  value(r) <= value(r')
    L1.2 (w |= r <-> r') is top iff  value(r) == value(r')

Equivalence schemes compare the graded values of the two sides for
equality at every state; implication schemes compare them by the lattice
order.  Every failing verdict carries the full model, binding and modes,
so it can be replayed bit-exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from random import Random
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ModelFormatError
from .lattice import (
    Lattice, fold, iterated_law_violation, lattice_from_spec,
)
from .modelio import model_from_dict, model_to_dict
from .multirel import (
    SEQ_MODES, SEQ_SUPPORT_GUARDED, FuzzySet, FuzzyMultirelation,
    random_fuzzy_multirelation,
)
from .semantics import (
    DIAMOND_MODES, CgdlModel, Evaluator, Signature,
)
from .syntax import (
    And, Atomic, Box, Bot, Choice, Diamond, Formula, Iff, Implies, Or,
    Par, Program, Prop, Seq, Star, Top, render_formula, render_program,
)

__all__ = [
    "AxiomScheme", "CATALOGUE", "MalformedBindingError",
    "Verdict", "check_axiom", "replay_verdict",
    "SearchConfig", "SearchRow", "SearchReport", "search_counterexamples",
    "PropertyCheck", "PropertyReport", "lattice_property_check",
    "SCOPE_ALL", "SCOPE_SINGLETON",
]

SCOPE_ALL = "all-models"
SCOPE_SINGLETON = "singleton-support"


class MalformedBindingError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomScheme:
    """A schema over program metavariables (pi, pi2) and formula
    metavariables (rho, rho2), with the check the scheme demands."""

    id: str
    kind: str                     # "equiv" | "leq" | "meta-leq" | "meta-equiv"
    lhs: Formula
    rhs: Optional[Formula]
    program_vars: tuple[str, ...]
    formula_vars: tuple[str, ...]
    atomic_only: bool = False

    @property
    def surface(self) -> str:
        if self.kind == "equiv":
            return f"{render_formula(self.lhs)} <-> {render_formula(self.rhs)}"
        if self.kind == "leq":
            return f"{render_formula(self.lhs)} -> {render_formula(self.rhs)}"
        if self.kind == "meta-leq":
            return "(w |= rho -> rho2) = top  iff  (w |= rho) <= (w |= rho2)"
        return "(w |= rho <-> rho2) = top  iff  (w |= rho) = (w |= rho2)"


_PI, _PI2 = Atomic("pi"), Atomic("pi2")
_RHO, _RHO2 = Prop("rho"), Prop("rho2")

CATALOGUE: dict[str, AxiomScheme] = {
    scheme.id: scheme
    for scheme in (
        AxiomScheme("2.1", "equiv",
                    Diamond(_PI, Or(_RHO, _RHO2)),
                    Or(Diamond(_PI, _RHO), Diamond(_PI, _RHO2)),
                    ("pi",), ("rho", "rho2"), atomic_only=True),
        AxiomScheme("2.2", "leq",
                    Diamond(_PI, And(_RHO, _RHO2)),
                    And(Diamond(_PI, _RHO), Diamond(_PI, _RHO2)),
                    ("pi",), ("rho", "rho2")),
        AxiomScheme("2.3", "equiv",
                    Diamond(Choice(_PI, _PI2), _RHO),
                    Or(Diamond(_PI, _RHO), Diamond(_PI2, _RHO)),
                    ("pi", "pi2"), ("rho",)),
        AxiomScheme("2.4", "equiv",
                    Diamond(_PI, Bot()), Bot(),
                    ("pi",), ()),
        AxiomScheme("2.5", "equiv",
                    Diamond(Par(_PI, _PI2), _RHO),
                    And(Diamond(_PI, _RHO), Diamond(_PI2, _RHO)),
                    ("pi", "pi2"), ("rho",)),
        AxiomScheme("2.6", "equiv",
                    Box(Choice(_PI, _PI2), _RHO),
                    And(Box(_PI, _RHO), Box(_PI2, _RHO)),
                    ("pi", "pi2"), ("rho",)),
        AxiomScheme("2.7", "leq",
                    Box(_PI, And(_RHO, _RHO2)),
                    And(Box(_PI, _RHO), Box(_PI, _RHO2)),
                    ("pi",), ("rho", "rho2")),
        AxiomScheme("L1.1", "meta-leq",
                    Implies(_RHO, _RHO2), None,
                    (), ("rho", "rho2")),
        AxiomScheme("L1.2", "meta-equiv",
                    Iff(_RHO, _RHO2), None,
                    (), ("rho", "rho2")),
    )
}

DEFAULT_AXIOMS = ("2.1", "2.2", "2.3", "2.4", "2.5", "2.6", "2.7")


def _subst_program(node: Program, progs: Mapping[str, Program]) -> Program:
    if isinstance(node, Atomic):
        return progs.get(node.name, node)
    if isinstance(node, Star):
        return Star(_subst_program(node.child, progs))
    return type(node)(_subst_program(node.left, progs),
                      _subst_program(node.right, progs))


def _subst_formula(node: Formula, progs: Mapping[str, Program],
                   forms: Mapping[str, Formula]) -> Formula:
    if isinstance(node, Prop):
        return forms.get(node.name, node)
    if isinstance(node, (Top, Bot)):
        return node
    if isinstance(node, (Diamond, Box)):
        return type(node)(_subst_program(node.program, progs),
                          _subst_formula(node.child, progs, forms))
    return type(node)(_subst_formula(node.left, progs, forms),
                      _subst_formula(node.right, progs, forms))


def instantiate(scheme: AxiomScheme, binding: Mapping) -> tuple[Formula, Optional[Formula]]:
    """Substitute the binding into the scheme's sides."""
    progs = {}
    forms = {}
    for var in scheme.program_vars:
        if var not in binding:
            raise MalformedBindingError(f"binding is missing program variable {var!r}")
        progs[var] = binding[var]
    for var in scheme.formula_vars:
        if var not in binding:
            raise MalformedBindingError(f"binding is missing formula variable {var!r}")
        forms[var] = binding[var]
    if scheme.atomic_only:
        for var in scheme.program_vars:
            if not isinstance(binding[var], Atomic):
                raise MalformedBindingError(
                    f"axiom {scheme.id} requires an atomic program for {var!r}")
    lhs = _subst_formula(scheme.lhs, progs, forms)
    rhs = _subst_formula(scheme.rhs, progs, forms) if scheme.rhs is not None else None
    return lhs, rhs


def render_binding(scheme: AxiomScheme, binding: Mapping) -> tuple[tuple[str, str], ...]:
    rendered = []
    for var in scheme.program_vars:
        rendered.append((var, render_program(binding[var])))
    for var in scheme.formula_vars:
        rendered.append((var, render_formula(binding[var])))
    return tuple(rendered)


@dataclass(frozen=True)
class Verdict:
    """Outcome of one axiom check on one model, complete enough to replay."""

    axiom_id: str
    scope: str
    seq_mode: str
    diamond_mode: str
    binding: tuple[tuple[str, str], ...]
    model: dict
    per_state: tuple[tuple[str, str, str, bool], ...]
    passed: bool
    witness_state: Optional[str]

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom_id,
            "scope": self.scope,
            "seq_mode": self.seq_mode,
            "diamond_mode": self.diamond_mode,
            "binding": {var: text for var, text in self.binding},
            "model": self.model,
            "per_state": [
                {"state": s, "lhs": l, "rhs": r, "ok": ok}
                for s, l, r, ok in self.per_state
            ],
            "passed": self.passed,
            "witness_state": self.witness_state,
        }


def _evaluate_states(evaluator: Evaluator, scheme: AxiomScheme,
                     lhs: Formula, rhs: Optional[Formula],
                     binding: Mapping) -> tuple[list, Optional[str]]:
    """Per-state raw outcome: (state, lhs value, rhs value or value pair,
    ok) rows plus the first failing state."""
    lat = evaluator.model.lattice
    rows = []
    witness = None
    for state in evaluator.model.states:
        if scheme.kind in ("equiv", "leq"):
            lv = evaluator.value(state, lhs)
            rv = evaluator.value(state, rhs)
            ok = lv == rv if scheme.kind == "equiv" else lat.leq(lv, rv)
            rows.append((state, lv, rv, ok))
        else:
            cv = evaluator.value(state, lhs)
            v1 = evaluator.value(state, binding["rho"])
            v2 = evaluator.value(state, binding["rho2"])
            holds = cv == lat.top
            related = lat.leq(v1, v2) if scheme.kind == "meta-leq" else v1 == v2
            ok = holds == related
            rows.append((state, cv, (v1, v2), ok))
        if not ok and witness is None:
            witness = state
    return rows, witness


def _render_rows(lat, scheme: AxiomScheme, rows) -> tuple:
    rendered = []
    for state, lv, rv, ok in rows:
        if scheme.kind in ("equiv", "leq"):
            rendered.append((state, lat.value_str(lv), lat.value_str(rv), ok))
        else:
            v1, v2 = rv
            rendered.append((state, lat.value_str(lv),
                             f"({lat.value_str(v1)}, {lat.value_str(v2)})", ok))
    return tuple(rendered)


def _check_with_evaluator(evaluator: Evaluator, scheme: AxiomScheme,
                          binding: Mapping, scope: str) -> Verdict:
    model = evaluator.model
    lhs, rhs = instantiate(scheme, binding)
    rows, witness = _evaluate_states(evaluator, scheme, lhs, rhs, binding)
    return Verdict(
        axiom_id=scheme.id,
        scope=scope,
        seq_mode=evaluator.seq_mode,
        diamond_mode=evaluator.diamond_mode,
        binding=render_binding(scheme, binding),
        model=model_to_dict(model),
        per_state=_render_rows(model.lattice, scheme, rows),
        passed=witness is None,
        witness_state=witness,
    )


def check_axiom(model: CgdlModel, axiom_id: str, binding: Mapping,
                seq_mode: str = SEQ_SUPPORT_GUARDED,
                diamond_mode: str = "definition",
                scope: str = SCOPE_ALL) -> Verdict:
    """Instantiate an axiom scheme and evaluate it over every state of the
    model; equivalences demand equal graded values, implications demand
    the lattice order."""
    scheme = CATALOGUE.get(axiom_id)
    if scheme is None:
        raise MalformedBindingError(f"unknown axiom id {axiom_id!r}")
    evaluator = Evaluator(model, seq_mode=seq_mode, diamond_mode=diamond_mode)
    return _check_with_evaluator(evaluator, scheme, binding, scope)


def _binding_from_rendered(scheme: AxiomScheme,
                           rendered: Mapping[str, str]) -> dict:
    from .syntax import parse_formula, parse_program
    binding = {}
    for var in scheme.program_vars:
        binding[var] = parse_program(rendered[var])
    for var in scheme.formula_vars:
        binding[var] = parse_formula(rendered[var])
    return binding


def replay_verdict(verdict_data: dict) -> Verdict:
    """Re-run a serialised verdict's check from its own model and binding."""
    scheme = CATALOGUE.get(verdict_data["axiom"])
    if scheme is None:
        raise MalformedBindingError(f"unknown axiom id {verdict_data['axiom']!r}")
    model = model_from_dict(verdict_data["model"])
    binding = _binding_from_rendered(scheme, verdict_data["binding"])
    return check_axiom(
        model, verdict_data["axiom"], binding,
        seq_mode=verdict_data["seq_mode"],
        diamond_mode=verdict_data["diamond_mode"],
        scope=verdict_data["scope"],
    )


# --- counterexample search --------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    """Bounds and budget for a finite-model search.

    Exhaustive budget: every model with |W| = 1 .. max_states, every
    combination of program relations (subsets of the (source, fuzzy set)
    pair universe, capped by max_pairs when set) and every valuation over
    the value grid.  Sampled budget: `samples` models drawn at
    |W| = max_states from per-index substreams of the seed, so results
    are independent of chunking and worker count.
    """

    lattice: Lattice
    max_states: int = 2
    num_programs: int = 2
    num_propositions: int = 2
    max_support: Optional[int] = None
    max_pairs: Optional[int] = None
    value_grid: Optional[tuple[int, ...]] = None
    axioms: tuple[str, ...] = DEFAULT_AXIOMS
    seq_modes: tuple[str, ...] = SEQ_MODES
    diamond_modes: tuple[str, ...] = DIAMOND_MODES
    exhaustive: bool = True
    samples: int = 0
    seed: int = 0
    jobs: int = 1
    max_witnesses: Optional[int] = None

    def __post_init__(self):
        if self.max_states < 1:
            raise ModelFormatError("max_states must be positive")
        if not 0 <= self.num_programs <= 8 or not 0 <= self.num_propositions <= 8:
            raise ModelFormatError("signature bounds must be between 0 and 8")
        if not self.exhaustive and self.samples < 1:
            raise ModelFormatError("sampled searches need a positive sample count")
        if self.jobs < 1:
            raise ModelFormatError("jobs must be positive")
        for ax in self.axioms:
            if ax not in CATALOGUE:
                raise ModelFormatError(f"unknown axiom id {ax!r}")
        for mode in self.seq_modes:
            if mode not in SEQ_MODES:
                raise ModelFormatError(f"unknown seq mode {mode!r}")
        for mode in self.diamond_modes:
            if mode not in DIAMOND_MODES:
                raise ModelFormatError(f"unknown diamond mode {mode!r}")

    def grid(self) -> tuple[int, ...]:
        return self.value_grid if self.value_grid is not None else self.lattice.carrier

    def program_names(self) -> tuple[str, ...]:
        return tuple("abcdefgh"[i] for i in range(self.num_programs))

    def prop_names(self) -> tuple[str, ...]:
        return tuple("pqrstuvw"[i] for i in range(self.num_propositions))

    def coverage(self) -> str:
        return "exhaustive" if self.exhaustive else "sampled"


def _canonical_binding(config: SearchConfig, scheme: AxiomScheme) -> Optional[dict]:
    """Fixed instantiation: metavariables bound to the first atomic
    programs / propositions.  The model enumeration ranges over every
    interpretation of those atoms, and satisfaction only sees a formula
    metavariable through its per-state values, so this loses no
    generality relative to binding enumeration."""
    programs = config.program_names()
    props = config.prop_names()
    binding = {}
    for i, var in enumerate(scheme.program_vars):
        if not programs:
            return None
        binding[var] = Atomic(programs[min(i, len(programs) - 1)])
    for i, var in enumerate(scheme.formula_vars):
        if not props:
            return None
        binding[var] = Prop(props[min(i, len(props) - 1)])
    return binding


@lru_cache(maxsize=32)
def _space(config: SearchConfig, n: int):
    """Deterministic enumeration universe for models with n states."""
    states = tuple(f"s{i}" for i in range(n))
    grid = config.grid()
    positive = tuple(v for v in grid if v != config.lattice.zero)
    max_support = config.max_support if config.max_support is not None else n
    fuzzy_sets = []
    for size in range(1, min(max_support, n) + 1):
        for support in itertools.combinations(states, size):
            for values in itertools.product(positive, repeat=size):
                fuzzy_sets.append(FuzzySet(tuple(zip(support, values))))
    pair_universe = tuple(
        (source, phi) for source in states for phi in fuzzy_sets
    )
    if config.max_pairs is None:
        relation_count = 2 ** len(pair_universe)
        relation_descriptors = None     # bitmask-decoded on demand
    else:
        relation_descriptors = [
            combo
            for size in range(0, config.max_pairs + 1)
            for combo in itertools.combinations(range(len(pair_universe)), size)
        ]
        relation_count = len(relation_descriptors)
    val_slots = tuple(
        (prop, state) for prop in config.prop_names() for state in states
    )
    valuations = list(itertools.product(grid, repeat=len(val_slots)))
    signature = Signature(config.prop_names(), config.program_names())
    return (states, pair_universe, relation_descriptors, relation_count,
            val_slots, valuations, signature)


@lru_cache(maxsize=65536)
def _relation_at(config: SearchConfig, n: int, index: int) -> FuzzyMultirelation:
    states, universe, descriptors, _c, _s, _v, _sig = _space(config, n)
    if descriptors is None:
        pairs = frozenset(
            universe[bit] for bit in range(len(universe)) if index >> bit & 1
        )
    else:
        pairs = frozenset(universe[i] for i in descriptors[index])
    return FuzzyMultirelation(config.lattice, states, pairs)


def _exhaustive_total(config: SearchConfig, n: int) -> int:
    space = _space(config, n)
    return space[3] ** config.num_programs * len(space[5])


def _model_at(config: SearchConfig, n: int, index: int) -> CgdlModel:
    (states, _u, _d, relation_count, val_slots, valuations,
     signature) = _space(config, n)
    index, val_index = divmod(index, len(valuations))
    rel_indices = []
    for _ in range(config.num_programs):
        index, rel_index = divmod(index, relation_count)
        rel_indices.append(rel_index)
    programs = {
        name: _relation_at(config, n, rel_index)
        for name, rel_index in zip(config.program_names(), rel_indices)
    }
    valuation = {
        slot: value
        for slot, value in zip(val_slots, valuations[val_index])
        if value != config.lattice.zero
    }
    return CgdlModel(config.lattice, states, signature, valuation, programs)


def _sampled_model(config: SearchConfig, index: int) -> CgdlModel:
    rng = Random(f"{config.seed}:{index}")
    n = config.max_states
    states = tuple(f"s{i}" for i in range(n))
    grid = config.grid()
    max_pairs = config.max_pairs if config.max_pairs is not None else 2 * n
    programs = {
        name: random_fuzzy_multirelation(
            rng, config.lattice, states,
            max_support=config.max_support, max_pairs=max_pairs)
        for name in config.program_names()
    }
    valuation = {}
    for prop in config.prop_names():
        for state in states:
            value = rng.choice(grid)
            if value != config.lattice.zero:
                valuation[(prop, state)] = value
    signature = Signature(config.prop_names(), config.program_names())
    return CgdlModel(config.lattice, states, signature, valuation, programs)


def _is_singleton_support(model: CgdlModel) -> bool:
    return all(
        len(phi.items) == 1
        for rel in model.programs.values()
        for _source, phi in rel.pairs
    )


@lru_cache(maxsize=32)
def _bound_schemes(config: SearchConfig):
    """Schemes with their canonical bindings instantiated once per config."""
    bound = []
    for axiom_id in config.axioms:
        scheme = CATALOGUE[axiom_id]
        binding = _canonical_binding(config, scheme)
        if binding is None:
            continue
        lhs, rhs = instantiate(scheme, binding)
        bound.append((scheme, binding, lhs, rhs, render_binding(scheme, binding)))
    return tuple(bound)


def _check_model(config: SearchConfig, model: CgdlModel, tallies: dict,
                 witnesses: list):
    """Run every selected axiom on one model, under every mode pair.

    The catalogue's programs only combine atoms with choice and parallel,
    so sequential-composition modes cannot influence the outcome; each
    diamond mode is evaluated once and the result is recorded under every
    selected seq mode.
    """
    singleton = _is_singleton_support(model)
    cap = config.max_witnesses
    model_dict = None
    for dmode in config.diamond_modes:
        evaluator = Evaluator(model, seq_mode=config.seq_modes[0],
                              diamond_mode=dmode)
        for scheme, binding, lhs, rhs, rendered in _bound_schemes(config):
            scopes = [SCOPE_ALL]
            if scheme.atomic_only and singleton:
                scopes.append(SCOPE_SINGLETON)
            rows, witness = _evaluate_states(evaluator, scheme, lhs, rhs, binding)
            passed = witness is None
            for scope in scopes:
                for seq_mode in config.seq_modes:
                    key = (scheme.id, scope, seq_mode, dmode)
                    entry = tallies.setdefault(key, [0, 0])
                    entry[0] += 1
                    if not passed:
                        entry[1] += 1
                        if cap is None or len(witnesses) < cap:
                            if model_dict is None:
                                model_dict = model_to_dict(model)
                            witnesses.append(Verdict(
                                axiom_id=scheme.id,
                                scope=scope,
                                seq_mode=seq_mode,
                                diamond_mode=dmode,
                                binding=rendered,
                                model=model_dict,
                                per_state=_render_rows(model.lattice, scheme, rows),
                                passed=False,
                                witness_state=witness,
                            ).to_dict())


def _run_block(args) -> tuple[dict, list]:
    config, block = args
    tallies: dict = {}
    witnesses: list = []
    kind = block[0]
    if kind == "exhaustive":
        _kind, n, start, stop = block
        for index in range(start, stop):
            _check_model(config, _model_at(config, n, index), tallies, witnesses)
    else:
        _kind, start, stop = block
        for index in range(start, stop):
            _check_model(config, _sampled_model(config, index), tallies, witnesses)
    return tallies, witnesses


def _blocks(config: SearchConfig, chunk: int) -> list:
    blocks = []
    if config.exhaustive:
        for n in range(1, config.max_states + 1):
            total = _exhaustive_total(config, n)
            for start in range(0, total, chunk):
                blocks.append(("exhaustive", n, start, min(start + chunk, total)))
    else:
        for start in range(0, config.samples, chunk):
            blocks.append(("sampled", start, min(start + chunk, config.samples)))
    return blocks


@dataclass(frozen=True)
class SearchRow:
    axiom_id: str
    scope: str
    seq_mode: str
    diamond_mode: str
    models: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class SearchReport:
    lattice_label: str
    coverage: str
    config_summary: tuple[tuple[str, object], ...]
    rows: tuple[SearchRow, ...]
    witnesses: tuple[dict, ...] = field(default_factory=tuple)

    @property
    def found_counterexamples(self) -> bool:
        return any(row.failures for row in self.rows)

    def to_dict(self) -> dict:
        return {
            "report": "axioms",
            "lattice": self.lattice_label,
            "coverage": self.coverage,
            "config": dict(self.config_summary),
            "rows": [
                {
                    "axiom": r.axiom_id,
                    "scope": r.scope,
                    "seq_mode": r.seq_mode,
                    "diamond_mode": r.diamond_mode,
                    "models": r.models,
                    "failures": r.failures,
                    "passed": r.passed,
                }
                for r in self.rows
            ],
            "counterexamples_found": self.found_counterexamples,
            "witnesses": list(self.witnesses),
        }

    def to_text(self) -> str:
        lines = [
            f"axiom search on {self.lattice_label} ({self.coverage})",
        ]
        for key, value in self.config_summary:
            lines.append(f"  {key}: {value}")
        lines.append("")
        header = (f"  {'axiom':<6} {'scope':<18} {'seq mode':<16} "
                  f"{'diamond mode':<13} {'models':>8} {'failures':>9}  verdict")
        lines.append(header)
        for r in self.rows:
            verdict = "pass" if r.passed else "FAIL"
            lines.append(
                f"  {r.axiom_id:<6} {r.scope:<18} {r.seq_mode:<16} "
                f"{r.diamond_mode:<13} {r.models:>8} {r.failures:>9}  {verdict}"
            )
        if self.witnesses:
            lines.append("")
            lines.append(f"  {len(self.witnesses)} witness(es):")
            for w in self.witnesses:
                lines.append(
                    f"    axiom {w['axiom']} [{w['scope']}] "
                    f"seq={w['seq_mode']} diamond={w['diamond_mode']} "
                    f"binding={w['binding']} state={w['witness_state']}"
                )
                lines.append(f"      per-state: {w['per_state']}")
                lines.append(f"      model: {w['model']}")
        else:
            lines.append("")
            lines.append("  no counterexamples found")
        return "\n".join(lines)


def search_counterexamples(config: SearchConfig) -> SearchReport:
    """Enumerate or sample models within the config bounds and check every
    selected axiom under every selected mode pair.

    Deterministic for a fixed config: enumeration order is fixed, sampled
    models depend only on (seed, sample index), and chunk results merge
    in enumeration order regardless of worker count.
    """
    chunk = 512
    blocks = _blocks(config, chunk)
    tasks = [(config, block) for block in blocks]
    if config.jobs > 1 and len(blocks) > 1:
        import multiprocessing

        with multiprocessing.Pool(config.jobs) as pool:
            results = pool.map(_run_block, tasks)
    else:
        results = [_run_block(task) for task in tasks]

    tallies: dict = {}
    witnesses: list = []
    for block_tallies, block_witnesses in results:
        for key, (checked, failed) in sorted(block_tallies.items()):
            entry = tallies.setdefault(key, [0, 0])
            entry[0] += checked
            entry[1] += failed
        witnesses.extend(block_witnesses)
    if config.max_witnesses is not None:
        witnesses = witnesses[:config.max_witnesses]

    rows = []
    for axiom_id in config.axioms:
        scopes = [SCOPE_ALL]
        if CATALOGUE[axiom_id].atomic_only:
            scopes.append(SCOPE_SINGLETON)
        for scope in scopes:
            for seq_mode in config.seq_modes:
                for dmode in config.diamond_modes:
                    checked, failed = tallies.get(
                        (axiom_id, scope, seq_mode, dmode), (0, 0))
                    rows.append(SearchRow(axiom_id, scope, seq_mode, dmode,
                                          checked, failed))

    summary = (
        ("max_states", config.max_states),
        ("programs", config.num_programs),
        ("propositions", config.num_propositions),
        ("max_support", config.max_support),
        ("max_pairs", config.max_pairs),
        ("value_grid", [config.lattice.value_str(v) for v in config.grid()]),
        ("axioms", list(config.axioms)),
        ("budget", "exhaustive" if config.exhaustive
         else f"{config.samples} samples, seed {config.seed}"),
    )
    return SearchReport(
        lattice_label=config.lattice.label,
        coverage=config.coverage(),
        config_summary=summary,
        rows=tuple(rows),
        witnesses=tuple(witnesses),
    )


# --- standalone lattice property checks -------------------------------------

@dataclass(frozen=True)
class PropertyCheck:
    name: str
    ok: bool
    witness: Optional[tuple[str, ...]]
    checked: int


@dataclass(frozen=True)
class PropertyReport:
    lattice_label: str
    sample_size: int
    checks: tuple[PropertyCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "lattice": self.lattice_label,
            "sample_size": self.sample_size,
            "all_ok": self.all_ok,
            "checks": [
                {"name": c.name, "ok": c.ok,
                 "witness": list(c.witness) if c.witness else None,
                 "checked": c.checked}
                for c in self.checks
            ],
        }


def lattice_property_check(lattice: Lattice, sample: Sequence[int],
                           max_list_len: int = 3,
                           tuple_budget: Optional[int] = None,
                           seed: int = 0) -> PropertyReport:
    """Check join monotonicity, sub-distributivity of seq over meet, and
    the iterated join/meet inequality over the sample.

    Without a tuple_budget the tuple spaces are exhausted; with one, that
    many tuples are drawn per property from the seed.
    """
    sample = list(sample)
    if not sample:
        raise ValueError("sample must be nonempty")
    lat = lattice

    def mono(a, b, c, d):
        return (not (lat.leq(a, b) and lat.leq(c, d))) or \
            lat.leq(lat.join(a, c), lat.join(b, d))

    def subdist(a, b, c):
        return lat.leq(lat.seq(a, lat.meet(b, c)),
                       lat.meet(lat.seq(a, b), lat.seq(a, c)))

    checks = []
    for name, arity, pred in (
        ("join-monotonicity", 4, mono),
        ("seq-meet-subdistributivity", 3, subdist),
    ):
        checked = 0
        witness = None
        if tuple_budget is None:
            for tup in itertools.product(sample, repeat=arity):
                checked += 1
                if not pred(*tup):
                    witness = tup
                    break
        else:
            rng = Random(f"{seed}:{name}")
            for _ in range(tuple_budget):
                tup = tuple(rng.choice(sample) for _ in range(arity))
                checked += 1
                if not pred(*tup):
                    witness = tup
                    break
        checks.append(PropertyCheck(
            name, witness is None,
            tuple(lat.value_str(v) for v in witness) if witness else None,
            checked,
        ))

    if tuple_budget is None:
        checked, witness = iterated_law_violation(lattice, sample, max_list_len)
    else:
        rng = Random(f"{seed}:iterated")
        checked = 0
        witness = None
        for _ in range(tuple_budget):
            k = rng.randint(1, max_list_len)
            a_list = [rng.choice(sample) for _ in range(k)]
            b_list = [rng.choice(sample) for _ in range(k)]
            checked += 1
            lhs = fold(lat, "join", [lat.meet(a, b) for a, b in zip(a_list, b_list)])
            rhs = lat.meet(fold(lat, "join", a_list), fold(lat, "join", b_list))
            if not lat.leq(lhs, rhs):
                witness = (a_list, b_list)
                break
    if witness is None:
        checks.append(PropertyCheck("iterated-join-meet-inequality", True, None, checked))
    else:
        a_list, b_list = witness
        rendered = tuple(
            "[" + ", ".join(lat.value_str(v) for v in vs) + "]"
            for vs in (a_list, b_list)
        )
        checks.append(PropertyCheck("iterated-join-meet-inequality", False,
                                    rendered, checked))

    return PropertyReport(lattice.label, len(sample), tuple(checks))
