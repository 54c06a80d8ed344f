"""Fuzzy sets, fuzzy multirelations, and their operators, plus classical
binary multirelations as comparison oracles.

A fuzzy multirelation is a finite set of pairs (source state, fuzzy set of
target states).  Fuzzy sets are kept in support form: only strictly
positive memberships are stored, and a pair whose fuzzy set would be empty
is dropped.

Sequential composition ships in two modes because the defining formula and
its intended classical reading disagree:

* ``literal``: one output pair per source ``a``, with
  ``phi(c) = join over pairs (a, phi_a) of the product over ALL pairs
  (b, phi_b) of the right operand of seq(phi_a(b), phi_b(c))``.  The
  product ranges over every pair of the right operand, so any pair whose
  source is outside support(phi_a) contributes a zero factor and
  annihilates the product.  With an empty right operand the empty product
  is the seq unit, so sources of the left operand map to the constant-top
  fuzzy set.
* ``support-guarded``: the Peleg-style reading.  For each pair
  (a, phi_a) of the left operand and each choice function f assigning to
  every b in support(phi_a) some pair (b, phi_b) of the right operand,
  emit (a, phi) with ``phi(c) = join over b of seq(phi_a(b), f(b)(c))``.
  If some branch b has no continuation the pair contributes nothing.
  Over the Boolean lattice this is exactly the classical Peleg
  composition, and the identity multirelation is a two-sided unit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from random import Random
from typing import Iterable, Mapping, Optional, Sequence

from .lattice import Lattice, boolean

__all__ = [
    "SEQ_LITERAL", "SEQ_SUPPORT_GUARDED", "SEQ_MODES",
    "FuzzySet", "fuzzy_set", "FuzzyMultirelation", "multirelation",
    "fs_union", "mrel_union", "mrel_seq", "mrel_parallel", "mrel_identity",
    "StarResult", "mrel_star", "default_star_iterations",
    "BinaryMultirelation", "binary_multirelation", "bin_union",
    "bin_peleg_seq", "bin_parikh_seq", "bin_parallel", "embed_boolean",
    "strip_weights",
    "PairAgreement", "ComparisonReport", "compare_seq",
    "random_binary_multirelation", "random_fuzzy_multirelation",
]

SEQ_LITERAL = "literal"
SEQ_SUPPORT_GUARDED = "support-guarded"
SEQ_MODES = (SEQ_LITERAL, SEQ_SUPPORT_GUARDED)


@dataclass(frozen=True)
class FuzzySet:
    """Support-form fuzzy set: sorted (state, value) entries, all nonzero."""

    items: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.items))

    def get(self, state, default=None):
        return self._map.get(state, default)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.items)

    def as_dict(self) -> dict:
        return dict(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)


def fuzzy_set(mapping: Mapping, lattice: Lattice) -> FuzzySet:
    """Build a fuzzy set from a mapping, dropping zero memberships."""
    items = []
    for state, value in mapping.items():
        if not lattice.contains(value):
            raise ValueError(
                f"membership {value!r} outside carrier of {lattice.label}"
            )
        if value != lattice.zero:
            items.append((state, value))
    return FuzzySet(tuple(sorted(items)))


@dataclass(frozen=True)
class FuzzyMultirelation:
    """Finite set of (state, FuzzySet) pairs over an ambient state tuple."""

    lattice: Lattice
    states: tuple[str, ...]
    pairs: frozenset[tuple[str, FuzzySet]]

    def __post_init__(self):
        ambient = set(self.states)
        if len(ambient) != len(self.states):
            raise ValueError("ambient states must be unique")
        for source, phi in self.pairs:
            if source not in ambient:
                raise ValueError(f"source {source!r} outside the ambient states")
            if not phi.items:
                raise ValueError("empty-support fuzzy sets cannot be stored")
            for target, value in phi.items:
                if target not in ambient:
                    raise ValueError(f"target {target!r} outside the ambient states")
                if not self.lattice.contains(value) or value == self.lattice.zero:
                    raise ValueError(
                        f"membership {value!r} violates the support invariant"
                    )

    def sorted_pairs(self) -> list[tuple[str, FuzzySet]]:
        return sorted(self.pairs, key=lambda p: (p[0], p[1].items))

    def sources(self) -> list[str]:
        return sorted({source for source, _ in self.pairs})

    def to_literal(self) -> list[dict]:
        """Model-file form: one {"from": ..., "to": {...}} entry per pair."""
        return [
            {"from": source,
             "to": {s: self.lattice.value_str(v) for s, v in phi.items}}
            for source, phi in self.sorted_pairs()
        ]

    def __bool__(self) -> bool:
        return bool(self.pairs)


def multirelation(lattice: Lattice, states: Sequence[str],
                  entries: Iterable[tuple[str, Mapping]]) -> FuzzyMultirelation:
    """Convenience constructor from (source, {target: value}) entries."""
    pairs = set()
    for source, mapping in entries:
        phi = fuzzy_set(mapping, lattice)
        if phi:
            pairs.add((source, phi))
    return FuzzyMultirelation(lattice, tuple(states), frozenset(pairs))


def _require_compatible(R: FuzzyMultirelation, S: FuzzyMultirelation):
    if R.states != S.states:
        raise ValueError("multirelations have different ambient state sets")
    if R.lattice != S.lattice:
        raise ValueError("multirelations have different ambient lattices")


def fs_union(phi: FuzzySet, psi: FuzzySet, lattice: Lattice) -> FuzzySet:
    """Pointwise join; the support is the union of the supports."""
    merged = dict(phi.items)
    for state, value in psi.items:
        prev = merged.get(state)
        merged[state] = value if prev is None else lattice.join(prev, value)
    return FuzzySet(tuple(sorted(merged.items())))


def mrel_union(R: FuzzyMultirelation, S: FuzzyMultirelation) -> FuzzyMultirelation:
    _require_compatible(R, S)
    return FuzzyMultirelation(R.lattice, R.states, R.pairs | S.pairs)


def mrel_parallel(R: FuzzyMultirelation, S: FuzzyMultirelation) -> FuzzyMultirelation:
    """Pair every left fuzzy set with every right fuzzy set sharing its
    source and take the fuzzy-set union; unmatched sources produce nothing."""
    _require_compatible(R, S)
    lat = R.lattice
    right = {}
    for source, phi in S.pairs:
        right.setdefault(source, []).append(phi)
    out = set()
    for source, phi_r in R.pairs:
        for phi_s in right.get(source, ()):
            out.add((source, fs_union(phi_r, phi_s, lat)))
    return FuzzyMultirelation(lat, R.states, frozenset(out))


def mrel_identity(states: Sequence[str], lattice: Lattice) -> FuzzyMultirelation:
    """The top-weighted diagonal: (w, {w: top}) for every state w."""
    pairs = set()
    if lattice.top != lattice.zero:
        for w in states:
            pairs.add((w, FuzzySet(((w, lattice.top),))))
    return FuzzyMultirelation(lattice, tuple(states), frozenset(pairs))


def _pair_key(pair):
    return (pair[0], pair[1].items)


def _seq_literal(R: FuzzyMultirelation, S: FuzzyMultirelation) -> FuzzyMultirelation:
    lat = R.lattice
    zero, one = lat.zero, lat.one
    spairs = sorted(S.pairs, key=_pair_key)  # fixed product order
    by_source = {}
    for source, phi in R.pairs:
        by_source.setdefault(source, []).append(phi)
    out = set()
    for source in sorted(by_source):
        phis = sorted(by_source[source], key=lambda p: p.items)
        acc = {}
        for c in R.states:
            total = zero
            for phi_a in phis:
                prod = one
                for b, phi_b in spairs:
                    factor = lat.seq(phi_a.get(b, zero), phi_b.get(c, zero))
                    prod = lat.seq(prod, factor)
                    if prod == zero:
                        break
                total = lat.join(total, prod)
            if total != zero:
                acc[c] = total
        if acc:
            out.add((source, FuzzySet(tuple(sorted(acc.items())))))
    return FuzzyMultirelation(lat, R.states, frozenset(out))


def _seq_support_guarded(R: FuzzyMultirelation, S: FuzzyMultirelation) -> FuzzyMultirelation:
    lat = R.lattice
    zero = lat.zero
    by_source = {}
    for source, phi in sorted(S.pairs, key=_pair_key):
        by_source.setdefault(source, []).append(phi)
    out = set()
    for source, phi_a in R.pairs:
        options = []
        for b, _ in phi_a.items:
            continuations = by_source.get(b)
            if not continuations:
                options = None
                break
            options.append(continuations)
        if options is None:
            continue
        for combo in itertools.product(*options):
            acc = {}
            for (b, weight), phi_b in zip(phi_a.items, combo):
                for c, value in phi_b.items:
                    contrib = lat.seq(weight, value)
                    if contrib == zero:
                        continue
                    prev = acc.get(c)
                    acc[c] = contrib if prev is None else lat.join(prev, contrib)
            if acc:
                out.add((source, FuzzySet(tuple(sorted(acc.items())))))
    return FuzzyMultirelation(lat, R.states, frozenset(out))


def mrel_seq(R: FuzzyMultirelation, S: FuzzyMultirelation,
             mode: str = SEQ_SUPPORT_GUARDED) -> FuzzyMultirelation:
    """Sequential composition in the requested mode (see module docstring)."""
    _require_compatible(R, S)
    if mode == SEQ_LITERAL:
        return _seq_literal(R, S)
    if mode == SEQ_SUPPORT_GUARDED:
        return _seq_support_guarded(R, S)
    raise ValueError(f"unknown sequential-composition mode {mode!r}")


def default_star_iterations(states: Sequence[str]) -> int:
    return len(states) ** 2 + 2


@dataclass(frozen=True)
class StarResult:
    relation: FuzzyMultirelation
    converged: bool
    iterations: int


def mrel_star(R: FuzzyMultirelation, mode: str = SEQ_SUPPORT_GUARDED,
              max_iterations: Optional[int] = None) -> StarResult:
    """Iterative closure: accumulate identity, R, R^2, ... with
    R^(n+1) = mrel_seq(R^n, R, mode), stopping when a power adds no new
    pair to the accumulated union.

    Pair-set stabilisation is an exact fixpoint test for support-guarded
    composition (which distributes over unions of pairs and absorbs the
    identity) and a heuristic one for the literal mode.  Hitting
    max_iterations without stabilising is flagged as converged=False;
    the partial accumulation is still returned, never silently passed
    off as the closure.
    """
    if max_iterations is None:
        max_iterations = default_star_iterations(R.states)
    if max_iterations < 1:
        raise ValueError("max_iterations must be at least 1")
    ident = mrel_identity(R.states, R.lattice)
    acc = mrel_union(ident, R)
    if not R.pairs or R.pairs <= ident.pairs:
        return StarResult(acc, True, 1)
    power = R
    iterations = 1
    while iterations < max_iterations:
        power = mrel_seq(power, R, mode)
        iterations += 1
        new_pairs = power.pairs - acc.pairs
        if not new_pairs:
            return StarResult(acc, True, iterations)
        acc = FuzzyMultirelation(acc.lattice, acc.states, acc.pairs | new_pairs)
    return StarResult(acc, False, iterations)


# --- classical binary multirelations --------------------------------------

@dataclass(frozen=True)
class BinaryMultirelation:
    """Finite set of (state, set of states) pairs; the Boolean shadow."""

    states: tuple[str, ...]
    pairs: frozenset[tuple[str, frozenset]]

    def __post_init__(self):
        ambient = set(self.states)
        for source, targets in self.pairs:
            if source not in ambient or not targets <= ambient:
                raise ValueError("pair mentions a state outside the ambient set")

    def sorted_pairs(self) -> list[tuple[str, frozenset]]:
        return sorted(self.pairs, key=lambda p: (p[0], sorted(p[1])))

    def to_literal(self) -> list[dict]:
        return [{"from": source, "to": sorted(targets)}
                for source, targets in self.sorted_pairs()]


def binary_multirelation(states: Sequence[str],
                         entries: Iterable[tuple[str, Iterable[str]]]) -> BinaryMultirelation:
    return BinaryMultirelation(
        tuple(states),
        frozenset((source, frozenset(targets)) for source, targets in entries),
    )


def _require_same_states(R: BinaryMultirelation, S: BinaryMultirelation):
    if R.states != S.states:
        raise ValueError("multirelations have different ambient state sets")


def bin_union(R: BinaryMultirelation, S: BinaryMultirelation) -> BinaryMultirelation:
    _require_same_states(R, S)
    return BinaryMultirelation(R.states, R.pairs | S.pairs)


def bin_parallel(R: BinaryMultirelation, S: BinaryMultirelation) -> BinaryMultirelation:
    _require_same_states(R, S)
    out = set()
    for source, targets_r in R.pairs:
        for source_s, targets_s in S.pairs:
            if source == source_s:
                out.add((source, targets_r | targets_s))
    return BinaryMultirelation(R.states, frozenset(out))


def bin_peleg_seq(R: BinaryMultirelation, S: BinaryMultirelation) -> BinaryMultirelation:
    """Choice-function composition: glue each intermediate state b of a pair
    (a, B) to some pair (b, f(b)) of S and collect the union of the f(b)."""
    _require_same_states(R, S)
    by_source = {}
    for source, targets in sorted(S.pairs, key=lambda p: (p[0], sorted(p[1]))):
        by_source.setdefault(source, []).append(targets)
    out = set()
    for source, intermediate in R.pairs:
        if not intermediate:
            out.add((source, frozenset()))
            continue
        branches = sorted(intermediate)
        options = [by_source.get(b) for b in branches]
        if any(opt is None for opt in options):
            continue
        for combo in itertools.product(*options):
            out.add((source, frozenset(itertools.chain.from_iterable(combo))))
    return BinaryMultirelation(R.states, frozenset(out))


def bin_parikh_seq(R: BinaryMultirelation, S: BinaryMultirelation) -> BinaryMultirelation:
    """Common-target composition: (a, A) is included when some (a, B) in R
    has every b in B related to that same A by S.

    A pair (a, {}) in R makes the condition vacuous, so it contributes
    (a, A) for every subset A of the ambient states.
    """
    _require_same_states(R, S)
    by_source = {}
    for source, targets in S.pairs:
        by_source.setdefault(source, set()).add(targets)
    out = set()
    all_subsets = None
    for source, intermediate in R.pairs:
        if not intermediate:
            if all_subsets is None:
                all_subsets = [
                    frozenset(c)
                    for k in range(len(R.states) + 1)
                    for c in itertools.combinations(R.states, k)
                ]
            for subset in all_subsets:
                out.add((source, subset))
            continue
        candidates = None
        for b in sorted(intermediate):
            targets = by_source.get(b, set())
            candidates = set(targets) if candidates is None else candidates & targets
            if not candidates:
                break
        if candidates:
            for subset in candidates:
                out.add((source, subset))
    return BinaryMultirelation(R.states, frozenset(out))


def embed_boolean(B: BinaryMultirelation) -> FuzzyMultirelation:
    """Characteristic embedding over the two-element lattice; pairs with an
    empty target set cannot be represented in support form and are dropped."""
    lat = boolean()
    pairs = set()
    for source, targets in B.pairs:
        if targets:
            pairs.add((source, FuzzySet(tuple((t, lat.top) for t in sorted(targets)))))
    return FuzzyMultirelation(lat, B.states, frozenset(pairs))


def strip_weights(R: FuzzyMultirelation) -> BinaryMultirelation:
    """Forget memberships, keeping supports as target sets."""
    return BinaryMultirelation(
        R.states,
        frozenset((source, frozenset(phi.support)) for source, phi in R.pairs),
    )


# --- random generators (seed-deterministic) --------------------------------

def random_binary_multirelation(rng: Random, states: Sequence[str],
                                max_pairs_per_source: int = 2,
                                allow_empty_targets: bool = True) -> BinaryMultirelation:
    pairs = set()
    for w in states:
        for _ in range(rng.randint(0, max_pairs_per_source)):
            targets = frozenset(s for s in states if rng.random() < 0.5)
            if targets or allow_empty_targets:
                pairs.add((w, targets))
    return BinaryMultirelation(tuple(states), frozenset(pairs))


def random_fuzzy_multirelation(rng: Random, lattice: Lattice, states: Sequence[str],
                               max_support: Optional[int] = None,
                               max_pairs: Optional[int] = None) -> FuzzyMultirelation:
    states = tuple(states)
    positive = [v for v in lattice.carrier if v != lattice.zero]
    if max_support is None:
        max_support = len(states)
    if max_pairs is None:
        max_pairs = 2 * len(states)
    pairs = set()
    if positive:
        for _ in range(rng.randint(0, max_pairs)):
            source = rng.choice(states)
            size = rng.randint(1, max(1, max_support))
            support = rng.sample(states, min(size, len(states)))
            phi = FuzzySet(tuple(sorted((s, rng.choice(positive)) for s in support)))
            pairs.add((source, phi))
    return FuzzyMultirelation(lattice, states, frozenset(pairs))


# --- empirical comparison of the composition definitions -------------------

COMPARE_METHODS = ("peleg", "parikh", "literal", "support-guarded")


@dataclass(frozen=True)
class PairAgreement:
    method_a: str
    method_b: str
    agreements: int
    disagreements: int
    witness: Optional[dict]

    @property
    def percent(self) -> str:
        total = self.agreements + self.disagreements
        if total == 0:
            return "n/a"
        frac = 100 * self.agreements / total
        return f"{frac:.1f}%"


@dataclass(frozen=True)
class ComparisonReport:
    states: tuple[str, ...]
    count: int
    seed: int
    pairs: tuple[PairAgreement, ...]

    def to_dict(self) -> dict:
        return {
            "report": "compare",
            "states": list(self.states),
            "samples": self.count,
            "seed": self.seed,
            "methods": list(COMPARE_METHODS),
            "pairs": [
                {
                    "methods": [p.method_a, p.method_b],
                    "agreements": p.agreements,
                    "disagreements": p.disagreements,
                    "agreement": p.percent,
                    "witness": p.witness,
                }
                for p in self.pairs
            ],
        }

    def to_text(self) -> str:
        lines = [
            f"composition comparison over {len(self.states)} states, "
            f"{self.count} samples, seed {self.seed}",
        ]
        for p in self.pairs:
            lines.append(
                f"  {p.method_a:>15} vs {p.method_b:<15} agree {p.agreements}/"
                f"{p.agreements + p.disagreements} ({p.percent})"
            )
            if p.witness is not None:
                lines.append(f"    first disagreement at sample {p.witness['sample']}:")
                lines.append(f"      R = {p.witness['left']}")
                lines.append(f"      S = {p.witness['right']}")
                for method in (p.method_a, p.method_b):
                    lines.append(f"      {method}: {p.witness['results'][method]}")
        return "\n".join(lines)


def _bin_repr(pairs: frozenset) -> str:
    entries = sorted(pairs, key=lambda p: (p[0], sorted(p[1])))
    inner = ", ".join(
        "({}, {{{}}})".format(source, ", ".join(sorted(targets)))
        for source, targets in entries
    )
    return "{" + inner + "}"


def compare_sample(states: Sequence[str], seed: int, index: int) -> dict:
    """Evaluate all four compositions on one seed-derived sample."""
    rng = Random(f"{seed}:{index}")
    states = tuple(states)
    R = random_binary_multirelation(rng, states)
    S = random_binary_multirelation(rng, states)
    results = {
        "peleg": bin_peleg_seq(R, S).pairs,
        "parikh": bin_parikh_seq(R, S).pairs,
        "literal": strip_weights(
            mrel_seq(embed_boolean(R), embed_boolean(S), SEQ_LITERAL)).pairs,
        "support-guarded": strip_weights(
            mrel_seq(embed_boolean(R), embed_boolean(S), SEQ_SUPPORT_GUARDED)).pairs,
    }
    return {
        "index": index,
        "left": _bin_repr(R.pairs),
        "right": _bin_repr(S.pairs),
        "results": results,
    }


def _compare_block(args):
    states, seed, start, stop = args
    method_pairs = list(itertools.combinations(COMPARE_METHODS, 2))
    agree = {mp: 0 for mp in method_pairs}
    witness = {mp: None for mp in method_pairs}
    for i in range(start, stop):
        sample = compare_sample(states, seed, i)
        for mp in method_pairs:
            a, b = mp
            if sample["results"][a] == sample["results"][b]:
                agree[mp] += 1
            elif witness[mp] is None:
                witness[mp] = {
                    "sample": i,
                    "left": sample["left"],
                    "right": sample["right"],
                    "results": {
                        a: _bin_repr(sample["results"][a]),
                        b: _bin_repr(sample["results"][b]),
                    },
                }
    return agree, witness


def compare_seq(states: Sequence[str], count: int, seed: int,
                jobs: int = 1) -> ComparisonReport:
    """Sample Boolean multirelation pairs and report how the four
    composition definitions agree.

    Each sample is derived from (seed, sample index), so the report is a
    pure function of the arguments: reruns and different worker counts
    produce identical output.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    states = tuple(states)
    chunk = 256
    blocks = [(states, seed, start, min(start + chunk, count))
              for start in range(0, count, chunk)]
    if jobs > 1 and len(blocks) > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_compare_block, blocks)
    else:
        results = [_compare_block(block) for block in blocks]

    method_pairs = list(itertools.combinations(COMPARE_METHODS, 2))
    agree = {mp: 0 for mp in method_pairs}
    witness = {mp: None for mp in method_pairs}
    for block_agree, block_witness in results:   # blocks are in index order
        for mp in method_pairs:
            agree[mp] += block_agree[mp]
            if witness[mp] is None and block_witness[mp] is not None:
                witness[mp] = block_witness[mp]
    pairs = tuple(
        PairAgreement(a, b, agree[(a, b)], count - agree[(a, b)], witness[(a, b)])
        for a, b in method_pairs
    )
    return ComparisonReport(states, count, seed, pairs)
