"""Finite action lattices: the graded truth/weight algebras everything else runs on.

A lattice here is a finite residuated lattice with a Kleene star, carrying
operations join (+), seq (;), meet, residuum (->) and star (*), constants
zero/one/bottom/top, and the order a <= b iff a + b = b.  All shipped
instances satisfy one == top, so star is constantly top on them.

Carrier elements are plain ints.  For the chain families the int is the
level index 0 .. levels-1 standing for the rational i/(levels-1); for table
lattices it indexes the element list.  Everything is exact: no floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

__all__ = [
    "LatticeError",
    "GodelChain",
    "LukasiewiczChain",
    "TableLattice",
    "Lattice",
    "boolean",
    "godel_chain",
    "lukasiewicz_chain",
    "lattice_from_spec",
    "lattice_from_cli_spec",
    "eval_op",
    "leq",
    "fold",
    "AuditEntry",
    "AuditReport",
    "audit_axioms",
    "iterated_law_violation",
]

BINARY_OPS = ("join", "seq", "meet", "residuum")
UNARY_OPS = ("star",)


class LatticeError(ValueError):
    """Bad operation arity, or a value outside the carrier grid."""


def _chain_value_strs(levels: int) -> tuple[str, ...]:
    if levels == 1:
        return ("1",)
    return tuple(str(Fraction(i, levels - 1)) for i in range(levels))


@dataclass(frozen=True)
class GodelChain:
    """Finite Goedel chain on the grid {0, 1/(n-1), ..., 1}.

    join = max, seq = meet = min, residuum a->b = top if a <= b else b,
    star = top.  levels == 1 is the degenerate one-point lattice.
    """

    levels: int
    label: str = ""

    def __post_init__(self):
        if self.levels < 1:
            raise LatticeError("chain needs at least one level")
        if not self.label:
            object.__setattr__(self, "label", f"godel:{self.levels}")
        object.__setattr__(self, "_strs", _chain_value_strs(self.levels))

    @property
    def family(self) -> str:
        return "godel"

    @property
    def carrier(self) -> tuple[int, ...]:
        return tuple(range(self.levels))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.levels - 1

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.levels - 1

    def contains(self, a: int) -> bool:
        return isinstance(a, int) and 0 <= a < self.levels

    def join(self, a: int, b: int) -> int:
        return a if a >= b else b

    def meet(self, a: int, b: int) -> int:
        return a if a <= b else b

    def seq(self, a: int, b: int) -> int:
        return a if a <= b else b

    def residuum(self, a: int, b: int) -> int:
        return self.levels - 1 if a <= b else b

    def star(self, a: int) -> int:
        return self.levels - 1

    def leq(self, a: int, b: int) -> bool:
        return a <= b

    def to_fraction(self, a: int) -> Fraction:
        if self.levels == 1:
            return Fraction(1)
        return Fraction(a, self.levels - 1)

    def value_str(self, a: int) -> str:
        return self._strs[a]

    def parse_value(self, literal) -> int:
        return _parse_chain_value(self, literal)

    def spec(self) -> dict:
        if self.label == "boolean":
            return {"kind": "boolean"}
        return {"kind": "godel-chain", "levels": self.levels}


@dataclass(frozen=True)
class LukasiewiczChain:
    """Finite Lukasiewicz chain on the grid {0, 1/(n-1), ..., 1}.

    On level indices: seq(i, j) = max(0, i + j - (n-1)) and
    residuum(i, j) = min(n-1, n-1 - i + j); both land on the grid exactly.
    """

    levels: int
    label: str = ""

    def __post_init__(self):
        if self.levels < 1:
            raise LatticeError("chain needs at least one level")
        if not self.label:
            object.__setattr__(self, "label", f"lukasiewicz:{self.levels}")
        object.__setattr__(self, "_strs", _chain_value_strs(self.levels))

    @property
    def family(self) -> str:
        return "lukasiewicz"

    @property
    def carrier(self) -> tuple[int, ...]:
        return tuple(range(self.levels))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.levels - 1

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.levels - 1

    def contains(self, a: int) -> bool:
        return isinstance(a, int) and 0 <= a < self.levels

    def join(self, a: int, b: int) -> int:
        return a if a >= b else b

    def meet(self, a: int, b: int) -> int:
        return a if a <= b else b

    def seq(self, a: int, b: int) -> int:
        s = a + b - (self.levels - 1)
        return s if s > 0 else 0

    def residuum(self, a: int, b: int) -> int:
        r = self.levels - 1 - a + b
        return r if r < self.levels - 1 else self.levels - 1

    def star(self, a: int) -> int:
        return self.levels - 1

    def leq(self, a: int, b: int) -> bool:
        return a <= b

    def to_fraction(self, a: int) -> Fraction:
        if self.levels == 1:
            return Fraction(1)
        return Fraction(a, self.levels - 1)

    def value_str(self, a: int) -> str:
        return self._strs[a]

    def parse_value(self, literal) -> int:
        return _parse_chain_value(self, literal)

    def spec(self) -> dict:
        return {"kind": "lukasiewicz-chain", "levels": self.levels}


@dataclass(frozen=True)
class TableLattice:
    """Lattice given by explicit finite operation tables over named elements.

    No completeness checking beyond finiteness; audit_axioms is the way to
    find out whether the tables actually form an action lattice.
    """

    elements: tuple[str, ...]
    join_table: tuple[tuple[int, ...], ...]
    seq_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    residuum_table: tuple[tuple[int, ...], ...]
    star_table: tuple[int, ...]
    zero: int
    one: int
    label: str = "table"

    def __post_init__(self):
        n = len(self.elements)
        if n == 0:
            raise LatticeError("table lattice needs at least one element")
        if len(set(self.elements)) != n:
            raise LatticeError("table lattice element names must be unique")
        for name, table in (
            ("join", self.join_table),
            ("seq", self.seq_table),
            ("meet", self.meet_table),
            ("residuum", self.residuum_table),
        ):
            if len(table) != n or any(len(row) != n for row in table):
                raise LatticeError(f"{name} table must be {n}x{n}")
            if any(not (0 <= v < n) for row in table for v in row):
                raise LatticeError(f"{name} table entry out of range")
        if len(self.star_table) != n or any(not (0 <= v < n) for v in self.star_table):
            raise LatticeError("star table must index the carrier")
        for name, const in (("zero", self.zero), ("one", self.one)):
            if not (0 <= const < n):
                raise LatticeError(f"{name} constant out of range")

    @property
    def family(self) -> str:
        return "table"

    @property
    def carrier(self) -> tuple[int, ...]:
        return tuple(range(len(self.elements)))

    @property
    def bottom(self) -> int:
        # least element under the join-induced order; assumes one exists
        cand = 0
        for a in range(len(self.elements)):
            if self.leq(a, cand):
                cand = a
        return cand

    @property
    def top(self) -> int:
        cand = 0
        for a in range(len(self.elements)):
            if self.leq(cand, a):
                cand = a
        return cand

    def contains(self, a: int) -> bool:
        return isinstance(a, int) and 0 <= a < len(self.elements)

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def seq(self, a: int, b: int) -> int:
        return self.seq_table[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def residuum(self, a: int, b: int) -> int:
        return self.residuum_table[a][b]

    def star(self, a: int) -> int:
        return self.star_table[a]

    def leq(self, a: int, b: int) -> bool:
        return self.join_table[a][b] == b

    def value_str(self, a: int) -> str:
        return self.elements[a]

    def parse_value(self, literal) -> int:
        if isinstance(literal, bool):
            raise LatticeError("boolean literals are not lattice values")
        if isinstance(literal, int):
            if not self.contains(literal):
                raise LatticeError(
                    f"index {literal} outside carrier of {self.label}"
                )
            return literal
        if isinstance(literal, str):
            try:
                return self.elements.index(literal)
            except ValueError:
                raise LatticeError(
                    f"{literal!r} is not an element of {self.label}"
                ) from None
        raise LatticeError(f"cannot read lattice value from {literal!r}")

    def spec(self) -> dict:
        return {
            "kind": "table",
            "elements": list(self.elements),
            "join": [list(r) for r in self.join_table],
            "seq": [list(r) for r in self.seq_table],
            "meet": [list(r) for r in self.meet_table],
            "residuum": [list(r) for r in self.residuum_table],
            "star": list(self.star_table),
            "zero": self.zero,
            "one": self.one,
        }


Lattice = Union[GodelChain, LukasiewiczChain, TableLattice]


def _parse_chain_value(lattice, literal) -> int:
    """Read a chain value: ints are level indices, strings exact rationals."""
    if isinstance(literal, bool):
        raise LatticeError("boolean literals are not lattice values")
    if isinstance(literal, int):
        if not lattice.contains(literal):
            raise LatticeError(
                f"level {literal} outside carrier of {lattice.label}"
            )
        return literal
    if isinstance(literal, str):
        try:
            frac = Fraction(literal)
        except (ValueError, ZeroDivisionError):
            raise LatticeError(f"cannot read lattice value from {literal!r}") from None
        if lattice.levels == 1:
            if frac in (0, 1):
                return 0
            raise LatticeError(f"{literal!r} is not on the grid of {lattice.label}")
        scaled = frac * (lattice.levels - 1)
        if scaled.denominator != 1 or not 0 <= scaled.numerator < lattice.levels:
            raise LatticeError(f"{literal!r} is not on the grid of {lattice.label}")
        return scaled.numerator
    raise LatticeError(f"cannot read lattice value from {literal!r}")


def boolean() -> GodelChain:
    """The two-element Boolean lattice (a Goedel chain of length 2)."""
    return GodelChain(2, label="boolean")


def godel_chain(levels: int) -> GodelChain:
    return GodelChain(levels)


def lukasiewicz_chain(levels: int) -> LukasiewiczChain:
    return LukasiewiczChain(levels)


def lattice_from_spec(spec: dict) -> Lattice:
    """Build a lattice from its JSON descriptor form."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise LatticeError("lattice spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "boolean":
        return boolean()
    if kind == "godel-chain":
        return godel_chain(_spec_levels(spec))
    if kind == "lukasiewicz-chain":
        return lukasiewicz_chain(_spec_levels(spec))
    if kind == "table":
        try:
            return TableLattice(
                elements=tuple(spec["elements"]),
                join_table=_as_table(spec["join"]),
                seq_table=_as_table(spec["seq"]),
                meet_table=_as_table(spec["meet"]),
                residuum_table=_as_table(spec["residuum"]),
                star_table=tuple(spec["star"]),
                zero=spec["zero"],
                one=spec["one"],
                label=spec.get("label", "table"),
            )
        except KeyError as exc:
            raise LatticeError(f"table lattice spec missing {exc}") from None
    raise LatticeError(f"unknown lattice kind {kind!r}")


def _spec_levels(spec: dict) -> int:
    levels = spec.get("levels")
    if not isinstance(levels, int) or levels < 1:
        raise LatticeError("chain lattice spec needs a positive integer 'levels'")
    return levels


def _as_table(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in rows)


def lattice_from_cli_spec(text: str) -> Lattice:
    """Parse the command-line lattice shorthand: boolean | godel:N | lukasiewicz:N."""
    name, _, arg = text.partition(":")
    if name == "boolean" and not arg:
        return boolean()
    if name in ("godel", "lukasiewicz"):
        try:
            levels = int(arg)
        except ValueError:
            raise LatticeError(f"bad chain length in {text!r}") from None
        if levels < 1:
            raise LatticeError(f"bad chain length in {text!r}")
        return godel_chain(levels) if name == "godel" else lukasiewicz_chain(levels)
    raise LatticeError(f"unknown lattice {text!r}")


def eval_op(lattice: Lattice, op: str, args: Sequence[int]) -> int:
    """Apply a named lattice operation, checking arity and carrier membership."""
    if op in BINARY_OPS:
        arity = 2
    elif op in UNARY_OPS:
        arity = 1
    else:
        raise LatticeError(f"unknown operation {op!r}")
    if len(args) != arity:
        raise LatticeError(f"{op} expects {arity} argument(s), got {len(args)}")
    for a in args:
        if not lattice.contains(a):
            raise LatticeError(f"value {a!r} outside carrier of {lattice.label}")
    return getattr(lattice, op)(*args)


def leq(lattice: Lattice, a: int, b: int) -> bool:
    """Order induced by join: a <= b iff join(a, b) == b."""
    for v in (a, b):
        if not lattice.contains(v):
            raise LatticeError(f"value {v!r} outside carrier of {lattice.label}")
    return lattice.join(a, b) == b


def fold(lattice: Lattice, op: str, values: Iterable[int]) -> int:
    """Left fold of join or seq from its unit; the empty fold is the unit."""
    if op == "join":
        acc = lattice.zero
        f = lattice.join
    elif op == "seq":
        acc = lattice.one
        f = lattice.seq
    else:
        raise LatticeError(f"fold supports join and seq, not {op!r}")
    for v in values:
        if not lattice.contains(v):
            raise LatticeError(f"value {v!r} outside carrier of {lattice.label}")
        acc = f(acc, v)
    return acc


@dataclass(frozen=True)
class AuditEntry:
    axiom: str
    ok: bool
    witness: Optional[tuple[str, ...]]
    checked: int


@dataclass(frozen=True)
class AuditReport:
    lattice_label: str
    sample_size: int
    entries: tuple[AuditEntry, ...]

    @property
    def all_ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> tuple[AuditEntry, ...]:
        return tuple(e for e in self.entries if not e.ok)

    def to_dict(self) -> dict:
        return {
            "lattice": self.lattice_label,
            "sample_size": self.sample_size,
            "all_ok": self.all_ok,
            "entries": [
                {
                    "axiom": e.axiom,
                    "ok": e.ok,
                    "witness": list(e.witness) if e.witness else None,
                    "checked": e.checked,
                }
                for e in self.entries
            ],
        }


def _scan(sample, arity, pred):
    """Check pred over all arity-tuples from sample; first violator wins."""
    checked = 0
    for tup in itertools.product(sample, repeat=arity):
        checked += 1
        if not pred(*tup):
            return checked, tup
    return checked, None


def iterated_law_violation(lattice: Lattice, sample, max_list_len: int = 3):
    """First violation of  sum_i (a_i . b_i)  <=  (sum_i a_i) . (sum_i b_i)
    over equal-length lists from sample up to max_list_len, plus the count
    of list pairs inspected.  Chain lattices with int samples go through a
    vectorised path; anything else is a direct loop.
    """
    checked = 0
    if isinstance(lattice, (GodelChain, LukasiewiczChain)):
        vals = np.asarray(sorted(set(sample)), dtype=np.int16)
        for k in range(1, max_list_len + 1):
            m = len(vals)
            lhs = None
            join_a = None
            join_b = None
            for i in range(k):
                ax_a = vals.reshape([m if j == i else 1 for j in range(2 * k)])
                ax_b = vals.reshape([m if j == k + i else 1 for j in range(2 * k)])
                term = np.minimum(ax_a, ax_b)
                lhs = term if lhs is None else np.maximum(lhs, term)
                join_a = ax_a if join_a is None else np.maximum(join_a, ax_a)
                join_b = ax_b if join_b is None else np.maximum(join_b, ax_b)
            rhs = np.minimum(join_a, join_b)
            bad = np.argwhere(lhs > rhs)
            checked += m ** (2 * k)
            if bad.size:
                idx = bad[0]
                a_list = [int(vals[idx[i]]) for i in range(k)]
                b_list = [int(vals[idx[k + i]]) for i in range(k)]
                return checked, (a_list, b_list)
        return checked, None

    sample = list(sample)
    for k in range(1, max_list_len + 1):
        for a_list in itertools.product(sample, repeat=k):
            for b_list in itertools.product(sample, repeat=k):
                checked += 1
                lhs = fold(lattice, "join", [lattice.meet(a, b) for a, b in zip(a_list, b_list)])
                rhs = lattice.meet(fold(lattice, "join", a_list), fold(lattice, "join", b_list))
                if not lattice.leq(lhs, rhs):
                    return checked, (list(a_list), list(b_list))
    return checked, None


def audit_axioms(lattice: Lattice, sample: Optional[Sequence[int]] = None) -> AuditReport:
    """Check every action-lattice axiom, plus the monotonicity and
    sub-distributivity side properties, over all tuples from the sample.

    The default sample is the full carrier, which makes the audit an
    exhaustive proof for finite instances.  Failures are report entries
    carrying a concrete witness, never exceptions.
    """
    if sample is None:
        sample = lattice.carrier
    sample = list(sample)
    if not sample:
        raise LatticeError("audit sample must be nonempty")
    for v in sample:
        if not lattice.contains(v):
            raise LatticeError(f"sample value {v!r} outside carrier of {lattice.label}")

    lat = lattice
    one, zero, top = lat.one, lat.zero, lat.top

    checks = [
        ("join-associativity", 3,
         lambda a, b, c: lat.join(a, lat.join(b, c)) == lat.join(lat.join(a, b), c)),
        ("join-commutativity", 2, lambda a, b: lat.join(a, b) == lat.join(b, a)),
        ("join-idempotence", 1, lambda a: lat.join(a, a) == a),
        ("join-zero-unit", 1,
         lambda a: lat.join(a, zero) == a and lat.join(zero, a) == a),
        ("meet-associativity", 3,
         lambda a, b, c: lat.meet(a, lat.meet(b, c)) == lat.meet(lat.meet(a, b), c)),
        ("meet-commutativity", 2, lambda a, b: lat.meet(a, b) == lat.meet(b, a)),
        ("meet-idempotence", 1, lambda a: lat.meet(a, a) == a),
        ("lattice-absorption", 2,
         lambda a, b: lat.join(a, lat.meet(a, b)) == a and lat.meet(a, lat.join(a, b)) == a),
        ("seq-associativity", 3,
         lambda a, b, c: lat.seq(a, lat.seq(b, c)) == lat.seq(lat.seq(a, b), c)),
        ("seq-one-unit", 1,
         lambda a: lat.seq(a, one) == a and lat.seq(one, a) == a),
        ("seq-zero-annihilation", 1,
         lambda a: lat.seq(a, zero) == zero and lat.seq(zero, a) == zero),
        ("seq-join-distributivity-left", 3,
         lambda a, b, c: lat.seq(a, lat.join(b, c)) == lat.join(lat.seq(a, b), lat.seq(a, c))),
        ("seq-join-distributivity-right", 3,
         lambda a, b, c: lat.seq(lat.join(a, b), c) == lat.join(lat.seq(a, c), lat.seq(b, c))),
        ("residuation-galois", 3,
         lambda a, b, c: lat.leq(lat.seq(a, b), c) == lat.leq(b, lat.residuum(a, c))),
        ("star-axiom", 1,
         lambda a: lat.leq(lat.join(lat.join(one, a), lat.seq(lat.star(a), lat.star(a))),
                           lat.star(a))),
        ("star-of-self-implication", 1,
         lambda a: lat.star(lat.residuum(a, a)) == lat.residuum(a, a)),
        ("identity-is-top", 1, lambda a: one == top),
        ("join-monotonicity", 4,
         lambda a, b, c, d: (not (lat.leq(a, b) and lat.leq(c, d)))
         or lat.leq(lat.join(a, c), lat.join(b, d))),
        ("seq-meet-subdistributivity", 3,
         lambda a, b, c: lat.leq(lat.seq(a, lat.meet(b, c)),
                                 lat.meet(lat.seq(a, b), lat.seq(a, c)))),
    ]

    entries = []
    for name, arity, pred in checks:
        checked, witness = _scan(sample, arity, pred)
        entries.append(AuditEntry(
            axiom=name,
            ok=witness is None,
            witness=tuple(lat.value_str(v) for v in witness) if witness else None,
            checked=checked,
        ))

    checked, witness = iterated_law_violation(lattice, sample, max_list_len=3)
    if witness is None:
        entries.append(AuditEntry("iterated-join-meet-inequality", True, None, checked))
    else:
        a_list, b_list = witness
        rendered = tuple(
            "[" + ", ".join(lat.value_str(v) for v in vs) + "]" for vs in (a_list, b_list)
        )
        entries.append(AuditEntry("iterated-join-meet-inequality", False, rendered, checked))

    return AuditReport(
        lattice_label=lattice.label,
        sample_size=len(sample),
        entries=tuple(entries),
    )
