"""Shared generators and small oracles used across the test modules."""

from __future__ import annotations

from random import Random

from cgdl.lattice import TableLattice
from cgdl.syntax import (
    And, Atomic, Box, Bot, Choice, Diamond, Iff, Implies, Or, Par, Prop,
    Seq, Star, Top,
)

PROGRAM_NAMES = ("a", "b", "c")
PROP_NAMES = ("p", "q", "r")


def random_program(rng: Random, depth: int = 4, names=PROGRAM_NAMES):
    if depth <= 0 or rng.random() < 0.3:
        return Atomic(rng.choice(names))
    kind = rng.randrange(4)
    if kind == 0:
        return Seq(random_program(rng, depth - 1, names),
                   random_program(rng, depth - 1, names))
    if kind == 1:
        return Par(random_program(rng, depth - 1, names),
                   random_program(rng, depth - 1, names))
    if kind == 2:
        return Choice(random_program(rng, depth - 1, names),
                      random_program(rng, depth - 1, names))
    return Star(random_program(rng, depth - 1, names))


def random_formula(rng: Random, depth: int = 4, props=PROP_NAMES,
                   names=PROGRAM_NAMES):
    if depth <= 0 or rng.random() < 0.25:
        leaf = rng.randrange(4)
        if leaf == 0:
            return Top()
        if leaf == 1:
            return Bot()
        return Prop(rng.choice(props))
    kind = rng.randrange(6)
    if kind == 0:
        return Or(random_formula(rng, depth - 1, props, names),
                  random_formula(rng, depth - 1, props, names))
    if kind == 1:
        return And(random_formula(rng, depth - 1, props, names),
                   random_formula(rng, depth - 1, props, names))
    if kind == 2:
        return Implies(random_formula(rng, depth - 1, props, names),
                       random_formula(rng, depth - 1, props, names))
    if kind == 3:
        return Iff(random_formula(rng, depth - 1, props, names),
                   random_formula(rng, depth - 1, props, names))
    if kind == 4:
        return Diamond(random_program(rng, depth - 1, names),
                       random_formula(rng, depth - 1, props, names))
    return Box(random_program(rng, depth - 1, names),
               random_formula(rng, depth - 1, props, names))


def broken_godel3() -> TableLattice:
    """Gödel 3-chain with seq deliberately replaced by join; the residuum
    table is left alone, so residuation must fail."""
    n = 3
    join = tuple(tuple(max(i, j) for j in range(n)) for i in range(n))
    meet = tuple(tuple(min(i, j) for j in range(n)) for i in range(n))
    residuum = tuple(tuple(n - 1 if i <= j else j for j in range(n)) for i in range(n))
    return TableLattice(
        elements=("0", "1/2", "1"),
        join_table=join,
        seq_table=join,           # wrong on purpose
        meet_table=meet,
        residuum_table=residuum,
        star_table=(2, 2, 2),
        zero=0,
        one=2,
        label="broken-godel:3",
    )


def godel3_as_table() -> TableLattice:
    """A faithful table copy of the Gödel 3-chain, for exercising the
    table-lattice code paths."""
    n = 3
    join = tuple(tuple(max(i, j) for j in range(n)) for i in range(n))
    meet = tuple(tuple(min(i, j) for j in range(n)) for i in range(n))
    residuum = tuple(tuple(n - 1 if i <= j else j for j in range(n)) for i in range(n))
    return TableLattice(
        elements=("0", "1/2", "1"),
        join_table=join,
        seq_table=meet,
        meet_table=meet,
        residuum_table=residuum,
        star_table=(2, 2, 2),
        zero=0,
        one=2,
        label="godel3-table",
    )
