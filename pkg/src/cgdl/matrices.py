"""Matrix semantics for the concurrency-free program fragment.

Programs built from atoms with `;`, `+` and `*` are interpreted as square
matrices over the ambient lattice: `+` is entrywise join, `;` is the
row-by-column product with seq as multiplication and join as addition,
and `*` is the Conway block construction.  This gives an independent
evaluation route for the fragment shared with the multirelation
semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import UndeclaredNameError
from .lattice import Lattice, fold
from .syntax import (
    Atomic, Box, Bot, Choice, Diamond, Formula, Iff, Implies, And, Or,
    Par, Program, Prop, Seq, Star, Top,
)

__all__ = [
    "MatrixError",
    "UnsupportedOperatorError",
    "LatticeMatrix",
    "matrix",
    "mat_add",
    "mat_mul",
    "mat_star",
    "mat_identity",
    "mat_zero",
    "GdlModel",
    "gdl_interpret",
    "gdl_sat",
]


class MatrixError(ValueError):
    pass


class UnsupportedOperatorError(ValueError):
    """Raised when a parallel composition reaches the matrix semantics."""


@dataclass(frozen=True)
class LatticeMatrix:
    lattice: Lattice
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise MatrixError("matrix must be square")
            for v in row:
                if not self.lattice.contains(v):
                    raise MatrixError(
                        f"entry {v!r} outside carrier of {self.lattice.label}"
                    )

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def to_literal(self) -> list[list[str]]:
        return [[self.lattice.value_str(v) for v in row] for row in self.rows]


def matrix(lattice: Lattice, rows: Sequence[Sequence[int]]) -> LatticeMatrix:
    return LatticeMatrix(lattice, tuple(tuple(row) for row in rows))


def mat_zero(lattice: Lattice, n: int) -> LatticeMatrix:
    z = lattice.zero
    return LatticeMatrix(lattice, tuple((z,) * n for _ in range(n)))


def mat_identity(lattice: Lattice, n: int) -> LatticeMatrix:
    z, o = lattice.zero, lattice.one
    return LatticeMatrix(
        lattice,
        tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)),
    )


def _require_same_shape(M: LatticeMatrix, N: LatticeMatrix):
    if M.lattice != N.lattice:
        raise MatrixError("matrices live over different lattices")
    if M.n != N.n:
        raise MatrixError(f"dimension mismatch: {M.n} vs {N.n}")


def mat_add(M: LatticeMatrix, N: LatticeMatrix) -> LatticeMatrix:
    _require_same_shape(M, N)
    lat = M.lattice
    return LatticeMatrix(
        lat,
        tuple(
            tuple(lat.join(a, b) for a, b in zip(row_m, row_n))
            for row_m, row_n in zip(M.rows, N.rows)
        ),
    )


def mat_mul(M: LatticeMatrix, N: LatticeMatrix) -> LatticeMatrix:
    _require_same_shape(M, N)
    lat = M.lattice
    n = M.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = lat.zero
            for k in range(n):
                acc = lat.join(acc, lat.seq(M.rows[i][k], N.rows[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return LatticeMatrix(lat, tuple(rows))


# the block construction needs rectangular intermediates, so the star
# recursion works on raw row tuples and only the result is wrapped

def _raw_add(lat, A, B):
    return tuple(
        tuple(lat.join(a, b) for a, b in zip(row_a, row_b))
        for row_a, row_b in zip(A, B)
    )


def _raw_mul(lat, A, B):
    cols = len(B[0]) if B else 0
    rows = []
    for row in A:
        out = []
        for j in range(cols):
            acc = lat.zero
            for k, a in enumerate(row):
                acc = lat.join(acc, lat.seq(a, B[k][j]))
            out.append(acc)
        rows.append(tuple(out))
    return tuple(rows)


def _raw_star(lat, M):
    n = len(M)
    if n == 1:
        return ((lat.star(M[0][0]),),)
    half = (n + 1) // 2
    A = tuple(row[:half] for row in M[:half])
    B = tuple(row[half:] for row in M[:half])
    C = tuple(row[:half] for row in M[half:])
    D = tuple(row[half:] for row in M[half:])
    A_star = _raw_star(lat, A)
    E = _raw_star(lat, _raw_add(lat, D, _raw_mul(lat, C, _raw_mul(lat, A_star, B))))
    top_right = _raw_mul(lat, A_star, _raw_mul(lat, B, E))
    bottom_left = _raw_mul(lat, E, _raw_mul(lat, C, A_star))
    top_left = _raw_add(lat, A_star, _raw_mul(lat, top_right, _raw_mul(lat, C, A_star)))
    rows = [ra + rb for ra, rb in zip(top_left, top_right)]
    rows += [ra + rb for ra, rb in zip(bottom_left, E)]
    return tuple(rows)


def mat_star(M: LatticeMatrix) -> LatticeMatrix:
    """Iteration closure by block decomposition.

    The 1x1 case is the lattice star.  Larger matrices split at the
    midpoint into [[A, B], [C, D]]; with E = (D + C A* B)* the closure is

        [[A* + A* B E C A*,  A* B E],
         [E C A*,            E     ]].

    Any split point gives the same result; the midpoint is fixed so runs
    are reproducible.
    """
    if M.n == 0:
        return M
    return LatticeMatrix(M.lattice, _raw_star(M.lattice, M.rows))


@dataclass
class GdlModel:
    """Finite model for the matrix semantics: states, graded valuation and
    one matrix per atomic program.  Treated as immutable after creation."""

    lattice: Lattice
    states: tuple[str, ...]
    propositions: tuple[str, ...]
    valuation: dict
    program_matrices: dict

    def __post_init__(self):
        n = len(self.states)
        if n == 0:
            raise MatrixError("a model needs at least one state")
        if len(set(self.states)) != n:
            raise MatrixError("model states must be unique")
        for name, mat in self.program_matrices.items():
            if mat.lattice != self.lattice:
                raise MatrixError(f"matrix for {name!r} is over the wrong lattice")
            if mat.n != n:
                raise MatrixError(
                    f"matrix for {name!r} is {mat.n}x{mat.n}, expected {n}x{n}"
                )
        for (prop, state), value in self.valuation.items():
            if state not in self.states:
                raise MatrixError(f"valuation mentions unknown state {state!r}")
            if prop not in self.propositions:
                raise MatrixError(f"valuation mentions undeclared proposition {prop!r}")
            if not self.lattice.contains(value):
                raise MatrixError(f"valuation value {value!r} outside the carrier")

    def value_of(self, prop: str, state: str) -> int:
        if prop not in self.propositions:
            raise UndeclaredNameError("proposition", prop)
        return self.valuation.get((prop, state), self.lattice.zero)

    def index(self, state: str) -> int:
        return self.states.index(state)


def gdl_interpret(model: GdlModel, program: Program) -> LatticeMatrix:
    """Interpret a concurrency-free program as a matrix.

    Parallel composition has no matrix counterpart and raises
    UnsupportedOperatorError.
    """
    if isinstance(program, Atomic):
        try:
            return model.program_matrices[program.name]
        except KeyError:
            raise UndeclaredNameError("program", program.name) from None
    if isinstance(program, Seq):
        return mat_mul(gdl_interpret(model, program.left),
                       gdl_interpret(model, program.right))
    if isinstance(program, Choice):
        return mat_add(gdl_interpret(model, program.left),
                       gdl_interpret(model, program.right))
    if isinstance(program, Star):
        return mat_star(gdl_interpret(model, program.child))
    if isinstance(program, Par):
        raise UnsupportedOperatorError(
            "parallel composition is not part of the matrix semantics"
        )
    raise TypeError(f"not a program: {program!r}")


def gdl_sat(model: GdlModel, state: str, formula: Formula) -> int:
    """Graded satisfaction under the matrix semantics.

    Diamond is the join over successor states of seq(edge weight, value
    there); box is the meet-like product over successor states of
    residuum(edge weight, value there).
    """
    lat = model.lattice
    if state not in model.states:
        raise MatrixError(f"unknown state {state!r}")

    cache: dict = {}
    pcache: dict = {}

    def interp(p: Program) -> LatticeMatrix:
        hit = pcache.get(p)
        if hit is None:
            hit = pcache[p] = gdl_interpret(model, p)
        return hit

    def ev(w: str, f: Formula) -> int:
        key = (f, w)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Top):
            value = lat.top
        elif isinstance(f, Bot):
            value = lat.bottom
        elif isinstance(f, Prop):
            value = model.value_of(f.name, w)
        elif isinstance(f, And):
            value = lat.meet(ev(w, f.left), ev(w, f.right))
        elif isinstance(f, Or):
            value = lat.join(ev(w, f.left), ev(w, f.right))
        elif isinstance(f, Implies):
            value = lat.residuum(ev(w, f.left), ev(w, f.right))
        elif isinstance(f, Iff):
            value = lat.seq(
                lat.residuum(ev(w, f.left), ev(w, f.right)),
                lat.residuum(ev(w, f.right), ev(w, f.left)),
            )
        elif isinstance(f, Diamond):
            mat = interp(f.program)
            i = model.index(w)
            value = fold(lat, "join", [
                lat.seq(mat.entry(i, j), ev(model.states[j], f.child))
                for j in range(len(model.states))
            ])
        elif isinstance(f, Box):
            mat = interp(f.program)
            i = model.index(w)
            value = fold(lat, "seq", [
                lat.residuum(mat.entry(i, j), ev(model.states[j], f.child))
                for j in range(len(model.states))
            ])
        else:
            raise TypeError(f"not a formula: {f!r}")
        cache[key] = value
        return value

    return ev(state, formula)
