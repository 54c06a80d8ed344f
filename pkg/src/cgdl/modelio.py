"""Loading and saving of model files.

A model file is a JSON object:

    {
      "lattice":   {"kind": "boolean"} | {"kind": "godel-chain", "levels": n}
                   | {"kind": "lukasiewicz-chain", "levels": n}
                   | {"kind": "table", ...},
      "states":    ["w1", "w2", ...],
      "valuation": {"p": {"w1": "1/2", ...}, ...},
      "programs":  {"a": [{"from": "w1", "to": {"w2": "1"}}, ...],
                    "b": [{"from": "w1", "to": ["w2"]}, ...],
                    "m": [["0", "1"], ["0", "0"]]},
      "queries":   ["<a & b>p", ...]
    }

Value literals: strings are exact rationals on the lattice grid ("1/2");
JSON integers are chain level indices (table lattices: carrier indices).
Missing valuation entries read as zero.  A program can be given as a
multirelation literal (list of from/to entries; a "to" list means
top-weighted targets) or as a row-major matrix, which is read as the
relation with one singleton-support pair per nonzero entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ModelFormatError
from .lattice import Lattice, LatticeError, lattice_from_spec
from .matrices import GdlModel, LatticeMatrix
from .multirel import FuzzyMultirelation, FuzzySet
from .semantics import CgdlModel, Signature

__all__ = [
    "LoadedModel", "load_model_file", "model_from_dict", "model_to_dict",
    "relation_from_literal", "gdl_model_from_cgdl",
]


@dataclass
class LoadedModel:
    model: CgdlModel
    queries: list[str]


def _parse_value(lattice: Lattice, literal, where: str) -> int:
    try:
        return lattice.parse_value(literal)
    except LatticeError as exc:
        raise ModelFormatError(f"{where}: {exc}") from None


def relation_from_literal(lattice: Lattice, states: tuple[str, ...],
                          literal, where: str) -> FuzzyMultirelation:
    """Read a program interpretation from its model-file form."""
    if not isinstance(literal, list):
        raise ModelFormatError(f"{where}: expected a list")
    if literal and all(isinstance(row, list) for row in literal):
        return _relation_from_matrix(lattice, states, literal, where)
    pairs = set()
    ambient = set(states)
    for i, entry in enumerate(literal):
        spot = f"{where}[{i}]"
        if not isinstance(entry, dict) or "from" not in entry or "to" not in entry:
            raise ModelFormatError(f"{spot}: expected an object with 'from' and 'to'")
        source = entry["from"]
        if source not in ambient:
            raise ModelFormatError(f"{spot}: unknown state {source!r}")
        to = entry["to"]
        if isinstance(to, list):
            mapping = {t: lattice.top for t in to}
        elif isinstance(to, dict):
            mapping = {t: _parse_value(lattice, v, spot) for t, v in to.items()}
        else:
            raise ModelFormatError(f"{spot}: 'to' must be a list or an object")
        for target in mapping:
            if target not in ambient:
                raise ModelFormatError(f"{spot}: unknown state {target!r}")
        items = tuple(sorted((t, v) for t, v in mapping.items() if v != lattice.zero))
        if items:
            pairs.add((source, FuzzySet(items)))
    return FuzzyMultirelation(lattice, states, frozenset(pairs))


def _relation_from_matrix(lattice: Lattice, states: tuple[str, ...],
                          rows, where: str) -> FuzzyMultirelation:
    n = len(states)
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ModelFormatError(f"{where}: matrix must be {n}x{n}")
    pairs = set()
    for i, row in enumerate(rows):
        for j, literal in enumerate(row):
            value = _parse_value(lattice, literal, f"{where}[{i}][{j}]")
            if value != lattice.zero:
                pairs.add((states[i], FuzzySet(((states[j], value),))))
    return FuzzyMultirelation(lattice, states, frozenset(pairs))


def model_from_dict(data: dict) -> CgdlModel:
    if not isinstance(data, dict):
        raise ModelFormatError("model file must hold a JSON object")
    try:
        lattice = lattice_from_spec(data.get("lattice", {}))
    except LatticeError as exc:
        raise ModelFormatError(f"lattice: {exc}") from None

    states_raw = data.get("states")
    if not isinstance(states_raw, list) or not states_raw:
        raise ModelFormatError("'states' must be a nonempty list")
    if any(not isinstance(s, str) for s in states_raw):
        raise ModelFormatError("states must be strings")
    states = tuple(states_raw)
    if len(set(states)) != len(states):
        raise ModelFormatError("states must be unique")

    valuation_raw = data.get("valuation", {})
    if not isinstance(valuation_raw, dict):
        raise ModelFormatError("'valuation' must be an object")
    valuation = {}
    for prop, per_state in sorted(valuation_raw.items()):
        if not isinstance(per_state, dict):
            raise ModelFormatError(f"valuation for {prop!r} must be an object")
        for state, literal in per_state.items():
            if state not in states:
                raise ModelFormatError(
                    f"valuation of {prop!r} mentions unknown state {state!r}")
            valuation[(prop, state)] = _parse_value(
                lattice, literal, f"valuation[{prop!r}][{state!r}]")

    programs_raw = data.get("programs", {})
    if not isinstance(programs_raw, dict):
        raise ModelFormatError("'programs' must be an object")
    programs = {
        name: relation_from_literal(lattice, states, literal, f"programs[{name!r}]")
        for name, literal in sorted(programs_raw.items())
    }

    signature = Signature(tuple(sorted(valuation_raw)), tuple(sorted(programs_raw)))
    return CgdlModel(lattice, states, signature, valuation, programs)


def model_to_dict(model: CgdlModel) -> dict:
    """Serialise a model; exact round-trip through model_from_dict."""
    lattice = model.lattice
    valuation = {}
    for prop in model.signature.propositions:
        valuation[prop] = {
            state: lattice.value_str(model.value_of(prop, state))
            for state in model.states
        }
    programs = {
        name: model.programs[name].to_literal()
        for name in model.signature.programs
    }
    return {
        "lattice": lattice.spec(),
        "states": list(model.states),
        "valuation": valuation,
        "programs": programs,
    }


def load_model_file(path: str) -> LoadedModel:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ModelFormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: invalid JSON: {exc}") from None
    queries = data.get("queries", []) if isinstance(data, dict) else []
    if not isinstance(queries, list) or any(not isinstance(q, str) for q in queries):
        raise ModelFormatError("'queries' must be a list of strings")
    return LoadedModel(model_from_dict(data), list(queries))


def gdl_model_from_cgdl(model: CgdlModel) -> GdlModel:
    """Flatten each program to its weight matrix:
    entry (w, w') is the join over pairs (w, phi) of phi(w')."""
    lattice = model.lattice
    n = len(model.states)
    index = {state: i for i, state in enumerate(model.states)}
    matrices = {}
    for name in model.signature.programs:
        rows = [[lattice.zero] * n for _ in range(n)]
        for source, phi in model.programs[name].pairs:
            i = index[source]
            for target, value in phi.items:
                j = index[target]
                rows[i][j] = lattice.join(rows[i][j], value)
        matrices[name] = LatticeMatrix(lattice, tuple(tuple(r) for r in rows))
    return GdlModel(
        lattice=lattice,
        states=model.states,
        propositions=model.signature.propositions,
        valuation=dict(model.valuation),
        program_matrices=matrices,
    )
