"""Command-line front end.

Subcommands: eval (graded satisfaction of a query on a model file), gdl
(matrix-semantics evaluation of a concurrency-free query), axioms
(counterexample search from flags), search (the same engine from a JSON
config file), audit (lattice axiom audit), compare (sequential-composition
comparison).

Exit codes are a stable contract: 0 success / all checks pass, 1 a
counterexample or axiom failure was found (the search succeeded - this is
a result, not a tool error), 2 parse or usage error, 3 semantic error
(undeclared name, parallel composition under matrix semantics), 4 star
non-convergence.  The seed falls back to the CGDL_SEED environment
variable, then to 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .axioms import DEFAULT_AXIOMS, SearchConfig, search_counterexamples
from .errors import ModelFormatError, StarNonConvergenceError, UndeclaredNameError
from .lattice import LatticeError, audit_axioms, lattice_from_cli_spec, lattice_from_spec
from .matrices import UnsupportedOperatorError, gdl_sat
from .modelio import gdl_model_from_cgdl, load_model_file
from .multirel import SEQ_MODES, SEQ_SUPPORT_GUARDED, compare_seq
from .semantics import DIAMOND_DEFINITION, DIAMOND_MODES, Evaluator
from .syntax import ParseError, parse_formula

__all__ = ["main", "entry"]

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_DIVERGED = 4


def _default_seed() -> int:
    raw = os.environ.get("CGDL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cgdl",
        description="model checking and axiom search for multi-valued "
                    "concurrent dynamic logic",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_eval = sub.add_parser("eval", help="evaluate a query on a model file")
    p_eval.add_argument("model")
    p_eval.add_argument("formula", nargs="?", default=None,
                        help="query text; defaults to the file's queries")
    p_eval.add_argument("--seq-mode", choices=SEQ_MODES, default=SEQ_SUPPORT_GUARDED)
    p_eval.add_argument("--diamond-mode", choices=DIAMOND_MODES,
                        default=DIAMOND_DEFINITION)
    p_eval.add_argument("--star-iterations", type=int, default=None)
    p_eval.add_argument("--trace", action="store_true")
    add_format(p_eval)

    p_gdl = sub.add_parser("gdl", help="evaluate a concurrency-free query "
                                       "under the matrix semantics")
    p_gdl.add_argument("model")
    p_gdl.add_argument("formula", nargs="?", default=None)
    add_format(p_gdl)

    p_axioms = sub.add_parser("axioms", help="search finite models for "
                                             "axiom counterexamples")
    p_axioms.add_argument("--lattice", default="boolean",
                          help="boolean | godel:N | lukasiewicz:N")
    p_axioms.add_argument("--max-states", type=int, default=2)
    p_axioms.add_argument("--programs", type=int, default=2)
    p_axioms.add_argument("--props", type=int, default=2)
    p_axioms.add_argument("--max-support", type=int, default=None)
    p_axioms.add_argument("--max-pairs", type=int, default=None)
    p_axioms.add_argument("--axiom", action="append", default=None,
                          help="axiom id (repeatable); default 2.1-2.7")
    p_axioms.add_argument("--seq-mode", action="append", choices=SEQ_MODES,
                          default=None)
    p_axioms.add_argument("--diamond-mode", action="append",
                          choices=DIAMOND_MODES, default=None)
    group = p_axioms.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true", default=None)
    group.add_argument("--samples", type=int, default=None)
    p_axioms.add_argument("--seed", type=int, default=None)
    p_axioms.add_argument("--jobs", type=int, default=1)
    p_axioms.add_argument("--max-witnesses", type=int, default=None)
    add_format(p_axioms)

    p_search = sub.add_parser("search", help="run a search from a JSON config")
    p_search.add_argument("config")
    p_search.add_argument("--jobs", type=int, default=None)
    add_format(p_search)

    p_audit = sub.add_parser("audit", help="audit the axioms of a lattice")
    p_audit.add_argument("--lattice", required=True)
    add_format(p_audit)

    p_compare = sub.add_parser("compare", help="compare the sequential-"
                                               "composition definitions")
    p_compare.add_argument("--states", type=int, default=3)
    p_compare.add_argument("--samples", type=int, default=100)
    p_compare.add_argument("--seed", type=int, default=None)
    p_compare.add_argument("--jobs", type=int, default=1)
    add_format(p_compare)

    return parser


def _emit(report: dict, text: str, fmt: str):
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        print(text)


def _modes_header(seq_mode: str, diamond_mode: str) -> str:
    return f"modes: seq={seq_mode} diamond={diamond_mode}"


def _run_eval(args) -> int:
    loaded = load_model_file(args.model)
    queries = [args.formula] if args.formula is not None else loaded.queries
    if not queries:
        print("no query given and the model file has none", file=sys.stderr)
        return EXIT_PARSE
    model = loaded.model
    lat = model.lattice
    evaluator = Evaluator(model, seq_mode=args.seq_mode,
                          diamond_mode=args.diamond_mode,
                          star_max_iterations=args.star_iterations,
                          trace=args.trace)
    results = []
    for query in queries:
        formula = parse_formula(query)
        values = [(w, evaluator.value(w, formula)) for w in model.states]
        results.append({
            "query": query,
            "values": [{"state": w, "value": lat.value_str(v)} for w, v in values],
            "valid": all(v == lat.top for _, v in values),
        })
    report = {
        "report": "eval",
        "modes": {"seq": args.seq_mode, "diamond": args.diamond_mode},
        "lattice": lat.label,
        "results": results,
    }
    if args.trace:
        report["trace"] = [
            {"formula": t.formula, "state": t.state, "value": t.value}
            for t in evaluator.trace_entries()
        ]
    lines = [_modes_header(args.seq_mode, args.diamond_mode),
             f"lattice: {lat.label}"]
    for res in results:
        lines.append(f"query: {res['query']}")
        for entry in res["values"]:
            lines.append(f"  {entry['state']:<12} {entry['value']}")
        lines.append(f"  valid here: {'yes' if res['valid'] else 'no'}")
    if args.trace:
        lines.append("trace:")
        for t in report["trace"]:
            lines.append(f"  {t['state']:<12} {t['value']:<8} {t['formula']}")
    _emit(report, "\n".join(lines), args.format)
    return EXIT_OK


def _run_gdl(args) -> int:
    loaded = load_model_file(args.model)
    queries = [args.formula] if args.formula is not None else loaded.queries
    if not queries:
        print("no query given and the model file has none", file=sys.stderr)
        return EXIT_PARSE
    model = gdl_model_from_cgdl(loaded.model)
    lat = model.lattice
    results = []
    for query in queries:
        formula = parse_formula(query)
        values = [(w, gdl_sat(model, w, formula)) for w in model.states]
        results.append({
            "query": query,
            "values": [{"state": w, "value": lat.value_str(v)} for w, v in values],
            "valid": all(v == lat.top for _, v in values),
        })
    report = {
        "report": "gdl",
        "lattice": lat.label,
        "results": results,
    }
    lines = [f"matrix semantics, lattice: {lat.label}"]
    for res in results:
        lines.append(f"query: {res['query']}")
        for entry in res["values"]:
            lines.append(f"  {entry['state']:<12} {entry['value']}")
        lines.append(f"  valid here: {'yes' if res['valid'] else 'no'}")
    _emit(report, "\n".join(lines), args.format)
    return EXIT_OK


def _run_axioms(args) -> int:
    lattice = lattice_from_cli_spec(args.lattice)
    exhaustive = args.samples is None
    config = SearchConfig(
        lattice=lattice,
        max_states=args.max_states,
        num_programs=args.programs,
        num_propositions=args.props,
        max_support=args.max_support,
        max_pairs=args.max_pairs,
        axioms=tuple(args.axiom) if args.axiom else DEFAULT_AXIOMS,
        seq_modes=tuple(args.seq_mode) if args.seq_mode else SEQ_MODES,
        diamond_modes=tuple(args.diamond_mode) if args.diamond_mode else DIAMOND_MODES,
        exhaustive=exhaustive,
        samples=args.samples or 0,
        seed=args.seed if args.seed is not None else _default_seed(),
        jobs=args.jobs,
        max_witnesses=args.max_witnesses,
    )
    report = search_counterexamples(config)
    _emit(report.to_dict(), report.to_text(), args.format)
    return EXIT_COUNTEREXAMPLE if report.found_counterexamples else EXIT_OK


def _run_search(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ModelFormatError(f"cannot read {args.config}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{args.config}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ModelFormatError("search config must be a JSON object")
    lattice = lattice_from_spec(data.get("lattice", {"kind": "boolean"}))
    grid = data.get("value_grid")
    if grid is not None:
        grid = tuple(lattice.parse_value(v) for v in grid)
    known = {
        "max_states", "num_programs", "num_propositions", "max_support",
        "max_pairs", "axioms", "seq_modes", "diamond_modes", "exhaustive",
        "samples", "seed", "max_witnesses",
    }
    extra = set(data) - known - {"lattice", "value_grid"}
    if extra:
        raise ModelFormatError(f"unknown config keys: {sorted(extra)}")
    kwargs = {k: data[k] for k in known if k in data}
    for key in ("axioms", "seq_modes", "diamond_modes"):
        if key in kwargs:
            kwargs[key] = tuple(kwargs[key])
    config = SearchConfig(
        lattice=lattice,
        value_grid=grid,
        jobs=args.jobs if args.jobs is not None else 1,
        **kwargs,
    )
    report = search_counterexamples(config)
    _emit(report.to_dict(), report.to_text(), args.format)
    return EXIT_COUNTEREXAMPLE if report.found_counterexamples else EXIT_OK


def _run_audit(args) -> int:
    lattice = lattice_from_cli_spec(args.lattice)
    report = audit_axioms(lattice)
    data = report.to_dict()
    data["report"] = "audit"
    lines = [f"lattice audit: {report.lattice_label} "
             f"(sample size {report.sample_size})"]
    for entry in report.entries:
        status = "pass" if entry.ok else "FAIL"
        line = f"  {entry.axiom:<32} {status}  ({entry.checked} tuples)"
        if entry.witness:
            line += f"  witness: {entry.witness}"
        lines.append(line)
    lines.append("all axioms hold" if report.all_ok else "axiom failures found")
    _emit(data, "\n".join(lines), args.format)
    return EXIT_OK if report.all_ok else EXIT_COUNTEREXAMPLE


def _run_compare(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    states = tuple(f"s{i}" for i in range(args.states))
    if args.states < 1:
        raise ModelFormatError("--states must be positive")
    report = compare_seq(states, args.samples, seed, jobs=args.jobs)
    _emit(report.to_dict(), report.to_text(), args.format)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching the parse-error contract
        return int(exc.code or 0)
    handlers = {
        "eval": _run_eval,
        "gdl": _run_gdl,
        "axioms": _run_axioms,
        "search": _run_search,
        "audit": _run_audit,
        "compare": _run_compare,
    }
    try:
        return handlers[args.command](args)
    except (ParseError, ModelFormatError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UndeclaredNameError, UnsupportedOperatorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except StarNonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
