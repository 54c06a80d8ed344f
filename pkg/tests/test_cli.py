"""CLI subcommands, the exit-code contract, and report schemas."""

import json
from importlib import resources

import jsonschema
import pytest

from cgdl.cli import main

with resources.files("cgdl").joinpath("schemas/report.schema.json").open() as fh:
    REPORT_SCHEMA = json.load(fh)


MODEL = {
    "lattice": {"kind": "godel-chain", "levels": 3},
    "states": ["w1", "w2"],
    "valuation": {"p": {"w1": "1/2", "w2": "1"}},
    "programs": {
        "a": [{"from": "w1", "to": {"w1": "1/2", "w2": "1"}}],
        "b": [{"from": "w2", "to": {"w1": "1"}}],
    },
    "queries": ["<a>p"],
}


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(MODEL))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv + ["--format", "json"])
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    return code, data, err


class TestEval:
    def test_per_state_values(self, capsys, model_file):
        code, out, _ = run(capsys, ["eval", model_file, "<a>p"])
        assert code == 0
        assert "w1" in out and "1/2" in out
        assert "modes: seq=support-guarded diamond=definition" in out

    def test_json_report(self, capsys, model_file):
        code, data, _ = run_json(capsys, ["eval", model_file, "<a>p"])
        assert code == 0
        values = {v["state"]: v["value"] for v in data["results"][0]["values"]}
        assert values == {"w1": "1/2", "w2": "0"}

    def test_queries_fallback(self, capsys, model_file):
        code, data, _ = run_json(capsys, ["eval", model_file])
        assert code == 0
        assert data["results"][0]["query"] == "<a>p"

    def test_trace_output(self, capsys, model_file):
        code, data, _ = run_json(capsys, ["eval", model_file, "<a>p", "--trace"])
        assert code == 0
        assert any(t["formula"] == "p" for t in data["trace"])

    def test_true_is_valid_everywhere(self, capsys, model_file):
        code, data, _ = run_json(capsys, ["eval", model_file, "true"])
        assert code == 0
        assert data["results"][0]["valid"] is True

    def test_parse_error_exits_2(self, capsys, model_file):
        code, _, err = run(capsys, ["eval", model_file, "<a p"])
        assert code == 2
        assert "column" in err

    def test_undeclared_program_exits_3(self, capsys, model_file):
        code, _, err = run(capsys, ["eval", model_file, "<undeclared>p"])
        assert code == 3
        assert "undeclared" in err

    def test_star_divergence_exits_4(self, capsys, model_file):
        code, _, err = run(capsys, ["eval", model_file, "<a*>p",
                                    "--star-iterations", "1"])
        assert code == 4
        assert "fixed point" in err

    def test_bad_model_file_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{broken")
        code, _, err = run(capsys, ["eval", str(path), "true"])
        assert code == 2

    def test_proof_form_mode_changes_value(self, capsys, model_file):
        _, data, _ = run_json(capsys, ["eval", model_file, "<a>p",
                                       "--diamond-mode", "proof-form"])
        values = {v["state"]: v["value"] for v in data["results"][0]["values"]}
        assert values["w1"] == "1"


class TestGdl:
    def test_matrix_semantics_agrees_here(self, capsys, model_file):
        code, data, _ = run_json(capsys, ["gdl", model_file, "<a>p"])
        assert code == 0
        values = {v["state"]: v["value"] for v in data["results"][0]["values"]}
        assert values["w1"] == "1"   # join over targets, not the product

    def test_parallel_rejected_exits_3(self, capsys, model_file):
        code, _, err = run(capsys, ["gdl", model_file, "<a & b>p"])
        assert code == 3
        assert "parallel" in err


class TestAxioms:
    def test_exhaustive_single_state_passes(self, capsys):
        code, data, _ = run_json(capsys, [
            "axioms", "--lattice", "boolean", "--max-states", "1",
            "--exhaustive"])
        assert code == 0
        assert data["coverage"] == "exhaustive"
        assert data["counterexamples_found"] is False

    def test_sampled_search_finds_graded_failures(self, capsys):
        code, data, _ = run_json(capsys, [
            "axioms", "--lattice", "godel:3", "--max-states", "2",
            "--samples", "150", "--seed", "7", "--max-witnesses", "4"])
        assert code == 1
        assert data["counterexamples_found"] is True
        assert data["witnesses"]

    def test_reports_are_byte_identical_across_runs(self, capsys):
        argv = ["axioms", "--lattice", "godel:3", "--max-states", "2",
                "--samples", "100", "--seed", "7", "--max-witnesses", "3"]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second

    def test_jobs_flag_keeps_bytes(self, capsys):
        argv = ["axioms", "--lattice", "godel:3", "--max-states", "2",
                "--samples", "100", "--seed", "9", "--max-witnesses", "3"]
        _, serial, _ = run(capsys, argv)
        _, parallel, _ = run(capsys, argv + ["--jobs", "2"])
        assert serial == parallel

    def test_axiom_selection(self, capsys):
        code, data, _ = run_json(capsys, [
            "axioms", "--lattice", "boolean", "--max-states", "1",
            "--exhaustive", "--axiom", "2.4", "--axiom", "2.6"])
        assert code == 0
        assert {row["axiom"] for row in data["rows"]} == {"2.4", "2.6"}

    def test_env_seed_fallback(self, capsys, monkeypatch):
        argv = ["axioms", "--lattice", "godel:3", "--max-states", "2",
                "--samples", "60", "--max-witnesses", "2"]
        monkeypatch.setenv("CGDL_SEED", "21")
        _, from_env, _ = run(capsys, argv)
        monkeypatch.delenv("CGDL_SEED")
        _, explicit, _ = run(capsys, argv + ["--seed", "21"])
        assert from_env == explicit

    def test_bad_flags_exit_2(self, capsys):
        assert main(["axioms", "--lattice", "boolean", "--bogus"]) == 2
        code, _, err = run(capsys, ["axioms", "--lattice", "nope:4"])
        assert code == 2


class TestSearchSubcommand:
    def test_config_file(self, capsys, tmp_path):
        config = {
            "lattice": {"kind": "boolean"},
            "max_states": 1,
            "exhaustive": True,
            "axioms": ["2.3", "2.4"],
        }
        path = tmp_path / "search.json"
        path.write_text(json.dumps(config))
        code, data, _ = run_json(capsys, ["search", str(path)])
        assert code == 0
        assert {row["axiom"] for row in data["rows"]} == {"2.3", "2.4"}

    def test_unknown_config_key_exits_2(self, capsys, tmp_path):
        path = tmp_path / "search.json"
        path.write_text(json.dumps({"max_statez": 1}))
        code, _, err = run(capsys, ["search", str(path)])
        assert code == 2


class TestAudit:
    @pytest.mark.parametrize("spec", ["boolean", "godel:1", "godel:5",
                                      "lukasiewicz:11"])
    def test_shipped_lattices_pass(self, capsys, spec):
        code, data, _ = run_json(capsys, ["audit", "--lattice", spec])
        assert code == 0
        assert data["all_ok"] is True

    def test_text_report_lists_axioms(self, capsys):
        code, out, _ = run(capsys, ["audit", "--lattice", "godel:3"])
        assert code == 0
        assert "residuation-galois" in out
        assert "all axioms hold" in out


class TestCompare:
    def test_report_schema_and_exit(self, capsys):
        code, data, _ = run_json(capsys, [
            "compare", "--states", "3", "--samples", "60", "--seed", "1"])
        assert code == 0
        assert len(data["pairs"]) == 6

    def test_byte_identical_reruns(self, capsys):
        argv = ["compare", "--states", "3", "--samples", "80", "--seed", "5"]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second
