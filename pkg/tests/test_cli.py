"""Command-line behaviour: outputs, determinism, and exit codes."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from entwedge import save_state
from entwedge.cli import cli_main
from conftest import bell_state, random_state

BELL_EXPR = "sqrt(1/2) (|0,0> + |1,1>)"
GHZ3_EXPR = "sqrt(1/2) (|0,0,0> + |1,1,1>)"
GHZ4_EXPR = "sqrt(1/2) (|0,0,0,0> + |1,1,1,1>)"


def run_cli(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMeasure:
    def test_bell_text(self, capsys):
        code, out, err = run_cli(capsys, "measure", "--expr", BELL_EXPR)
        assert code == 0
        assert err == ""
        lines = out.splitlines()
        assert lines[0] == "kind: bipartite_concurrence"
        value = float(lines[2].split(": ")[1])
        assert value == pytest.approx(1.0, abs=1e-12)

    def test_bell_machine(self, capsys):
        code, out, _ = run_cli(
            capsys, "measure", "--expr", BELL_EXPR, "--output", "machine"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "measure"
        assert doc["measure_kind"] == "bipartite_concurrence"
        assert doc["norm_constant"] == 2.0
        assert doc["value"] == pytest.approx(1.0, abs=1e-12)
        assert doc["term_sum"] == pytest.approx(0.5, abs=1e-12)
        assert doc["input"]["expr"] == BELL_EXPR
        assert doc["input"]["state"] is None
        assert doc["note"] is None

    def test_ghz3_machine(self, capsys):
        code, out, _ = run_cli(
            capsys, "measure", "--expr", GHZ3_EXPR, "--output", "machine"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["measure_kind"] == "multipartite_e"
        assert doc["value"] == pytest.approx(math.sqrt(6.0), abs=1e-12)

    def test_forced_multipartite_notes_doubling(self, capsys):
        code, out, _ = run_cli(
            capsys, "measure", "--expr", BELL_EXPR, "--measure", "multipartite",
            "--output", "machine",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] == pytest.approx(2.0, abs=1e-12)
        assert "twice the bipartite" in doc["note"]
        _, text_out, _ = run_cli(
            capsys, "measure", "--expr", BELL_EXPR, "--measure", "multipartite"
        )
        assert "note: " in text_out

    def test_norm_constant_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "measure", "--expr", BELL_EXPR, "--norm-constant", "1",
            "--output", "machine",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["norm_constant"] == 1.0
        assert doc["value"] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)

    def test_state_file_input(self, capsys, tmp_path):
        path = str(tmp_path / "bell.json")
        save_state(bell_state(), path)
        code, out, _ = run_cli(
            capsys, "measure", "--state", path, "--output", "machine"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] == pytest.approx(1.0, abs=1e-12)
        assert doc["input"]["state"] == path
        assert doc["input"]["expr"] is None


class TestSeparability:
    def test_product_expression(self, capsys):
        code, out, _ = run_cli(
            capsys, "separability", "--expr", "|0> |1>", "--output", "machine"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["fully_separable"] is True
        assert doc["certificate_error"] <= 1e-12
        assert doc["certificate"] is not None
        assert all(p["separable"] for p in doc["partitions"])

    def test_bell_text(self, capsys):
        code, out, _ = run_cli(capsys, "separability", "--expr", BELL_EXPR)
        assert code == 0
        assert "split {1}: " in out
        assert "entangled" in out
        assert "fully separable: no" in out

    def test_ghz4_machine(self, capsys):
        code, out, _ = run_cli(
            capsys, "separability", "--expr", GHZ4_EXPR, "--output", "machine"
        )
        doc = json.loads(out)
        assert code == 0
        assert len(doc["partitions"]) == 7
        assert doc["fully_separable"] is False
        assert doc["certificate"] is None
        lefts = [tuple(p["left"]) for p in doc["partitions"]]
        assert lefts == [(1,), (2,), (3,), (4,), (1, 2), (1, 3), (1, 4)]
        assert all(
            p["residual"] == pytest.approx(0.5, abs=1e-12) for p in doc["partitions"]
        )

    def test_threshold_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "separability", "--expr", GHZ3_EXPR, "--threshold", "0.6",
            "--output", "machine",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["threshold"] == 0.6
        assert doc["fully_separable"] is True
        # the certificate check still reports a large reconstruction error
        assert doc["certificate_error"] > 0.1


class TestInvariance:
    def test_bell_machine(self, capsys):
        code, out, _ = run_cli(
            capsys, "invariance", "--expr", BELL_EXPR, "--trials", "5",
            "--seed", "11", "--output", "machine",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["measure_kind"] == "bipartite_concurrence"
        assert doc["baseline_value"] == pytest.approx(1.0, abs=1e-12)
        assert doc["seed"] == 11
        assert doc["trials"] == 5
        assert len(doc["deviations"]) == 5
        assert doc["max_abs_deviation"] <= 1e-9

    def test_text_lines(self, capsys):
        code, out, _ = run_cli(
            capsys, "invariance", "--expr", GHZ3_EXPR, "--trials", "3"
        )
        assert code == 0
        assert "measure: multipartite_e" in out
        assert "trials: 3" in out


class TestParse:
    def test_bell(self, capsys):
        code, out, _ = run_cli(capsys, "parse", "--expr", BELL_EXPR)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == f"expression: {BELL_EXPR}"
        assert lines[1] == "dims: 2,2"
        root_half = repr(math.sqrt(2.0) / 2.0)
        assert lines[2] == f"amp |0,0>: re={root_half} im=0.0"
        assert lines[3] == f"amp |1,1>: re={root_half} im=0.0"

    def test_only_nonzero_amplitudes(self, capsys):
        code, out, _ = run_cli(capsys, "parse", "--expr", "0.6 |0> + 0.8 i |2>")
        assert code == 0
        lines = out.splitlines()
        assert lines[1] == "dims: 3"
        assert lines[2] == "amp |0>: re=0.6 im=0.0"
        assert lines[3] == "amp |2>: re=0.0 im=0.8"
        assert len(lines) == 4


class TestDeterminism:
    def repeat(self, capsys, *argv):
        first = run_cli(capsys, *argv)
        second = run_cli(capsys, *argv)
        assert first == second
        return first

    def test_measure(self, capsys, tmp_path, rng):
        path = str(tmp_path / "state.json")
        save_state(random_state(rng, (3, 2, 2)), path)
        self.repeat(capsys, "measure", "--state", path, "--output", "machine")

    def test_separability(self, capsys):
        self.repeat(capsys, "separability", "--expr", GHZ4_EXPR, "--output", "machine")

    def test_invariance(self, capsys):
        code, out, _ = self.repeat(
            capsys, "invariance", "--expr", BELL_EXPR, "--trials", "4",
            "--seed", "7", "--output", "machine",
        )
        assert code == 0
        assert json.loads(out)["seed"] == 7


class TestExitCodes:
    def test_syntax_error_is_one(self, capsys):
        code, out, err = run_cli(capsys, "measure", "--expr", "|0> +")
        assert code == 1
        assert out == ""
        assert err.startswith("error: ")

    def test_ketless_expression_is_one(self, capsys):
        code, _, err = run_cli(capsys, "measure", "--expr", "1 + 2")
        assert code == 1
        assert "no kets" in err

    def test_bad_state_file_is_one(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        code, _, err = run_cli(capsys, "measure", "--state", str(path))
        assert code == 1
        assert "not valid JSON" in err

    def test_missing_state_file_is_one(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "measure", "--state", str(tmp_path / "no.json"))
        assert code == 1
        assert "cannot read" in err

    def test_unnormalized_is_two(self, capsys):
        code, _, err = run_cli(capsys, "measure", "--expr", "|0,0> + |1,1>")
        assert code == 2
        assert "squared norm" in err or "norm" in err

    def test_size_guard_is_three(self, capsys, tmp_path):
        doc = {"dims": [2048, 1024], "amplitudes": []}
        path = tmp_path / "huge.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, _, err = run_cli(capsys, "separability", "--state", str(path))
        assert code == 3
        assert "exceeds" in err

    def test_parse_subcommand_syntax_error(self, capsys):
        code, _, err = run_cli(capsys, "parse", "--expr", "|0,")
        assert code == 1
        assert err.startswith("error: ")

    def test_argparse_rejects_missing_input(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli_main(["measure"])
        assert info.value.code == 2
        capsys.readouterr()

    def test_argparse_rejects_both_inputs(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as info:
            cli_main(["measure", "--state", "x.json", "--expr", "|0>"])
        assert info.value.code == 2
        capsys.readouterr()

    def test_argparse_rejects_unknown_measure(self, capsys):
        with pytest.raises(SystemExit):
            cli_main(["measure", "--expr", BELL_EXPR, "--measure", "spectral"])
        capsys.readouterr()
