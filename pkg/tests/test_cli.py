"""Tests for the qt command-line interface."""

import json
from pathlib import Path

import pytest

from quiver_tilt.cli import create_parser, main

DATA = Path(__file__).resolve().parent.parent / "data"
A3 = str(DATA / "quivers" / "A3.quiver")


@pytest.fixture
def run(tmp_path):
    """main() with the built-in defaults instead of any config.yaml on disk."""
    def invoke(*args):
        return main(["--config", str(tmp_path / "defaults.yaml"), *args])
    return invoke


class TestParser:
    """Tests for argument parsing."""

    def test_subcommands(self):
        """Test that every command is registered."""
        parser = create_parser()
        args = parser.parse_args(["ext", "builtin:R", "S9", "S1", "2"])
        assert args.command == "ext"
        assert args.degree == 2
        args = parser.parse_args(["paper-repro", "--corrupt", "3"])
        assert args.corrupt == 3

    def test_no_command(self, capsys):
        """Test that a bare invocation prints help and fails."""
        assert main([]) == 1
        assert "usage" in capsys.readouterr().out


class TestCommands:
    """Tests for the command handlers."""

    def test_info_json(self, run, tmp_path, capsys):
        """Test info on R with a JSON report."""
        out = tmp_path / "info.json"
        assert run("--json", str(out), "info", "builtin:R") == 0
        assert "Dimension: 53" in capsys.readouterr().out
        report = json.loads(out.read_text())
        assert report["dimension"] == 53
        assert report["field"] == "F101"
        assert report["hom_dimensions"]["1"]["9"] == 0
        assert report["hom_dimensions"]["1"]["8"] == 1

    def test_hom(self, run, capsys):
        """Test the vanishing Hom(P1, P9) over R."""
        assert run("hom", "builtin:R", "P1", "P9") == 0
        assert "dim Hom(P1, P9) = 0" in capsys.readouterr().out

    def test_hom_basis(self, run, tmp_path):
        """Test that --basis writes one element per dimension."""
        out = tmp_path / "hom.json"
        assert run("--json", str(out), "hom", A3, "P2", "P3", "--basis") == 0
        report = json.loads(out.read_text())
        assert report["dimension"] == 1
        assert len(report["basis"]) == 1

    def test_ext(self, run, capsys):
        """Test Ext^2(S9, S1) = 1 over R."""
        assert run("ext", "builtin:R", "S9", "S1", "2") == 0
        assert "= 1" in capsys.readouterr().out

    def test_resolve(self, run, tmp_path):
        """Test the resolution of S9 over R."""
        out = tmp_path / "resolve.json"
        assert run("--json", str(out), "resolve", "builtin:R", "S9") == 0
        report = json.loads(out.read_text())
        assert report["length"] == 2
        assert [t["projectives"] for t in report["terms"]] == [["P9"], ["P8"], ["P1"]]
        assert [t["degree"] for t in report["terms"]] == [0, -1, -2]

    def test_resolve_projective_over_s(self, run, capsys):
        """Test that P3 over S has length 0."""
        assert run("resolve", "builtin:S", "P3") == 0
        assert "length 0" in capsys.readouterr().out

    def test_field_override(self, run, tmp_path):
        """Test --field on a quiver file."""
        out = tmp_path / "info.json"
        assert run("--field", "F7", "--json", str(out), "info", A3) == 0
        assert json.loads(out.read_text())["field"] == "F7"

    def test_classify(self, run, capsys):
        """Test that S is reported as not Dynkin and of infinite type."""
        assert run("classify", "builtin:S") == 0
        out = capsys.readouterr().out
        assert "not Dynkin" in out
        assert "arms [1, 2, 6]" in out
        assert "infinite" in out

    def test_tilt_verify_regular(self, run, capsys):
        """Test that the regular candidate passes."""
        assert run("tilt-verify", A3, "builtin:regular") == 0
        assert "Result: PASS" in capsys.readouterr().out

    def test_tilt_verify_p1_shift(self, run, tmp_path, capsys):
        """Test that P1 + P1[1] exits with 1 and reports the nonzero Hom."""
        out = tmp_path / "tilt.json"
        assert run("--json", str(out), "tilt-verify", A3, "builtin:p1-shift") == 1
        assert "Self-orthogonality: FAIL" in capsys.readouterr().out
        report = json.loads(out.read_text())
        assert not report["self_orthogonality"]["passed"]


class TestErrors:
    """Tests for error reporting."""

    def test_unknown_builtin(self, run, capsys):
        """Test that an unknown builtin algebra exits with 1."""
        assert run("info", "builtin:X") == 1
        assert "Error: " in capsys.readouterr().err

    def test_missing_file(self, run, tmp_path, capsys):
        """Test that a missing quiver file exits with 1."""
        assert run("info", str(tmp_path / "absent.quiver")) == 1
        assert "Error:" in capsys.readouterr().err

    def test_bad_field(self, run, capsys):
        """Test that an invalid --field exits with 1."""
        assert run("--field", "F6", "info", "builtin:R") == 1
        assert "Error:" in capsys.readouterr().err

    def test_bad_module_spec(self, run, capsys):
        """Test that an unknown module spec exits with 1."""
        assert run("hom", "builtin:R", "X1", "P1") == 1
        assert "unrecognized module spec" in capsys.readouterr().err


class TestDeterminism:
    """Tests for byte-identical reports."""

    @pytest.mark.slow
    def test_paper_repro_json_is_stable(self, run, tmp_path):
        """Test that two seeded runs write the same JSON."""
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        for out in (first, second):
            run("--seed", "0", "--json", str(out), "paper-repro", "--fields", "F101")
        assert first.read_bytes() == second.read_bytes()
