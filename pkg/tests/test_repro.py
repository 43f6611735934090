"""Tests for the reproduction report over R and S."""

import pytest

from quiver_tilt.repro import (
    CITED_CLAIMS,
    Claim,
    ClaimStatus,
    FieldRun,
    compare_fields,
    paper_repro,
    run_field,
)
from quiver_tilt.scalars import ExactField

FAST = dict(hereditary_samples=2, finite_type_samples=2, euler_samples=2)


@pytest.fixture(scope="module")
def f101_run():
    return run_field(ExactField.prime_field(101), **FAST)


def claim(key, value, status=ClaimStatus.PASS):
    return Claim(key=key, statement=key, status=status, value=value)


class TestRunField:
    """Tests for the claims computed over one field."""

    def test_all_claims_pass_over_f101(self, f101_run):
        """Test that every computed claim passes over F101."""
        failed = [c.key for c in f101_run.claims if c.status is not ClaimStatus.PASS]
        assert failed == []
        assert f101_run.passed

    @pytest.mark.parametrize("key,value", [
        ("dimensions", {"R": 53, "S": 53}),
        ("global_dimensions", {"R": 2, "S": 1}),
        ("vanishing_table", ["1->9", "1->10"]),
        ("gabriel_S", {"dynkin": False, "arms": [1, 2, 6]}),
        ("end_dimension", 53),
    ])
    def test_claim_values(self, f101_run, key, value):
        """Test the recorded values of the finite claims."""
        assert f101_run.claim(key).value == value

    def test_tilting_report_attached(self, f101_run):
        """Test that the full tilting report is kept on the run."""
        assert f101_run.tilting is not None
        assert f101_run.tilting.passed

    def test_corrupted_summand_fails(self):
        """Test that negating d on T_3 fails only the isomorphism claim."""
        run = run_field(ExactField.prime_field(101), corrupt_summand=3, **FAST)
        failed = [c.key for c in run.claims if c.status is ClaimStatus.FAIL]
        assert failed == ["end_isomorphic_to_S"]


class TestCompareFields:
    """Tests for the cross-field comparison."""

    def test_single_run_has_no_comparison(self):
        """Test that one field gives nothing to compare."""
        assert compare_fields([FieldRun(field="F101")]) == []

    def test_detects_differences(self):
        """Test that a value depending on the field is flagged."""
        runs = [
            FieldRun(field="F101", claims=[claim("a", 1), claim("b", 2)]),
            FieldRun(field="Q", claims=[claim("a", 1), claim("b", 3)]),
        ]
        result = {c.key: c.consistent for c in compare_fields(runs)}
        assert result == {"a": True, "b": False}

    def test_radical_method_is_ignored(self):
        """Test that the radical method may differ between fields."""
        value = {"arrows": 9, "relations": 0, "branch_arrow": "8->1"}
        runs = [
            FieldRun(field="F2", claims=[claim("end_isomorphic_to_S", {**value, "radical_method": "nilpotent_ideal"})]),
            FieldRun(field="Q", claims=[claim("end_isomorphic_to_S", {**value, "radical_method": "trace_form"})]),
        ]
        assert compare_fields(runs)[0].consistent


class TestPaperRepro:
    """Tests for the full report."""

    def test_cited_claims_are_listed(self):
        """Test that the non-computable claims are reported as cited."""
        assert all(c.status is ClaimStatus.CITED for c in CITED_CLAIMS)
        assert {c.key for c in CITED_CLAIMS} >= {"derived_equivalence", "pgldim_S"}

    def test_failures_name_field_and_claim(self):
        """Test the failure labels of a corrupted run."""
        report = paper_repro([ExactField.prime_field(101)], corrupt_summand=5, **FAST)
        assert not report.passed
        assert report.failures() == ["F101:end_isomorphic_to_S"]
        assert report.summary_lines()[-1].startswith("CITED")

    @pytest.mark.slow
    def test_two_fields_agree(self):
        """Test the default run over F101 and Q."""
        report = paper_repro([ExactField.prime_field(101), ExactField.rationals()], seed=0)
        assert report.passed
        assert all(c.consistent for c in report.comparison)
        assert len(report.cited) == len(CITED_CLAIMS)
