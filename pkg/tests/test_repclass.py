"""Unit tests for Dynkin classification and finite representation type."""

import pytest

from quiver_tilt.algebra import Relation, path_algebra, quotient
from quiver_tilt.config import Config
from quiver_tilt.exceptions import QuiverError, UnsupportedShapeError
from quiver_tilt.quiver import Quiver, linear_quiver, quiver_e
from quiver_tilt.repclass import (
    DynkinFamily,
    FiniteTypeStatus,
    GraphClass,
    classify_components,
    classify_underlying_graph,
    enumerate_indecomposables,
    finite_type_certificate,
    gabriel_finite,
    zero_one_summands,
)


def star(arms):
    """A tree with one centre and arms of the given edge lengths."""
    arrows, count = [], 1
    for k, length in enumerate(arms):
        previous = 0
        for step in range(length):
            arrows.append((f"x{k}_{step}", previous, count))
            previous, count = count, count + 1
    return Quiver.build(range(count), arrows, "star")


class TestGraphClassification:
    """Tests for classify_underlying_graph."""

    def test_linear_is_type_a(self):
        """Test that A3 is classified as A3 whatever the orientation."""
        result = classify_underlying_graph(linear_quiver(3))
        assert result.label == "A3"
        flipped = Quiver.build([1, 2, 3], [("a", 2, 1), ("b", 2, 3)])
        assert classify_underlying_graph(flipped).family is DynkinFamily.A

    def test_e_is_not_dynkin(self):
        """Test the arm profile (1, 2, 6) of E at vertex 8."""
        result = classify_underlying_graph(quiver_e())
        assert result.family is DynkinFamily.NOT_DYNKIN
        assert result.branch_vertex == "8"
        assert result.arm_profile == [1, 2, 6]
        assert not result.is_dynkin

    @pytest.mark.parametrize("arms,label", [
        ((1, 1, 2), "D5"),
        ((1, 2, 2), "E6"),
        ((1, 2, 3), "E7"),
        ((1, 2, 4), "E8"),
    ])
    def test_star_shapes(self, arms, label):
        """Test the D and E families by arm lengths."""
        assert classify_underlying_graph(star(arms)).label == label

    def test_degree_four_vertex(self):
        """Test that a vertex of degree 4 is not Dynkin."""
        result = classify_underlying_graph(star((1, 1, 1, 1)))
        assert result.family is DynkinFamily.NOT_DYNKIN
        assert result.branch_vertex == "0"

    def test_cycle_and_double_edge(self):
        """Test that cycles and multiple edges are not Dynkin."""
        square = Quiver.build([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)])
        kronecker = Quiver.build([1, 2], [("a", 1, 2), ("b", 1, 2)])
        assert classify_underlying_graph(square).reason == "cycle in the underlying graph"
        assert classify_underlying_graph(kronecker).reason == "multiple edges"

    def test_disconnected_needs_components(self):
        """Test that a disconnected quiver is classified per component."""
        q = Quiver.build([1, 2, 3], [("a", 1, 2)])
        with pytest.raises(QuiverError):
            classify_underlying_graph(q)
        assert [c.label for c in classify_components(q)] == ["A2", "A1"]
        assert gabriel_finite(q)

    @pytest.mark.parametrize("family,rank,count", [
        (DynkinFamily.A, 10, 55),
        (DynkinFamily.D, 4, 12),
        (DynkinFamily.E, 8, 120),
        (DynkinFamily.NOT_DYNKIN, 10, None),
    ])
    def test_positive_root_counts(self, family, rank, count):
        """Test the number of indecomposables per Dynkin type."""
        assert GraphClass(family=family, rank=rank).positive_root_count() == count


class TestIntervalModules:
    """Tests for enumerate_indecomposables."""

    def test_r_has_53_indecomposables(self, r_alg):
        """Test that the killed path removes [1, 9] and [1, 10]."""
        intervals = enumerate_indecomposables(r_alg, verify=False)
        assert len(intervals) == 53
        shown = [iv.display() for iv in intervals]
        assert "[1, 8]" in shown
        assert "[1, 9]" not in shown
        assert "[2, 10]" in shown

    def test_a3_intervals_are_indecomposable(self, a3):
        """Test the six verified intervals of kA3."""
        intervals = enumerate_indecomposables(a3)
        assert [iv.dims for iv in intervals][:3] == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]
        assert len(intervals) == 6

    def test_needs_linear_quiver(self, s_alg):
        """Test that E is refused."""
        with pytest.raises(UnsupportedShapeError):
            enumerate_indecomposables(s_alg)

    def test_zero_one_modules(self, f101):
        """Test that 0/1 modules over kA3/(a2*a1) decompose into the five intervals."""
        a = path_algebra(linear_quiver(3), f101, "A3")
        killed = quotient(a, [Relation.monomial(f101, a.quiver.path_from_names(["a1", "a2"]))])
        expected = {iv.dims for iv in enumerate_indecomposables(killed)}
        assert len(expected) == 5
        assert zero_one_summands(killed) == expected


class TestFiniteType:
    """Tests for finite_type_certificate."""

    def test_r_is_finite(self, r_alg):
        """Test the interval certificate for R with a few random samples."""
        report = finite_type_certificate(r_alg, samples=3, max_entry=1, seed=1)
        assert report.status is FiniteTypeStatus.FINITE
        assert report.indecomposable_count == 53
        assert report.sample_check.unmatched == 0
        assert report.cited

    @pytest.mark.slow
    def test_r_is_finite_at_configured_sample_size(self, r_alg):
        """Test the interval certificate for R at the default sample budget."""
        samples = Config().repro.finite_type_samples
        report = finite_type_certificate(r_alg, samples=samples)
        assert report.status is FiniteTypeStatus.FINITE
        assert report.sample_check.samples == samples
        assert report.sample_check.unmatched == 0
        assert report.sample_check.types_seen > 1

    def test_s_is_infinite(self, s_alg):
        """Test that S fails Gabriel's criterion."""
        report = finite_type_certificate(s_alg)
        assert report.status is FiniteTypeStatus.INFINITE
        assert report.method == "Gabriel's theorem"
        assert not report.cited

    def test_dynkin_path_algebra_counts_roots(self, qq):
        """Test a D4 path algebra through Gabriel's theorem."""
        a = path_algebra(star((1, 1, 1)), qq, "D4")
        report = finite_type_certificate(a)
        assert report.is_finite
        assert report.indecomposable_count == 12

    def test_sampling_skipped_over_q(self, a3):
        """Test that random decompositions are skipped over Q."""
        report = finite_type_certificate(a3, samples=2)
        assert report.is_finite
        assert report.sample_check.skipped_reason
        assert report.method.startswith("interval enumeration (sample check skipped: ")
        assert report.reason

    def test_unsupported_shape(self, qq):
        """Test that the commutative square is not certified."""
        q = Quiver.build([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)])
        relation = Relation.from_terms(
            qq, [(1, q.path_from_names(["a", "b"])), (-1, q.path_from_names(["c", "d"]))]
        )
        a = quotient(path_algebra(q, qq), [relation])
        report = finite_type_certificate(a)
        assert report.status is FiniteTypeStatus.NOT_CERTIFIED
