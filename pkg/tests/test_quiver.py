"""Unit tests for quivers and paths."""

import pytest

from quiver_tilt.exceptions import (
    CyclicQuiverError,
    NotComposableError,
    QuiverError,
    UnknownVertexError,
)
from quiver_tilt.quiver import Path, Quiver, compose, linear_quiver, quiver_e


class TestQuiver:
    """Tests for Quiver construction and path enumeration."""

    def test_linear_quiver_path_count(self):
        """Test that A10 has 55 paths including the lazy ones."""
        q = linear_quiver(10)
        assert len(q.enumerate_paths()) == 55
        assert q.is_linear()

    def test_quiver_e_path_count(self):
        """Test that E has 53 paths."""
        q = quiver_e()
        assert len(q.enumerate_paths()) == 53
        assert not q.is_linear()

    def test_paths_between(self):
        """Test path lists between pairs of vertices."""
        q = quiver_e()
        assert len(q.paths_between("2", "1")) == 1
        assert q.paths_between("9", "1") == []
        assert q.paths_between("3", "3") == [Path.lazy("3")]

    def test_enumeration_order(self):
        """Test length-then-lex ordering with lazy paths first."""
        paths = linear_quiver(3).enumerate_paths()
        assert [len(p) for p in paths] == [0, 0, 0, 1, 1, 2]
        assert paths[3].arrow_names == ("a1",)

    def test_duplicate_arrow_names(self):
        """Test that arrow names must be unique."""
        with pytest.raises(QuiverError):
            Quiver.build([1, 2], [("a", 1, 2), ("a", 2, 1)])

    def test_undeclared_endpoint(self):
        """Test that arrows must join declared vertices."""
        with pytest.raises(QuiverError):
            Quiver.build([1], [("a", 1, 2)])

    def test_cycle_rejected(self):
        """Test that path enumeration refuses oriented cycles."""
        q = Quiver.build([1, 2], [("a", 1, 2), ("b", 2, 1)])
        assert not q.is_acyclic()
        with pytest.raises(CyclicQuiverError):
            q.enumerate_paths()

    def test_unknown_vertex(self):
        """Test lookups of undeclared vertices."""
        with pytest.raises(UnknownVertexError):
            linear_quiver(3).vertex_index("7")

    def test_underlying_graph_is_a_tree(self):
        """Test that E's underlying graph has a single branch vertex of degree 3."""
        graph = quiver_e().underlying_graph()
        assert [v for v in graph.nodes if graph.degree(v) == 3] == ["8"]


class TestPath:
    """Tests for Path."""

    def test_display_is_right_to_left(self):
        """Test the (y|b_r|...|b_1|x) notation."""
        q = linear_quiver(3)
        p = q.path_from_names(["a1", "a2"])
        assert p.display() == "(3|a2|a1|1)"
        assert Path.lazy("2").display() == "(2|2)"

    def test_compose(self):
        """Test composition and the neutral lazy paths."""
        q = linear_quiver(3)
        a1, a2 = q.path_from_names(["a1"]), q.path_from_names(["a2"])
        assert compose(a2, a1).arrow_names == ("a1", "a2")
        assert compose(a1, Path.lazy("1")) == a1
        with pytest.raises(NotComposableError):
            compose(a1, a2)

    def test_contains(self):
        """Test subpath detection."""
        q = linear_quiver(4)
        long = q.path_from_names(["a1", "a2", "a3"])
        assert long.contains(q.path_from_names(["a2", "a3"]))
        assert not q.path_from_names(["a1"]).contains(q.path_from_names(["a2"]))

    def test_lazy_path_endpoints(self):
        """Test that a lazy path cannot change vertex."""
        with pytest.raises(QuiverError):
            Path("1", "2", ())
