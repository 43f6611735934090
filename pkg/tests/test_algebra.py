"""Unit tests for path algebras and their quotients."""

import pytest

from quiver_tilt.algebra import (
    BasicAlgebra,
    Relation,
    builtin_algebras,
    is_lower_triangular_model,
    path_algebra,
    quotient,
)
from quiver_tilt.exceptions import CyclicQuiverError, RelationError
from quiver_tilt.quiver import Path, Quiver, linear_quiver


@pytest.fixture
def square(qq):
    """The commutative square 1 -> 2 -> 4, 1 -> 3 -> 4 with b*a = d*c."""
    q = Quiver.build(
        [1, 2, 3, 4], [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)], "square"
    )
    relation = Relation.from_terms(
        qq, [(1, q.path_from_names(["a", "b"])), (-1, q.path_from_names(["c", "d"]))]
    )
    return BasicAlgebra(q, qq, [relation], "square")


class TestBuiltinAlgebras:
    """Tests for R and S."""

    def test_dimensions(self, r_alg, s_alg):
        """Test that R and S both have dimension 53."""
        assert r_alg.dim == 53
        assert s_alg.dim == 53
        assert s_alg.is_path_algebra
        assert not r_alg.is_path_algebra

    def test_vanishing_table(self, r_alg):
        """Test that e_j R e_i vanishes for i <= j exactly at (1, 9) and (1, 10)."""
        table = r_alg.hom_dimension_table()
        vertices = r_alg.vertices
        zeros = [
            (i, j) for a, i in enumerate(vertices) for j in vertices[a:] if table[(i, j)] == 0
        ]
        assert zeros == [("1", "9"), ("1", "10")]
        assert table[("2", "10")] == 1

    def test_long_path_is_zero(self, r_alg):
        """Test that the killed path multiplies to zero."""
        q = r_alg.quiver
        head = q.path_from_names([f"a{i}" for i in range(2, 9)])
        tail = q.path_from_names(["a1"])
        assert r_alg.multiply(head, tail) == {}
        assert r_alg.basis_between("1", "9") == []

    def test_builtin_names(self, f101):
        """Test the builtin algebra registry."""
        algebras = builtin_algebras(f101)
        assert set(algebras) == {"R", "S", "A10", "E"}
        assert algebras["A10"].dim == 55


class TestBasicAlgebra:
    """Tests for BasicAlgebra products and relations."""

    def test_product_order(self, a3):
        """Test that x*y means y first, then x."""
        q = a3.quiver
        a1, a2 = q.path_from_names(["a1"]), q.path_from_names(["a2"])
        assert a3.multiply(a2, a1) == {q.path_from_names(["a1", "a2"]): 1}
        assert a3.multiply(a1, a2) == {}

    def test_idempotents(self, a3):
        """Test e_i*e_i = e_i and e_i*e_j = 0."""
        e1, e2 = a3.idempotent(1), a3.idempotent(2)
        assert a3.multiply(e1, e1) == e1
        assert a3.multiply(e1, e2) == {}

    def test_commutativity_relation(self, square):
        """Test that the square has dimension 9 and d*c reduces to b*a."""
        q = square.quiver
        assert square.dim == 9
        product = square.multiply(q.path_from_names(["d"]), q.path_from_names(["c"]))
        assert product == {q.path_from_names(["a", "b"]): 1}

    def test_short_relation_not_admissible(self, qq):
        """Test that a relation containing an arrow is rejected."""
        q = linear_quiver(2)
        with pytest.raises(RelationError):
            Relation.monomial(qq, q.path_from_names(["a1"]))

    def test_non_parallel_relation(self, qq):
        """Test that relation terms must share endpoints."""
        q = linear_quiver(4)
        with pytest.raises(RelationError):
            Relation.from_terms(
                qq,
                [(1, q.path_from_names(["a1", "a2"])), (1, q.path_from_names(["a2", "a3"]))],
            )

    def test_cyclic_quiver_rejected(self, qq):
        """Test that algebras need acyclic quivers."""
        q = Quiver.build([1, 2], [("a", 1, 2), ("b", 2, 1)])
        with pytest.raises(CyclicQuiverError):
            path_algebra(q, qq)

    def test_quotient(self, a3):
        """Test that killing a2*a1 in kA3 leaves dimension 5."""
        q = a3.quiver
        killed = quotient(a3, [Relation.monomial(a3.field, q.path_from_names(["a1", "a2"]))])
        assert killed.dim == 5
        assert killed.relations[0].display() == "a2*a1"

    def test_vector_round_trip(self, square):
        """Test to_vector and from_vector on a reduced element."""
        q = square.quiver
        element = square.element({q.path_from_names(["c", "d"]): 2, Path.lazy("1"): 1})
        assert square.from_vector(square.to_vector(element)) == element

    def test_lower_triangular_model(self, a3):
        """Test kA3 against lower triangular 3x3 matrices."""
        assert is_lower_triangular_model(a3)


class TestTableAlgebra:
    """Tests for structure-constant algebras."""

    def test_associativity_and_idempotents(self, square):
        """Test the exhaustive checks on the square."""
        table = square.table
        assert table.dim == 9
        assert table.verify_associativity()
        assert table.verify_idempotents()

    def test_corner_dimensions_match_paths(self, r_alg):
        """Test corner dimensions against basis_between."""
        corners = r_alg.table.corner_dimensions()
        assert corners[("1", "8")] == 1
        assert corners[("1", "9")] == 0
        assert corners[("3", "3")] == 1

    def test_unit(self, a3):
        """Test that the sum of the idempotents is the unit."""
        table = a3.table
        x = table.basis_vector(4)
        assert table.multiply(table.unit, x) == x
