"""Unit tests for exact fields and exact linear algebra."""

from fractions import Fraction

import numpy as np
import pytest

from quiver_tilt.exceptions import DimensionMismatchError, FieldError
from quiver_tilt.scalars import (
    ExactField,
    Matrix,
    column_space,
    complement_columns,
    hstack,
    inverse,
    is_invertible,
    kernel_basis,
    rank,
    rref,
    solve,
)


class TestExactField:
    """Tests for ExactField."""

    @pytest.mark.parametrize("text,expected", [
        ("Q", 0), ("QQ", 0), ("F101", 101), ("F_7", 7), ("F 2", 2), ("GF(5)", 5),
    ])
    def test_parse(self, text, expected):
        """Test the accepted field spellings."""
        assert ExactField.parse(text).characteristic == expected

    def test_parse_rejects_composite(self):
        """Test that F_p requires p prime."""
        with pytest.raises(FieldError):
            ExactField.parse("F6")

    def test_parse_rejects_garbage(self):
        """Test that unknown names raise FieldError."""
        with pytest.raises(FieldError):
            ExactField.parse("R")

    def test_names(self, qq, f101):
        """Test canonical field names."""
        assert qq.name == "Q"
        assert f101.name == "F101"

    def test_prime_field_arithmetic(self):
        """Test arithmetic wraps modulo p."""
        f = ExactField.prime_field(7)
        assert f.add(5, 4) == 2
        assert f.neg(3) == 4
        assert f.mul(f.inv(3), 3) == 1
        assert f.coerce(Fraction(1, 2)) == 4

    def test_coerce_rejects_denominator_divisible_by_p(self):
        """Test that 1/7 has no image in F7."""
        with pytest.raises(FieldError):
            ExactField.prime_field(7).coerce(Fraction(1, 7))

    def test_rational_arithmetic_is_exact(self, qq):
        """Test that Q arithmetic keeps fractions."""
        assert qq.div(qq.one, qq.coerce(3)) == Fraction(1, 3)


class TestMatrix:
    """Tests for Matrix and elimination."""

    def test_empty_shapes_are_legal(self, qq):
        """Test 0xn and nx0 matrices."""
        assert Matrix.zeros(qq, 0, 3).shape == (0, 3)
        assert Matrix.zeros(qq, 2, 0).shape == (2, 0)
        assert (Matrix.zeros(qq, 2, 0) @ Matrix.zeros(qq, 0, 3)).is_zero()

    def test_shape_mismatch(self, qq):
        """Test that multiplying incompatible shapes raises."""
        with pytest.raises(DimensionMismatchError):
            Matrix.identity(qq, 2) @ Matrix.identity(qq, 3)

    def test_rref_rank(self, qq):
        """Test rank of a singular matrix."""
        m = Matrix.from_rows(qq, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        result = rref(m)
        assert result.rank == 2
        assert result.pivot_cols == (0, 1)

    def test_kernel_basis(self, qq):
        """Test that a·K = 0 and K has full nullity."""
        m = Matrix.from_rows(qq, [[1, 2, 3], [2, 4, 6]])
        k = kernel_basis(m)
        assert k.cols == 2
        assert (m @ k).is_zero()
        assert rank(k) == 2

    def test_solve(self, qq):
        """Test solving a consistent and an inconsistent system."""
        a = Matrix.from_rows(qq, [[1, 1], [1, -1]])
        b = Matrix.column_vector(qq, [3, 1])
        sol = solve(a, b)
        assert sol.consistent
        assert sol.particular.column(0) == (2, 1)

        singular = Matrix.from_rows(qq, [[1, 1], [1, 1]])
        assert not solve(singular, b).consistent

    def test_inverse(self, qq):
        """Test exact inversion over Q."""
        m = Matrix.from_rows(qq, [[2, 1], [1, 1]])
        assert is_invertible(m)
        assert inverse(m) @ m == Matrix.identity(qq, 2)

    def test_rank_depends_on_characteristic(self, qq):
        """Test that det 2 matrices drop rank over F2."""
        rows = [[1, 1], [1, -1]]
        assert rank(Matrix.from_rows(qq, rows)) == 2
        assert rank(Matrix.from_rows(ExactField.prime_field(2), rows)) == 1

    def test_column_space_and_complement(self, f101):
        """Test that a column space and its complement fill the whole space."""
        m = Matrix.from_rows(f101, [[1, 1], [0, 0], [0, 0]])
        span = column_space(m)
        assert span.cols == 1
        comp = complement_columns(span)
        assert comp.cols == 2
        assert rank(hstack(f101, 3, [span, comp])) == 3

    @pytest.mark.parametrize("field_name", ["Q", "F2", "F101"])
    @pytest.mark.parametrize("seed", range(10))
    def test_row_rank_equals_column_rank(self, field_name, seed):
        """Test rank(A) == rank(A^T) on random rectangular matrices."""
        field = ExactField.parse(field_name)
        rng = np.random.default_rng(seed)
        rows, cols = (int(x) for x in rng.integers(1, 7, size=2))
        m = Matrix.from_rows(
            field, [[field.random_element(rng, 2) for _ in range(cols)] for _ in range(rows)]
        )
        assert rank(m) == rank(m.transpose())
        assert rank(m) <= min(rows, cols)
