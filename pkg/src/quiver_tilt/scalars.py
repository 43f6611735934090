"""Exact scalar arithmetic and exact linear algebra over Q and prime fields."""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, NamedTuple, Optional, Sequence

from quiver_tilt.exceptions import DimensionMismatchError, FieldError

Scalar = Any  # Fraction over Q, int in range(p) over F_p


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class FieldKind(str, Enum):
    """Supported kinds of ground field."""
    RATIONALS = "rationals"
    PRIME_FIELD = "prime_field"


@dataclass(frozen=True)
class ExactField:
    """The rationals (characteristic 0) or the prime field F_p."""
    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise FieldError(f"F_{self.characteristic} is not a prime field")

    @classmethod
    def rationals(cls) -> "ExactField":
        return cls(0)

    @classmethod
    def prime_field(cls, p: int) -> "ExactField":
        return cls(p)

    @classmethod
    def parse(cls, name: str) -> "ExactField":
        """Parse `Q`, `QQ`, `F101`, `F_101`, `F 101` or `GF(101)`."""
        text = name.strip()
        if text in ("Q", "QQ"):
            return cls.rationals()
        match = re.fullmatch(r"(?:F_?\s*|GF\()(\d+)\)?", text)
        if not match:
            raise FieldError(f"Unknown field: {name!r}")
        return cls.prime_field(int(match.group(1)))

    @property
    def kind(self) -> FieldKind:
        return FieldKind.RATIONALS if self.characteristic == 0 else FieldKind.PRIME_FIELD

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def __str__(self) -> str:
        return self.name

    # Arithmetic

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.characteristic == 0 else 1

    def coerce(self, value: Any) -> Scalar:
        """Bring an int, Fraction or numeric string into canonical form."""
        if isinstance(value, str):
            value = Fraction(value)
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"{value} has no image in F_{p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def dot(self, xs: Iterable[Scalar], ys: Iterable[Scalar]) -> Scalar:
        if self.characteristic == 0:
            return sum((x * y for x, y in zip(xs, ys)), Fraction(0))
        return sum(x * y for x, y in zip(xs, ys)) % self.characteristic

    def random_element(self, rng, bound: int = 3) -> Scalar:
        """Draw a scalar from a numpy Generator (small integers over Q)."""
        if self.characteristic == 0:
            return Fraction(int(rng.integers(-bound, bound + 1)))
        return int(rng.integers(0, self.characteristic))

    def format(self, value: Scalar) -> str:
        return str(value)


RATIONALS = ExactField.rationals()


@dataclass(frozen=True)
class Matrix:
    """An immutable rows × cols matrix of exact scalars; 0×n and n×0 are legal."""
    field: ExactField
    rows: int
    cols: int
    data: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatchError(
                f"Matrix data does not have shape {self.rows}x{self.cols}"
            )

    # Construction

    @classmethod
    def from_rows(
        cls, field: ExactField, rows: Sequence[Sequence[Any]], cols: Optional[int] = None
    ) -> "Matrix":
        data = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise DimensionMismatchError("column count required for a matrix with no rows")
            cols = len(data[0])
        return cls(field, len(data), cols, data)

    @classmethod
    def from_columns(
        cls, field: ExactField, columns: Sequence[Sequence[Any]], rows: int
    ) -> "Matrix":
        cols = [tuple(field.coerce(x) for x in c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise DimensionMismatchError("columns of unequal length")
        data = tuple(tuple(c[i] for c in cols) for i in range(rows))
        return cls(field, rows, len(cols), data)

    @classmethod
    def zeros(cls, field: ExactField, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: ExactField, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def column_vector(cls, field: ExactField, values: Sequence[Any]) -> "Matrix":
        return cls.from_rows(field, [[v] for v in values], cols=1)

    # Access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        i, j = index
        return self.data[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> list[tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def flatten(self) -> tuple[Scalar, ...]:
        """Row-major entries."""
        return tuple(x for row in self.data for x in row)

    def to_lists(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.data]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # Arithmetic

    def _check_same(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise DimensionMismatchError("matrices over different fields")
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.add(x, y) for x, y in zip(r, s)) for r, s in zip(self.data, other.data)
        ))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.sub(x, y) for x, y in zip(r, s)) for r, s in zip(self.data, other.data)
        ))

    def __neg__(self) -> "Matrix":
        return self.scale(self.field.neg(self.field.one))

    def scale(self, c: Any) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(f, self.rows, self.cols, tuple(tuple(f.mul(c, x) for x in r) for r in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        f = self.field
        other_cols = other.columns()
        return Matrix(f, self.rows, other.cols, tuple(
            tuple(f.dot(r, c) for c in other_cols) for r in self.data
        ))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(self.columns()))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols), tuple(
            tuple(self.data[i][j] for j in cols) for i in rows
        ))

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        return self.submatrix(range(self.rows), cols)

    def __repr__(self) -> str:
        body = "; ".join(",".join(self.field.format(x) for x in r) for r in self.data)
        return f"Matrix[{self.field.name}]({self.rows}x{self.cols}: {body})"


def hstack(field: ExactField, rows: int, blocks: Sequence[Matrix]) -> Matrix:
    """Concatenate blocks side by side; `rows` fixes the height when there are no blocks."""
    for b in blocks:
        if b.rows != rows:
            raise DimensionMismatchError(f"hstack: block has {b.rows} rows, expected {rows}")
    data = tuple(tuple(x for b in blocks for x in b.data[i]) for i in range(rows))
    return Matrix(field, rows, sum(b.cols for b in blocks), data)


def vstack(field: ExactField, cols: int, blocks: Sequence[Matrix]) -> Matrix:
    """Stack blocks on top of each other; `cols` fixes the width when there are no blocks."""
    for b in blocks:
        if b.cols != cols:
            raise DimensionMismatchError(f"vstack: block has {b.cols} columns, expected {cols}")
    data = tuple(r for b in blocks for r in b.data)
    return Matrix(field, len(data), cols, data)


def block_diagonal(field: ExactField, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = field.zero
    data = []
    col_offset = 0
    for b in blocks:
        for r in b.data:
            data.append((z,) * col_offset + r + (z,) * (cols - col_offset - b.cols))
        col_offset += b.cols
    return Matrix(field, rows, cols, tuple(data))


class RrefResult(NamedTuple):
    """Reduced row-echelon form with its rank and pivot columns."""
    matrix: Matrix
    rank: int
    pivot_cols: tuple[int, ...]


@dataclass(frozen=True)
class Solution:
    """Result of solving a·x = b: a particular solution and a kernel basis of a."""
    consistent: bool
    particular: Optional[Matrix]
    kernel: Matrix


def rref(m: Matrix) -> RrefResult:
    """Canonical reduced row-echelon form by exact Gauss-Jordan elimination."""
    f = m.field
    rows = [list(r) for r in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        piv = next((i for i in range(r, m.rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        pivot_row = rows[r]
        for i in range(m.rows):
            factor = rows[i][c]
            if i != r and factor != 0:
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    result = Matrix(f, m.rows, m.cols, tuple(tuple(x) for x in rows))
    return RrefResult(result, len(pivots), tuple(pivots))


def rank(m: Matrix) -> int:
    return rref(m).rank


def _kernel_from_rref(reduced: Matrix, pivots: Sequence[int], ncols: int) -> Matrix:
    f = reduced.field
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    columns = []
    for fc in free:
        v = [f.zero] * ncols
        v[fc] = f.one
        for row_index, pc in enumerate(pivots):
            v[pc] = f.neg(reduced.data[row_index][fc])
        columns.append(v)
    return Matrix.from_columns(f, columns, ncols)


def kernel_basis(a: Matrix) -> Matrix:
    """Columns spanning ker(a); a·K = 0 and rank(K) = cols(a) - rank(a)."""
    reduced, _, pivots = rref(a)
    return _kernel_from_rref(reduced, pivots, a.cols)


def solve(a: Matrix, b: Matrix) -> Solution:
    """Solve a·x = b exactly for all columns of b at once."""
    if a.rows != b.rows:
        raise DimensionMismatchError(f"solve: a has {a.rows} rows but b has {b.rows}")
    f = a.field
    augmented = hstack(f, a.rows, [a, b])
    reduced, _, pivots = rref(augmented)
    a_pivots = tuple(p for p in pivots if p < a.cols)
    kernel = _kernel_from_rref(reduced, a_pivots, a.cols)
    if len(a_pivots) != len(pivots):
        return Solution(consistent=False, particular=None, kernel=kernel)
    data = [[f.zero] * b.cols for _ in range(a.cols)]
    for row_index, pc in enumerate(a_pivots):
        for k in range(b.cols):
            data[pc][k] = reduced.data[row_index][a.cols + k]
    particular = Matrix(f, a.cols, b.cols, tuple(tuple(r) for r in data))
    return Solution(consistent=True, particular=particular, kernel=kernel)


def column_space(m: Matrix) -> Matrix:
    """A basis of the column space: the pivot columns of m."""
    return m.select_columns(rref(m).pivot_cols)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionMismatchError("inverse of a non-square matrix")
    sol = solve(m, Matrix.identity(m.field, m.rows))
    if not sol.consistent or sol.kernel.cols:
        raise ZeroDivisionError("matrix is singular")
    return sol.particular


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and rank(m) == m.rows


def complement_columns(sub: Matrix) -> Matrix:
    """Standard basis columns completing the column space of `sub` to the whole space."""
    n = sub.rows
    f = sub.field
    pivots = rref(hstack(f, n, [sub, Matrix.identity(f, n)])).pivot_cols
    chosen = [p - sub.cols for p in pivots if p >= sub.cols]
    return Matrix.identity(f, n).select_columns(chosen)


def coordinates(basis: Matrix, vectors: Matrix) -> Matrix:
    """Coordinates of the columns of `vectors` in the independent columns of `basis`."""
    sol = solve(basis, vectors)
    if not sol.consistent:
        raise DimensionMismatchError("vector outside the span of the basis")
    return sol.particular


def in_span(basis: Matrix, vectors: Matrix) -> bool:
    return solve(basis, vectors).consistent
