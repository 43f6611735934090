"""Path algebras kQ, admissible ideals, and finite-dimensional algebras kQ/I."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Mapping, Optional, Sequence, Union

from quiver_tilt.exceptions import (
    CyclicQuiverError,
    DimensionMismatchError,
    RelationError,
)
from quiver_tilt.quiver import Path, Quiver, compose, linear_quiver, quiver_e
from quiver_tilt.scalars import ExactField, Matrix, Scalar, column_space, rank

logger = logging.getLogger(__name__)

Element = dict[Path, Scalar]
Vector = tuple[Scalar, ...]


def _add_into(target: dict, key: Any, coef: Scalar, field: ExactField) -> None:
    value = field.add(target.get(key, field.zero), coef)
    if value == 0:
        target.pop(key, None)
    else:
        target[key] = value


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths of length >= 2."""
    terms: tuple[tuple[Path, Scalar], ...]

    @classmethod
    def from_terms(
        cls, field: ExactField, terms: Sequence[tuple[Any, Path]]
    ) -> "Relation":
        combined: dict[Path, Scalar] = {}
        for coef, path in terms:
            _add_into(combined, path, field.coerce(coef), field)
        if not combined:
            raise RelationError("relation has no nonzero terms")
        paths = list(combined)
        if len({(p.source, p.target) for p in paths}) != 1:
            raise RelationError("relation terms are not parallel paths")
        for p in paths:
            if len(p) < 2:
                raise RelationError(
                    f"relation term {p} has length {len(p)} < 2; the ideal is not admissible"
                )
        return cls(tuple(combined.items()))

    @classmethod
    def monomial(cls, field: ExactField, path: Path) -> "Relation":
        return cls.from_terms(field, [(1, path)])

    @property
    def source(self) -> str:
        return self.terms[0][0].source

    @property
    def target(self) -> str:
        return self.terms[0][0].target

    @property
    def paths(self) -> list[Path]:
        return [p for p, _ in self.terms]

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def display(self) -> str:
        parts = []
        for path, coef in self.terms:
            word = "*".join(reversed(path.arrow_names))
            parts.append(word if coef == 1 else f"{coef}*{word}")
        return " + ".join(parts)


@dataclass(frozen=True)
class RewriteRule:
    """Leading path -> linear combination of smaller parallel paths."""
    lhs: Path
    rhs: tuple[tuple[Path, Scalar], ...]


class BasicAlgebra:
    """
    The algebra kQ/I of an acyclic quiver with relations.

    The basis consists of the paths in normal form under the length-lex rewriting
    system of the relations; the product x·y is "y first, then x".
    """

    def __init__(
        self,
        quiver: Quiver,
        field: ExactField,
        relations: Sequence[Relation] = (),
        name: str = "",
    ):
        if not quiver.is_acyclic():
            raise CyclicQuiverError("only acyclic quivers give finite-dimensional path algebras")
        self.quiver = quiver
        self.field = field
        self.relations: tuple[Relation, ...] = tuple(relations)
        self.name = name or quiver.name
        for relation in self.relations:
            for path in relation.paths:
                for arrow in path.arrows:
                    if not quiver.has_arrow(arrow.name) or quiver.arrow(arrow.name) != arrow:
                        raise RelationError(f"relation uses arrow {arrow} foreign to the quiver")
        self._rules = tuple(self._make_rule(r) for r in self.relations)
        self._normal_forms: dict[Path, Element] = {}
        self._check_confluence()
        self.basis: tuple[Path, ...] = tuple(
            p for p in quiver.enumerate_paths()
            if not any(p.contains(rule.lhs) for rule in self._rules)
        )
        self._index = {p: i for i, p in enumerate(self.basis)}
        logger.debug("Built algebra %s of dimension %d", self.name, self.dim)

    def __repr__(self) -> str:
        return f"BasicAlgebra({self.name!r}, dim={self.dim}, field={self.field.name})"

    # Rewriting

    def _make_rule(self, relation: Relation) -> RewriteRule:
        f = self.field
        lead = max(relation.paths, key=self.quiver.path_sort_key)
        lead_coef = dict(relation.terms)[lead]
        factor = f.neg(f.inv(lead_coef))
        rhs = tuple((p, f.mul(factor, c)) for p, c in relation.terms if p != lead)
        return RewriteRule(lead, rhs)

    def _rewrite_once(self, path: Path) -> Optional[Element]:
        for rule in self._rules:
            hits = path.occurrences(rule.lhs)
            if not hits:
                continue
            start = hits[0]
            prefix = path.arrows[:start]
            suffix = path.arrows[start + len(rule.lhs):]
            result: Element = {}
            for r, c in rule.rhs:
                _add_into(result, Path(path.source, path.target, prefix + r.arrows + suffix), c,
                          self.field)
            return result
        return None

    def reduce(self, element: Mapping[Path, Scalar]) -> Element:
        """Normal form of a linear combination of paths."""
        f = self.field
        result: Element = {}
        for path, coef in element.items():
            for q, c in self._normal_form_of_path(path).items():
                _add_into(result, q, f.mul(coef, c), f)
        return result

    def _normal_form_of_path(self, path: Path) -> Element:
        cached = self._normal_forms.get(path)
        if cached is not None:
            return cached
        step = self._rewrite_once(path)
        if step is None:
            result = {path: self.field.one}
        else:
            result = {}
            for q, c in step.items():
                for r, d in self._normal_form_of_path(q).items():
                    _add_into(result, r, self.field.mul(c, d), self.field)
        self._normal_forms[path] = result
        return result

    def _check_confluence(self) -> None:
        """Resolve every overlap and inclusion ambiguity or reject the relation set."""
        for i, first in enumerate(self._rules):
            for j, second in enumerate(self._rules):
                a, b = first.lhs.arrows, second.lhs.arrows
                words = []
                if i != j:
                    for start in first.lhs.occurrences(second.lhs):
                        words.append((first.lhs, 0, first, start, second))
                for k in range(1, min(len(a), len(b))):
                    if a[len(a) - k:] == b[:k]:
                        word = Path(first.lhs.source, second.lhs.target, a + b[k:])
                        words.append((word, 0, first, len(a) - k, second))
                for word, s1, r1, s2, r2 in words:
                    left = self.reduce(self._apply_at(word, s1, r1))
                    right = self.reduce(self._apply_at(word, s2, r2))
                    if left != right:
                        raise RelationError(
                            f"relations are not confluent: ambiguity on {word} between "
                            f"{r1.lhs} and {r2.lhs} does not resolve"
                        )

    def _apply_at(self, word: Path, start: int, rule: RewriteRule) -> Element:
        prefix = word.arrows[:start]
        suffix = word.arrows[start + len(rule.lhs):]
        result: Element = {}
        for r, c in rule.rhs:
            _add_into(result, Path(word.source, word.target, prefix + r.arrows + suffix), c,
                      self.field)
        return result

    # Basis and products

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    def index(self, path: Path) -> int:
        return self._index[path]

    def basis_between(self, i: Union[str, int], j: Union[str, int]) -> list[Path]:
        """Normal-form paths from i to j: a basis of e_j·A·e_i."""
        i, j = self.quiver.check_vertex(i), self.quiver.check_vertex(j)
        return [p for p in self.basis if p.source == i and p.target == j]

    def idempotent(self, vertex: Union[str, int]) -> Element:
        v = self.quiver.check_vertex(vertex)
        return {Path.lazy(v): self.field.one}

    def element(self, terms: Union[Path, Mapping[Path, Any]]) -> Element:
        if isinstance(terms, Path):
            terms = {terms: 1}
        return self.reduce({p: self.field.coerce(c) for p, c in terms.items()})

    def multiply(
        self, x: Union[Path, Mapping[Path, Scalar]], y: Union[Path, Mapping[Path, Scalar]]
    ) -> Element:
        """Normal-form product x·y (y first, then x)."""
        x = self.element(x)
        y = self.element(y)
        f = self.field
        product: Element = {}
        for p, c in x.items():
            for q, d in y.items():
                if q.target != p.source:
                    continue
                _add_into(product, compose(p, q), f.mul(c, d), f)
        return self.reduce(product)

    def to_vector(self, element: Mapping[Path, Scalar]) -> Vector:
        vec = [self.field.zero] * self.dim
        for p, c in self.reduce(element).items():
            vec[self._index[p]] = c
        return tuple(vec)

    def from_vector(self, vector: Sequence[Scalar]) -> Element:
        return {self.basis[k]: c for k, c in enumerate(vector) if c != 0}

    @property
    def is_path_algebra(self) -> bool:
        return not self.relations

    def hom_dimension_table(self) -> dict[tuple[str, str], int]:
        """dim e_j A e_i for all ordered vertex pairs (i, j)."""
        return {
            (i, j): len(self.basis_between(i, j)) for i in self.vertices for j in self.vertices
        }

    @cached_property
    def table(self) -> "TableAlgebra":
        return self.to_table()

    def to_table(self) -> "TableAlgebra":
        f = self.field
        rows = []
        for p in self.basis:
            row = []
            for q in self.basis:
                if q.target != p.source:
                    row.append({})
                    continue
                product = self._normal_form_of_path(compose(p, q))
                row.append({self._index[r]: c for r, c in product.items()})
            rows.append(row)
        idempotents = tuple(self.to_vector(self.idempotent(v)) for v in self.vertices)
        return TableAlgebra(
            field=f,
            labels=tuple(p.display() for p in self.basis),
            table=tuple(tuple(r) for r in rows),
            idempotents=idempotents,
            idempotent_labels=self.vertices,
            name=self.name,
        )


class TableAlgebra:
    """
    A finite-dimensional algebra given by structure constants on a labelled basis,
    with a chosen complete set of orthogonal idempotents.
    """

    def __init__(
        self,
        field: ExactField,
        labels: Sequence[str],
        table: Sequence[Sequence[Mapping[int, Scalar]]],
        idempotents: Sequence[Vector],
        idempotent_labels: Sequence[str],
        name: str = "",
    ):
        self.field = field
        self.labels = tuple(labels)
        self.table = tuple(tuple(dict(c) for c in row) for row in table)
        self.idempotents = tuple(tuple(e) for e in idempotents)
        self.idempotent_labels = tuple(idempotent_labels)
        self.name = name
        if len(self.table) != self.dim or any(len(r) != self.dim for r in self.table):
            raise DimensionMismatchError("structure table does not match the basis size")
        if len(self.idempotents) != len(self.idempotent_labels):
            raise DimensionMismatchError("idempotent labels do not match idempotents")

    def __repr__(self) -> str:
        return f"TableAlgebra({self.name!r}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def zero_vector(self) -> Vector:
        return (self.field.zero,) * self.dim

    def basis_vector(self, k: int) -> Vector:
        vec = [self.field.zero] * self.dim
        vec[k] = self.field.one
        return tuple(vec)

    def multiply(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        f = self.field
        out = [f.zero] * self.dim
        ys = [(b, d) for b, d in enumerate(y) if d != 0]
        for a, c in enumerate(x):
            if c == 0:
                continue
            row = self.table[a]
            for b, d in ys:
                cd = f.mul(c, d)
                for k, s in row[b].items():
                    out[k] = f.add(out[k], f.mul(cd, s))
        return tuple(out)

    def add(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        return tuple(self.field.add(a, b) for a, b in zip(x, y))

    def scale(self, c: Scalar, x: Sequence[Scalar]) -> Vector:
        return tuple(self.field.mul(c, a) for a in x)

    @property
    def unit(self) -> Vector:
        total = self.zero_vector()
        for e in self.idempotents:
            total = self.add(total, e)
        return total

    def left_multiplication(self, x: Sequence[Scalar]) -> Matrix:
        """Matrix of b -> x·b in the basis."""
        columns = [self.multiply(x, self.basis_vector(k)) for k in range(self.dim)]
        return Matrix.from_columns(self.field, columns, self.dim)

    def corner_map(self, i: int, j: int) -> Matrix:
        """Matrix of x -> e_j·x·e_i."""
        ei, ej = self.idempotents[i], self.idempotents[j]
        columns = [
            self.multiply(ej, self.multiply(self.basis_vector(k), ei)) for k in range(self.dim)
        ]
        return Matrix.from_columns(self.field, columns, self.dim)

    def corner_basis(self, i: int, j: int) -> Matrix:
        """Columns spanning e_j·A·e_i."""
        return column_space(self.corner_map(i, j))

    def verify_associativity(self) -> bool:
        """Exhaustive check of (ab)c = a(bc) on basis triples."""
        f = self.field
        n = self.dim
        for a in range(n):
            row_a = self.table[a]
            for b in range(n):
                ab = row_a[b]
                for c in range(n):
                    bc = self.table[b][c]
                    left: dict[int, Scalar] = {}
                    for k, s in ab.items():
                        for m, t in self.table[k][c].items():
                            _add_into(left, m, f.mul(s, t), f)
                    right: dict[int, Scalar] = {}
                    for k, s in bc.items():
                        for m, t in row_a[k].items():
                            _add_into(right, m, f.mul(s, t), f)
                    if left != right:
                        logger.info("Associativity fails on basis triple (%d, %d, %d)", a, b, c)
                        return False
        return True

    def verify_idempotents(self) -> bool:
        """e_i·e_j = δ_ij·e_i and Σ e_i is a two-sided unit."""
        zero = self.zero_vector()
        for i, ei in enumerate(self.idempotents):
            for j, ej in enumerate(self.idempotents):
                expected = ei if i == j else zero
                if self.multiply(ei, ej) != expected:
                    return False
        unit = self.unit
        for k in range(self.dim):
            b = self.basis_vector(k)
            if self.multiply(unit, b) != b or self.multiply(b, unit) != b:
                return False
        return True

    def corner_dimensions(self) -> dict[tuple[str, str], int]:
        """dim e_j A e_i keyed by (label_i, label_j)."""
        return {
            (self.idempotent_labels[i], self.idempotent_labels[j]): rank(self.corner_map(i, j))
            for i in range(len(self.idempotents))
            for j in range(len(self.idempotents))
        }


def path_algebra(quiver: Quiver, field: ExactField, name: str = "") -> BasicAlgebra:
    """The path algebra kQ (no relations)."""
    return BasicAlgebra(quiver, field, (), name or f"k{quiver.name}")


def quotient(algebra: BasicAlgebra, relations: Sequence[Relation], name: str = "") -> BasicAlgebra:
    """kQ/I with the relations of `algebra` plus `relations`."""
    if not relations:
        return algebra
    return BasicAlgebra(
        algebra.quiver, algebra.field, algebra.relations + tuple(relations), name or algebra.name
    )


def is_lower_triangular_model(algebra: BasicAlgebra) -> bool:
    """
    Check kA_n ≅ lower triangular n×n matrices via path i -> j ↦ E[j, i].
    """
    q = algebra.quiver
    n = len(q.vertices)
    if not q.is_linear() or algebra.relations or algebra.dim != n * (n + 1) // 2:
        return False

    def unit(path: Path) -> tuple[int, int]:
        return (q.vertex_index(path.target), q.vertex_index(path.source))

    units = [unit(p) for p in algebra.basis]
    if len(set(units)) != algebra.dim or any(r < c for r, c in units):
        return False
    for p in algebra.basis:
        for r in algebra.basis:
            product = algebra.multiply(p, r)
            (a, b), (c, d) = unit(p), unit(r)
            if b != c:
                if product:
                    return False
            elif set(product) != {compose(p, r)} or unit(compose(p, r)) != (a, d):
                return False
    return True


def build_r(field: ExactField) -> BasicAlgebra:
    """R = kA_10 / (α8···α1)."""
    quiver = linear_quiver(10)
    relation = Relation.monomial(field, quiver.path_from_names([f"a{i}" for i in range(1, 9)]))
    return BasicAlgebra(quiver, field, (relation,), "R")


def build_s(field: ExactField) -> BasicAlgebra:
    """S = kE."""
    return path_algebra(quiver_e(), field, "S")


def builtin_algebras(field: ExactField) -> dict[str, BasicAlgebra]:
    return {
        "R": build_r(field),
        "S": build_s(field),
        "A10": path_algebra(linear_quiver(10), field, "kA10"),
        "E": build_s(field),
    }
