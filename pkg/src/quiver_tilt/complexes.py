"""
Bounded cochain complexes of representations and their homotopy category.

Signs: c[l]^n = c^{n+l} with differential (-1)^l·d; the Hom complex has
δ(f) = d∘f - (-1)^n·f∘d in degree n; cone(f)^n = C^{n+1} ⊕ D^n with
differential [[-d_C, 0], [f, d_D]].
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from quiver_tilt.algebra import BasicAlgebra
from quiver_tilt.exceptions import (
    AlgebraMismatchError,
    ChainMapError,
    ComplexError,
    ResolutionTruncatedError,
)
from quiver_tilt.modrep import (
    HomSpace,
    ModuleMap,
    Representation,
    block_map,
    direct_sum,
    hom,
    is_projective,
    kernel,
    projective,
    projective_cover,
    quotient_module,
    random_representation,
    zero_module,
)
from quiver_tilt.scalars import (
    Matrix,
    column_space,
    hstack,
    kernel_basis,
    rref,
    solve,
)

logger = logging.getLogger(__name__)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class Complex:
    """
    objects[k] sits in degree lo + k; differentials[k] is d^{lo+k}: objects[k] -> objects[k+1].
    """
    algebra: BasicAlgebra
    lo: int
    objects: tuple[Representation, ...]
    differentials: tuple[ModuleMap, ...]

    def __post_init__(self):
        if len(self.differentials) != max(len(self.objects) - 1, 0):
            raise ComplexError("a complex needs one differential between consecutive terms")
        for obj in self.objects:
            if obj.algebra is not self.algebra:
                raise AlgebraMismatchError("complex terms over a different algebra")
        for k, d in enumerate(self.differentials):
            if not (d.source == self.objects[k] and d.target == self.objects[k + 1]):
                raise ComplexError(f"differential in degree {self.lo + k} has the wrong endpoints")
        for k in range(len(self.differentials) - 1):
            if not self.differentials[k + 1].compose(self.differentials[k]).is_zero():
                raise ComplexError(f"d∘d is not zero at degree {self.lo + k}")

    @classmethod
    def zero(cls, algebra: BasicAlgebra) -> "Complex":
        return cls(algebra, 0, (), ())

    @classmethod
    def from_module(cls, module: Representation, degree: int = 0) -> "Complex":
        return cls(module.algebra, degree, (module,), ())

    @classmethod
    def from_terms(
        cls,
        algebra: BasicAlgebra,
        lo: int,
        objects: Sequence[Representation],
        differentials: Sequence[ModuleMap],
    ) -> "Complex":
        return cls(algebra, lo, tuple(objects), tuple(differentials))

    def __repr__(self) -> str:
        terms = ", ".join(f"{self.lo + k}: {o.dims}" for k, o in enumerate(self.objects))
        return f"Complex({self.algebra.name}; {terms})"

    @property
    def hi(self) -> int:
        return self.lo + len(self.objects) - 1

    def term(self, n: int) -> Representation:
        k = n - self.lo
        if 0 <= k < len(self.objects):
            return self.objects[k]
        return zero_module(self.algebra)

    def differential(self, n: int) -> ModuleMap:
        """d^n: term(n) -> term(n+1), zero outside the stored range."""
        k = n - self.lo
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        return ModuleMap.zero(self.term(n), self.term(n + 1))

    def support(self) -> list[int]:
        return [self.lo + k for k, o in enumerate(self.objects) if not o.is_zero()]

    def is_zero(self) -> bool:
        return not self.support()

    def degree_bounds(self) -> tuple[int, int]:
        """(min, max) of the nonzero degrees; (0, -1) for the zero complex."""
        support = self.support()
        if not support:
            return (0, -1)
        return (support[0], support[-1])

    @property
    def span(self) -> int:
        lo, hi = self.degree_bounds()
        return hi - lo + 1

    def trimmed(self) -> "Complex":
        support = self.support()
        if not support:
            return Complex.zero(self.algebra)
        lo, hi = support[0], support[-1]
        return Complex(
            self.algebra,
            lo,
            tuple(self.term(n) for n in range(lo, hi + 1)),
            tuple(self.differential(n) for n in range(lo, hi)),
        )

    def term_dims(self) -> dict[int, tuple[int, ...]]:
        return {self.lo + k: o.dims for k, o in enumerate(self.objects)}

    def is_acyclic(self) -> bool:
        return all(homology(self, n).is_zero() for n in range(self.lo, self.hi + 1))


def is_perfect(c: Complex) -> bool:
    """Every term is projective (a bounded complex of projectives)."""
    return all(is_projective(o) for o in c.objects)


@dataclass(frozen=True)
class ChainMap:
    """Per-degree module maps commuting with the differentials; absent degrees are zero."""
    source: Complex
    target: Complex
    components: tuple[tuple[int, ModuleMap], ...]

    @classmethod
    def build(
        cls, source: Complex, target: Complex, components: Mapping[int, ModuleMap]
    ) -> "ChainMap":
        """Build and verify f^{n+1}∘d_C^n = d_D^n∘f^n."""
        if source.algebra is not target.algebra:
            raise AlgebraMismatchError("chain map between complexes over different algebras")
        result = cls(source, target, tuple(sorted(components.items())))
        result.check()
        return result

    @classmethod
    def identity(cls, c: Complex) -> "ChainMap":
        return cls(c, c, tuple((n, ModuleMap.identity(c.term(n))) for n in range(c.lo, c.hi + 1)))

    @classmethod
    def zero(cls, source: Complex, target: Complex) -> "ChainMap":
        return cls(source, target, ())

    def __repr__(self) -> str:
        return f"ChainMap({self.source!r} -> {self.target!r})"

    def at(self, n: int) -> ModuleMap:
        for degree, m in self.components:
            if degree == n:
                return m
        return ModuleMap.zero(self.source.term(n), self.target.term(n))

    def degrees(self) -> range:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo - 1, hi + 1)

    def check(self) -> None:
        for n, m in self.components:
            if not (m.source == self.source.term(n) and m.target == self.target.term(n)):
                raise ChainMapError(f"component in degree {n} has the wrong endpoints")
        for n in self.degrees():
            left = self.at(n + 1).compose(self.source.differential(n))
            right = self.target.differential(n).compose(self.at(n))
            if left != right:
                raise ChainMapError(f"chain map does not commute at degree {n}")

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        if not other.target == self.source:
            raise ChainMapError("chain maps are not composable")
        degrees = sorted({n for n, _ in self.components} & {n for n, _ in other.components})
        return ChainMap(
            other.source,
            self.target,
            tuple((n, self.at(n).compose(other.at(n))) for n in degrees),
        )

    def _combine(self, other: "ChainMap", sign: int) -> "ChainMap":
        if not (self.source == other.source and self.target == other.target):
            raise ChainMapError("chain maps are not parallel")
        degrees = sorted({n for n, _ in self.components} | {n for n, _ in other.components})
        return ChainMap(
            self.source,
            self.target,
            tuple((n, self.at(n) + other.at(n).scale(sign)) for n in degrees),
        )

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return self._combine(other, 1)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self._combine(other, -1)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, tuple((n, m.scale(c)) for n, m in self.components))

    def __neg__(self) -> "ChainMap":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(m.is_zero() for _, m in self.components)


def shift(c: Complex, l: int) -> Complex:
    """c[l]^n = c^{n+l}, differential times (-1)^l."""
    if l == 0:
        return c
    sign = _sign(l)
    diffs = c.differentials if sign == 1 else tuple(d.scale(-1) for d in c.differentials)
    return Complex(c.algebra, c.lo - l, c.objects, diffs)


def shift_map(f: ChainMap, l: int) -> ChainMap:
    """f[l]: c[l] -> d[l], with (f[l])^n = f^{n+l}."""
    return ChainMap(
        shift(f.source, l), shift(f.target, l), tuple((n - l, m) for n, m in f.components)
    )


class ComplexSum(NamedTuple):
    complex: Complex
    inclusions: tuple[ChainMap, ...]
    projections: tuple[ChainMap, ...]


def direct_sum_complexes(complexes: Sequence[Complex], algebra: Optional[BasicAlgebra] = None) -> ComplexSum:
    if not complexes:
        if algebra is None:
            raise ComplexError("empty direct sum needs an algebra")
        return ComplexSum(Complex.zero(algebra), (), ())
    algebra = complexes[0].algebra
    lo = min(c.lo for c in complexes)
    hi = max(c.hi for c in complexes)
    if hi < lo:
        return ComplexSum(Complex.zero(algebra), (), ())
    sums = {n: direct_sum([c.term(n) for c in complexes], algebra) for n in range(lo, hi + 1)}
    diffs = []
    for n in range(lo, hi):
        blocks = {(k, k): c.differential(n) for k, c in enumerate(complexes)}
        diffs.append(block_map(
            [c.term(n) for c in complexes], [c.term(n + 1) for c in complexes], blocks, algebra
        ))
    total = Complex(algebra, lo, tuple(sums[n].module for n in range(lo, hi + 1)), tuple(diffs))
    inclusions, projections = [], []
    for k, c in enumerate(complexes):
        inclusions.append(ChainMap(
            c, total, tuple((n, sums[n].inclusions[k]) for n in range(lo, hi + 1))
        ))
        projections.append(ChainMap(
            total, c, tuple((n, sums[n].projections[k]) for n in range(lo, hi + 1))
        ))
    return ComplexSum(total, tuple(inclusions), tuple(projections))


# Homology


@dataclass(frozen=True)
class HomologyData:
    """H^n = Z^n / B^n with the cycle inclusion, the projection and a linear lift H -> Z."""
    degree: int
    module: Representation
    cycles: Representation
    cycle_inclusion: ModuleMap
    projection: ModuleMap
    lift: tuple[Matrix, ...]


def _factor_through(injection: ModuleMap, g: ModuleMap) -> tuple[Matrix, ...]:
    """Per-vertex X with injection·X = g (g lands in the image)."""
    comps = []
    for inj, gv in zip(injection.components, g.components):
        sol = solve(inj, gv)
        if not sol.consistent:
            raise ComplexError("map does not factor through the submodule")
        comps.append(sol.particular)
    return tuple(comps)


def _right_inverses(surjection: ModuleMap) -> tuple[Matrix, ...]:
    f = surjection.source.field
    return tuple(
        solve(p, Matrix.identity(f, p.rows)).particular for p in surjection.components
    )


def homology_data(c: Complex, n: int) -> HomologyData:
    cycles, inclusion = kernel(c.differential(n))
    boundary = c.differential(n - 1)
    spans = [column_space(x) for x in _factor_through(inclusion, boundary)]
    module, projection = quotient_module(cycles, spans)
    return HomologyData(n, module, cycles, inclusion, projection, _right_inverses(projection))


def homology(c: Complex, n: int) -> Representation:
    """ker d^n / im d^{n-1}."""
    return homology_data(c, n).module


def induced_map(f: ChainMap, n: int) -> ModuleMap:
    """H^n(f): H^n(source) -> H^n(target)."""
    hs, ht = homology_data(f.source, n), homology_data(f.target, n)
    fn = f.at(n)
    comps = []
    for k in range(len(f.source.algebra.vertices)):
        image = fn.components[k] @ hs.cycle_inclusion.components[k] @ hs.lift[k]
        coords = solve(ht.cycle_inclusion.components[k], image).particular
        comps.append(ht.projection.components[k] @ coords)
    return ModuleMap(hs.module, ht.module, tuple(comps))


def is_quasi_iso(f: ChainMap) -> bool:
    """Every induced map on homology is an isomorphism."""
    for n in f.degrees():
        if not induced_map(f, n).is_isomorphism():
            return False
    return True


# Hom complex and homotopy classes


class HomComplex:
    """
    The complex of vector spaces Hom(C, D): degree n is ⊕_i hom(C^i, D^{i+n}),
    coordinates concatenated over i in increasing order.
    """

    def __init__(self, source: Complex, target: Complex):
        if source.algebra is not target.algebra:
            raise AlgebraMismatchError("Hom complex between complexes over different algebras")
        self.source = source
        self.target = target
        self.field = source.algebra.field
        self._pieces: dict[int, list[tuple[int, HomSpace]]] = {}

    def degree_range(self) -> range:
        return range(self.target.lo - self.source.hi, self.target.hi - self.source.lo + 1)

    def piece(self, n: int) -> list[tuple[int, HomSpace]]:
        if n not in self._pieces:
            self._pieces[n] = [
                (i, hom(self.source.term(i), self.target.term(i + n)))
                for i in range(self.source.lo, self.source.hi + 1)
            ]
        return self._pieces[n]

    def dim(self, n: int) -> int:
        return sum(space.dim for _, space in self.piece(n))

    def family(self, n: int, vector: Sequence) -> dict[int, ModuleMap]:
        """The maps f_i: C^i -> D^{i+n} with the given coordinates."""
        result = {}
        offset = 0
        for i, space in self.piece(n):
            result[i] = space.element(list(vector[offset:offset + space.dim]))
            offset += space.dim
        return result

    def coordinates(self, n: int, family: Mapping[int, ModuleMap]) -> Matrix:
        """Column of coordinates of a family {i: C^i -> D^{i+n}}."""
        return self._coordinates_in(n, family)

    def differential(self, n: int) -> Matrix:
        """Matrix of δ: degree n -> degree n+1."""
        source_piece = self.piece(n)
        target_piece = dict(self.piece(n + 1))
        sign = _sign(n)
        columns: list[Matrix] = []
        for i, space in source_piece:
            for b in space.basis:
                # δ(b)_i = d_D∘b ; δ(b)_{i-1} = -(-1)^n b∘d_C
                family = {i: self.target.differential(i + n).compose(b)}
                if (i - 1) in target_piece:
                    family[i - 1] = b.compose(self.source.differential(i - 1)).scale(-sign)
                columns.append(self._coordinates_in(n + 1, family))
        rows = self.dim(n + 1)
        if not columns:
            return Matrix.zeros(self.field, rows, 0)
        return hstack(self.field, rows, columns)

    def _coordinates_in(self, n: int, family: Mapping[int, ModuleMap]) -> Matrix:
        parts = []
        for i, space in self.piece(n):
            g = family.get(i)
            if g is None or space.dim == 0 or g.is_zero():
                parts.append(Matrix.zeros(self.field, space.dim, 1))
            else:
                parts.append(space.coordinates_matrix([g]))
        return _stack_rows(self.field, 1, parts)


def _stack_rows(field, cols: int, parts: Sequence[Matrix]) -> Matrix:
    data = tuple(r for p in parts for r in p.data)
    return Matrix(field, len(data), cols, data)


def hom_complex(c: Complex, d: Complex) -> HomComplex:
    return HomComplex(c, d)


@dataclass(frozen=True)
class HomotopyHom:
    """Hom_K(C, D[l]): cycle representatives of a basis of H^l(Hom(C, D))."""
    source: Complex
    target: Complex
    degree: int
    dimension: int
    representatives: tuple[ChainMap, ...]
    boundaries: Matrix
    representative_matrix: Matrix
    hom_complex: HomComplex

    def class_coordinates(self, g: ChainMap) -> tuple:
        """Coordinates of the homotopy class of g: C -> D[l] in the representative basis."""
        family = {n: m for n, m in g.components}
        vector = self.hom_complex.coordinates(self.degree, family)
        f = self.source.algebra.field
        basis = hstack(f, vector.rows, [self.boundaries, self.representative_matrix])
        sol = solve(basis, vector)
        if not sol.consistent:
            raise ChainMapError("map is not a chain map of the expected degree")
        coords = sol.particular.column(0)
        return tuple(coords[self.boundaries.cols:])

    def is_zero_class(self, g: ChainMap) -> bool:
        return all(x == 0 for x in self.class_coordinates(g))


@lru_cache(maxsize=8192)
def homotopy_hom(c: Complex, d: Complex, l: int) -> HomotopyHom:
    """Chain maps c -> d[l] modulo homotopy, as H^l of the Hom complex."""
    hc = HomComplex(c, d)
    f = c.algebra.field
    size = hc.dim(l)
    shifted = shift(d, l)
    if size == 0:
        empty = Matrix.zeros(f, 0, 0)
        return HomotopyHom(c, d, l, 0, (), empty, empty, hc)
    cycles = kernel_basis(hc.differential(l))
    boundaries = column_space(hc.differential(l - 1))
    combined = hstack(f, size, [boundaries, cycles])
    pivots = [p - boundaries.cols for p in rref(combined).pivot_cols if p >= boundaries.cols]
    reps = cycles.select_columns(pivots)
    representatives = []
    for j in range(reps.cols):
        family = hc.family(l, reps.column(j))
        representatives.append(ChainMap(c, shifted, tuple(sorted(family.items()))))
    logger.debug("dim Hom_K(%r, %r[%d]) = %d", c, d, l, len(representatives))
    return HomotopyHom(c, d, l, len(representatives), tuple(representatives), boundaries, reps, hc)


def is_null_homotopic(g: ChainMap) -> bool:
    return homotopy_hom(g.source, g.target, 0).is_zero_class(g)


# Cones, triangles and truncations


class Cone(NamedTuple):
    """cone(f) with the triangle maps D -> cone(f) -> C[1]."""
    complex: Complex
    inclusion: ChainMap
    projection: ChainMap
    null_homotopy: tuple[tuple[int, ModuleMap], ...]


def cone(f: ChainMap) -> Cone:
    c, d = f.source, f.target
    algebra = c.algebra
    lo = min(c.lo - 1, d.lo)
    hi = max(c.hi - 1, d.hi)
    sums = {n: direct_sum([c.term(n + 1), d.term(n)], algebra) for n in range(lo, hi + 1)}
    diffs = []
    for n in range(lo, hi):
        blocks = {
            (0, 0): c.differential(n + 1).scale(-1),
            (1, 0): f.at(n + 1),
            (1, 1): d.differential(n),
        }
        diffs.append(block_map(
            [c.term(n + 1), d.term(n)], [c.term(n + 2), d.term(n + 1)], blocks, algebra
        ))
    total = Complex(algebra, lo, tuple(sums[n].module for n in range(lo, hi + 1)), tuple(diffs))
    inclusion = ChainMap(d, total, tuple((n, sums[n].inclusions[1]) for n in range(lo, hi + 1)))
    projection = ChainMap(
        total, shift(c, 1), tuple((n, sums[n].projections[0]) for n in range(lo, hi + 1))
    )
    # h^n = (id, 0): C^n -> cone^{n-1} = C^n ⊕ D^{n-1}, with d h + h d = inclusion∘f
    homotopy = tuple(
        (n, sums[n - 1].inclusions[0]) for n in range(lo + 1, hi + 2) if (n - 1) in sums
    )
    return Cone(total, inclusion, projection, homotopy)


def verify_cone_triangle(f: ChainMap) -> bool:
    """The composites around D -> cone -> C[1] vanish up to homotopy."""
    data = cone(f)
    first = data.inclusion.compose(f)
    second = data.projection.compose(data.inclusion)
    return is_null_homotopic(first) and second.is_zero()


class LongExactRow(NamedTuple):
    """Ranks in degree n of H(f), H(inclusion), H(projection) and the homology dimensions."""
    degree: int
    source_dim: int
    target_dim: int
    cone_dim: int
    rank_f: int
    rank_inclusion: int
    rank_projection: int


def long_exact_sequence_ranks(f: ChainMap) -> list[LongExactRow]:
    """The long exact homology sequence of C -> D -> cone(f) -> C[1], degree by degree."""
    data = cone(f)
    c, d, cn = f.source, f.target, data.complex
    lo = min(c.lo, d.lo, cn.lo) - 1
    hi = max(c.hi, d.hi, cn.hi) + 1
    rows = []
    for n in range(lo, hi + 2):
        rows.append(LongExactRow(
            n,
            homology(c, n).total_dim,
            homology(d, n).total_dim,
            homology(cn, n).total_dim,
            sum(induced_map(f, n).ranks()),
            sum(induced_map(data.inclusion, n).ranks()),
            sum(induced_map(data.projection, n).ranks()),
        ))
    return rows


def triangle_is_exact(f: ChainMap) -> bool:
    """rank in + rank out = dim at every spot of the long exact sequence."""
    rows = long_exact_sequence_ranks(f)
    for prev, row, nxt in zip(rows, rows[1:], rows[2:]):
        spots = [
            (prev.rank_projection, row.rank_f, row.source_dim),
            (row.rank_f, row.rank_inclusion, row.target_dim),
            (row.rank_inclusion, row.rank_projection, row.cone_dim),
            (row.rank_projection, nxt.rank_f, nxt.source_dim),
        ]
        if any(a + b != dim for a, b, dim in spots):
            return False
    return True


class Truncation(NamedTuple):
    """0 -> lower -> c -> upper -> 0, degreewise exact."""
    lower: Complex
    upper: Complex
    inclusion: ChainMap
    projection: ChainMap


def truncate(c: Complex, n: int) -> Truncation:
    """Smart truncations c^{≤n} (ends with Z^n) and c^{>n} (starts with C^n/Z^n)."""
    algebra = c.algebra
    if n >= c.hi:
        zero = Complex.zero(algebra)
        return Truncation(c, zero, ChainMap.identity(c), ChainMap.zero(c, zero))
    if n < c.lo:
        zero = Complex.zero(algebra)
        return Truncation(zero, c, ChainMap.zero(zero, c), ChainMap.identity(c))
    cycles, iota = kernel(c.differential(n))
    into_cycles = ModuleMap(
        c.term(n - 1), cycles, _factor_through(iota, c.differential(n - 1))
    ) if n > c.lo else None
    lower_objects = [c.term(k) for k in range(c.lo, n)] + [cycles]
    lower_diffs = [c.differential(k) for k in range(c.lo, n - 1)]
    if into_cycles is not None:
        lower_diffs.append(into_cycles)
    lower = Complex(algebra, c.lo, tuple(lower_objects), tuple(lower_diffs))
    quotient, pi = quotient_module(
        c.term(n), [kernel_basis(m) for m in c.differential(n).components]
    )
    sections = _right_inverses(pi)
    first = ModuleMap(
        quotient,
        c.term(n + 1),
        tuple(d @ s for d, s in zip(c.differential(n).components, sections)),
    )
    upper_objects = [quotient] + [c.term(k) for k in range(n + 1, c.hi + 1)]
    upper_diffs = [first] + [c.differential(k) for k in range(n + 1, c.hi)]
    upper = Complex(algebra, n, tuple(upper_objects), tuple(upper_diffs))
    inclusion = ChainMap(
        lower, c,
        tuple((k, ModuleMap.identity(c.term(k))) for k in range(c.lo, n)) + ((n, iota),),
    )
    projection = ChainMap(
        c, upper,
        ((n, pi),) + tuple((k, ModuleMap.identity(c.term(k))) for k in range(n + 1, c.hi + 1)),
    )
    return Truncation(lower, upper, inclusion, projection)


# Projective replacement and splitting into homology


class Replacement(NamedTuple):
    """A bounded complex of projectives with a surjective quasi-isomorphism onto c."""
    complex: Complex
    map: ChainMap


def projective_replacement(c: Complex, max_len: Optional[int] = None) -> Replacement:
    """
    Build P -> c top-down: P^n is the projective cover of
    Q^n = ker(C^n ⊕ P^{n+1} -> C^{n+1} ⊕ P^{n+2}, (x, p) -> (dx - πp, dp)).
    Below c.lo this continues as a resolution and stops when Q^n = 0.
    """
    algebra = c.algebra
    if is_perfect(c):
        return Replacement(c, ChainMap.identity(c))
    bound = algebra.dim if max_len is None else max_len
    zero = zero_module(algebra)
    terms: dict[int, Representation] = {c.hi + 1: zero, c.hi + 2: zero}
    diffs: dict[int, ModuleMap] = {c.hi + 1: ModuleMap.zero(zero, zero)}
    to_c: dict[int, ModuleMap] = {c.hi + 1: ModuleMap.zero(zero, zero)}
    n = c.hi
    while True:
        if n < c.lo - bound - 1:
            raise ResolutionTruncatedError(
                f"projective replacement did not terminate within {bound} steps below degree {c.lo}"
            )
        sources = [c.term(n), terms[n + 1]]
        targets = [c.term(n + 1), terms[n + 2]]
        blocks = {
            (0, 0): c.differential(n),
            (0, 1): to_c[n + 1].scale(-1),
            (1, 1): diffs[n + 1],
        }
        pairs = direct_sum(sources, algebra)
        q, iota = kernel(block_map(sources, targets, blocks, algebra))
        if q.is_zero() and n < c.lo:
            break
        cover = projective_cover(q)
        lifted = iota.compose(cover.map)
        terms[n] = cover.module
        to_c[n] = pairs.projections[0].compose(lifted)
        diffs[n] = pairs.projections[1].compose(lifted)
        n -= 1
    lo, hi = n + 1, c.hi
    replacement = Complex(
        algebra, lo, tuple(terms[k] for k in range(lo, hi + 1)), tuple(diffs[k] for k in range(lo, hi))
    )
    # q-iso components land in c.term(k), which is zero below c.lo
    pi = ChainMap(replacement, c, tuple((k, to_c[k]) for k in range(lo, hi + 1)))
    logger.debug("Projective replacement of %r: %r", c, replacement)
    return Replacement(replacement, pi)


def has_finite_projective_replacement(c: Complex, max_len: Optional[int] = None) -> bool:
    try:
        projective_replacement(c, max_len)
    except ResolutionTruncatedError:
        return False
    return True


def homology_complex(c: Complex) -> Complex:
    """⊕_i H^i(c)[-i]: homology in its own degree, zero differentials."""
    algebra = c.algebra
    if c.hi < c.lo:
        return Complex.zero(algebra)
    objects = tuple(homology(c, n) for n in range(c.lo, c.hi + 1))
    diffs = tuple(ModuleMap.zero(objects[k], objects[k + 1]) for k in range(len(objects) - 1))
    return Complex(algebra, c.lo, objects, diffs)


@dataclass(frozen=True)
class SplittingResult:
    """
    Whether c ≅ ⊕ H^i(c)[-i]; when it does, the roof c <- P -> X of
    quasi-isomorphisms, otherwise the first degree whose linear system is inconsistent.
    """
    splits: bool
    replacement: Optional[Replacement]
    homology: Complex
    witness: Optional[ChainMap]
    obstruction_degree: Optional[int] = None

    def verify(self) -> bool:
        """Recheck both legs of the roof as quasi-isomorphisms."""
        if not self.splits or self.witness is None or self.replacement is None:
            return False
        return is_quasi_iso(self.replacement.map) and is_quasi_iso(self.witness)


def splits_into_homology(c: Complex, max_len: Optional[int] = None) -> SplittingResult:
    """
    Decide whether c is isomorphic in the derived category to ⊕ H^i(c)[-i].

    With P -> c a projective replacement, such an isomorphism is a chain map
    φ: P -> X inducing the identification H(P) = H(c) = H(X). Each φ^n solves an
    independent linear system on Hom(P^n, H^n); inconsistency in any degree
    rules out every isomorphism, since automorphisms of X act transitively on
    the identifications.
    """
    target = homology_complex(c)
    replacement = projective_replacement(c, max_len)
    p, pi = replacement
    f = c.algebra.field
    components = []
    for n in range(p.lo, p.hi + 1):
        hn = target.term(n)
        if hn.is_zero() or p.term(n).is_zero():
            continue
        cycles, iota = kernel(p.differential(n))
        data_c = homology_data(c, n)
        # q_n ∘ π^n on the cycles of P, computed inside Z^n(c)
        into_cycles = _factor_through(data_c.cycle_inclusion, pi.at(n).compose(iota))
        wanted = ModuleMap(
            cycles,
            data_c.module,
            tuple(q @ x for q, x in zip(data_c.projection.components, into_cycles)),
        )
        space = hom(p.term(n), hn)
        length = len(wanted.flatten())
        if length == 0:
            continue
        if not space.basis:
            if wanted.is_zero():
                continue
            return SplittingResult(False, replacement, target, None, n)
        columns = [b.compose(iota).flatten() for b in space.basis]
        sol = solve(
            Matrix.from_columns(f, columns, length), Matrix.column_vector(f, wanted.flatten())
        )
        if not sol.consistent:
            logger.info("No splitting: the system in degree %d is inconsistent", n)
            return SplittingResult(False, replacement, target, None, n)
        components.append((n, space.element(sol.particular.column(0))))
    witness = ChainMap(p, target, tuple(components))
    return SplittingResult(True, replacement, target, witness)


# Random complexes


def _random_differentials(
    algebra: BasicAlgebra, terms: Sequence[Representation], rng: np.random.Generator
) -> list[ModuleMap]:
    """Random d^k: terms[k] -> terms[k+1] with d∘d = 0, chosen from the top down."""
    f = algebra.field
    diffs: list[Optional[ModuleMap]] = [None] * max(len(terms) - 1, 0)
    for k in reversed(range(len(diffs))):
        space = hom(terms[k], terms[k + 1])
        if space.dim == 0:
            diffs[k] = ModuleMap.zero(terms[k], terms[k + 1])
            continue
        if k + 1 < len(diffs):
            columns = [diffs[k + 1].compose(b).flatten() for b in space.basis]
            allowed = kernel_basis(Matrix.from_columns(f, columns, len(columns[0])))
        else:
            allowed = Matrix.identity(f, space.dim)
        weights = [f.random_element(rng) for _ in range(allowed.cols)]
        coeffs = [f.dot(allowed.row(r), weights) for r in range(allowed.rows)]
        diffs[k] = space.element(coeffs)
    return diffs


def random_projective_complex(
    algebra: BasicAlgebra,
    lo: int,
    hi: int,
    rng: np.random.Generator,
    max_multiplicity: int = 1,
) -> Complex:
    """Random complex of projectives ⊕ P_v^{m_v}, 0 <= m_v <= max_multiplicity, in degrees lo..hi."""
    terms = []
    for _ in range(lo, hi + 1):
        summands = []
        for v in algebra.vertices:
            summands.extend([projective(algebra, v)] * int(rng.integers(0, max_multiplicity + 1)))
        terms.append(direct_sum(summands, algebra).module)
    return Complex(algebra, lo, tuple(terms), tuple(_random_differentials(algebra, terms, rng)))


def random_module_complex(
    algebra: BasicAlgebra,
    lo: int,
    hi: int,
    rng: np.random.Generator,
    max_dim: int = 1,
) -> Complex:
    """Random complex of random representations with vertex dimensions <= max_dim."""
    terms = []
    for _ in range(lo, hi + 1):
        dims = [int(x) for x in rng.integers(0, max_dim + 1, size=len(algebra.vertices))]
        terms.append(random_representation(algebra, dims, rng=rng))
    return Complex(algebra, lo, tuple(terms), tuple(_random_differentials(algebra, terms, rng)))


def random_complex(
    algebra: BasicAlgebra,
    lo: int,
    hi: int,
    seed: int = 0,
    kind: str = "projective",
    size: int = 1,
) -> Complex:
    """Seeded random bounded complex; kind is "projective" or "modules"."""
    rng = np.random.default_rng(seed)
    builders: dict[str, Callable[..., Complex]] = {
        "projective": random_projective_complex,
        "modules": random_module_complex,
    }
    if kind not in builders:
        raise ComplexError(f"unknown random complex kind {kind!r}")
    return builders[kind](algebra, lo, hi, rng, size)
