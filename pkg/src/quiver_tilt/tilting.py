"""Tilting complexes: self-orthogonality, generation, End(T) and its quiver presentation."""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterator, Mapping, Optional, Sequence, Union

import networkx as nx
from networkx.algorithms import isomorphism
from pydantic import BaseModel, Field

from quiver_tilt.algebra import BasicAlgebra, Relation, TableAlgebra, Vector, path_algebra
from quiver_tilt.complexes import (
    ChainMap,
    Complex,
    cone,
    homology,
    homotopy_hom,
    is_perfect,
    shift,
)
from quiver_tilt.exceptions import (
    AlgebraMismatchError,
    ChainMapError,
    ComplexError,
    GeneratorMapError,
    NonBasicAlgebraError,
    UnsupportedShapeError,
)
from quiver_tilt.modrep import (
    ModuleMap,
    canonical_map,
    is_isomorphic,
    left_multiplication_map,
    projective,
)
from quiver_tilt.quiver import Path, Quiver
from quiver_tilt.scalars import Matrix, column_space, hstack, kernel_basis, rank, rref

logger = logging.getLogger(__name__)


# Jacobson radical


class RadicalMethod(str, Enum):
    """How the Jacobson radical is computed."""
    AUTO = "auto"
    TRACE_FORM = "trace_form"
    NILPOTENT_IDEAL = "nilpotent_ideal"


@dataclass(frozen=True)
class Radical:
    """Columns spanning rad(A), the method used and the nilpotency index."""
    basis: Matrix
    method: RadicalMethod
    nilpotency_index: int

    @property
    def dim(self) -> int:
        return self.basis.cols


def _products(a: TableAlgebra, left: Matrix, right: Matrix) -> Matrix:
    columns = [
        a.multiply(left.column(i), right.column(j))
        for i in range(left.cols)
        for j in range(right.cols)
    ]
    if not columns:
        return Matrix.zeros(a.field, a.dim, 0)
    return column_space(Matrix.from_columns(a.field, columns, a.dim))


def _nilpotency_index(a: TableAlgebra, ideal: Matrix) -> Optional[int]:
    """Least k with ideal^k = 0, or None if the powers stabilize above zero."""
    power, k = ideal, 1
    while power.cols:
        nxt = _products(a, power, ideal)
        if nxt.cols == power.cols:
            return None
        power, k = nxt, k + 1
    return k - 1 if ideal.cols == 0 else k


def _trace_form_radical(a: TableAlgebra) -> Matrix:
    f = a.field
    traces = [
        sum((row[k].get(k, f.zero) for k in range(a.dim)), f.zero) for row in a.table
    ]
    traces = [f.coerce(t) for t in traces]
    gram = []
    for x in range(a.dim):
        gram.append([
            f.dot((a.table[x][y].get(m, f.zero) for m in range(a.dim)), traces)
            for y in range(a.dim)
        ])
    return kernel_basis(Matrix.from_rows(f, gram, cols=a.dim))


def _two_sided_ideal(a: TableAlgebra, generators: Matrix) -> Matrix:
    span = column_space(generators)
    units = Matrix.identity(a.field, a.dim)
    while True:
        grown = column_space(hstack(a.field, a.dim, [
            span, _products(a, units, span), _products(a, span, units)
        ]))
        if grown.cols == span.cols:
            return span
        span = grown


def _peirce_ideal_radical(a: TableAlgebra) -> Matrix:
    """The ideal generated by the off-diagonal Peirce pieces, certified nilpotent with A/I ≅ k^n."""
    n = len(a.idempotents)
    pieces = [a.corner_basis(i, j) for i in range(n) for j in range(n) if i != j]
    generators = hstack(a.field, a.dim, pieces) if pieces else Matrix.zeros(a.field, a.dim, 0)
    ideal = _two_sided_ideal(a, generators)
    if _nilpotency_index(a, ideal) is None or a.dim - ideal.cols != n:
        raise NonBasicAlgebraError(
            "the off-diagonal ideal is not a nilpotent ideal with semisimple quotient k^n"
        )
    return ideal


def jacobson_radical(
    a: TableAlgebra, method: Union[RadicalMethod, str] = RadicalMethod.AUTO
) -> Radical:
    """
    rad(A) as the radical of the trace form when char k = 0 or char k > dim A,
    otherwise by the nilpotent-ideal search.
    """
    method = RadicalMethod(method)
    p = a.field.characteristic
    if method is RadicalMethod.AUTO:
        trace_ok = p == 0 or p > a.dim
        method = RadicalMethod.TRACE_FORM if trace_ok else RadicalMethod.NILPOTENT_IDEAL
    if method is RadicalMethod.TRACE_FORM:
        basis = _trace_form_radical(a)
    else:
        basis = _peirce_ideal_radical(a)
    index = _nilpotency_index(a, basis)
    if index is None:
        raise NonBasicAlgebraError(f"{method.value} radical is not nilpotent")
    logger.debug("rad(%s): dim %d by %s, nilpotent of index %d", a.name, basis.cols, method.value, index)
    return Radical(basis, method, index)


# Quiver presentations


@dataclass(frozen=True)
class Presentation:
    """
    The quiver of a basic algebra (arrows i -> j counted by dim e_j(rad/rad²)e_i)
    with a minimal set of relations for the surjection kQ -> A.
    """
    quiver: Quiver
    relations: tuple[Relation, ...]
    kernel_dimension: int
    arrow_lifts: tuple[tuple[str, Vector], ...]
    radical: Radical

    @property
    def relation_count(self) -> int:
        return len(self.relations)

    def arrow_pairs(self) -> list[tuple[str, str]]:
        return [(a.source, a.target) for a in self.quiver.arrows]


def _vector_in(a: TableAlgebra, v: Sequence) -> Vector:
    return tuple(a.field.coerce(x) for x in v)


def quiver_presentation(
    a: Union[TableAlgebra, BasicAlgebra], method: Union[RadicalMethod, str] = RadicalMethod.AUTO
) -> Presentation:
    if isinstance(a, BasicAlgebra):
        a = a.table
    f = a.field
    n = len(a.idempotents)
    if not a.verify_idempotents():
        raise NonBasicAlgebraError("idempotents are not a complete orthogonal set")
    rad = jacobson_radical(a, method)
    if a.dim - rad.dim != n:
        raise NonBasicAlgebraError(
            f"A/rad has dimension {a.dim - rad.dim}, expected {n} for a basic algebra"
        )
    rad2 = _products(a, rad.basis, rad.basis)
    labels = a.idempotent_labels
    arrows, lifts = [], []
    for i in range(n):
        for j in range(n):
            corner = a.corner_map(i, j)
            top_part = column_space(corner @ rad.basis)
            low_part = column_space(corner @ rad2) if rad2.cols else Matrix.zeros(f, a.dim, 0)
            combined = hstack(f, a.dim, [low_part, top_part])
            chosen = [p - low_part.cols for p in rref(combined).pivot_cols if p >= low_part.cols]
            for k, c in enumerate(chosen):
                name = f"x{i + 1}_{j + 1}" + (f"_{k + 1}" if len(chosen) > 1 else "")
                arrows.append((name, labels[i], labels[j]))
                lifts.append((name, _vector_in(a, top_part.column(c))))
    quiver = Quiver.build(labels, arrows, f"Q({a.name})" if a.name else "")
    logger.info("Presentation quiver of %s: %d vertices, %d arrows", a.name, n, len(arrows))
    if not quiver.is_acyclic():
        raise UnsupportedShapeError("relations are only computed for acyclic presentation quivers")
    free = path_algebra(quiver, f)
    lift_of = dict(lifts)
    index_of = {label: k for k, label in enumerate(labels)}

    def image(path: Path) -> Vector:
        if path.is_lazy:
            return a.idempotents[index_of[path.source]]
        value = lift_of[path.arrows[0].name]
        for arrow in path.arrows[1:]:
            value = a.multiply(lift_of[arrow.name], value)
        return value

    images = [image(p) for p in free.basis]
    if rank(Matrix.from_columns(f, images, a.dim)) != a.dim:
        raise NonBasicAlgebraError("arrow lifts do not generate the algebra")
    kernel_vectors: list[dict[Path, Any]] = []
    for i in labels:
        for j in labels:
            paths = free.basis_between(i, j)
            if not paths:
                continue
            cols = Matrix.from_columns(f, [images[free.index(p)] for p in paths], a.dim)
            ker = kernel_basis(cols)
            for c in range(ker.cols):
                kernel_vectors.append({p: x for p, x in zip(paths, ker.column(c)) if x != 0})
    relations = _minimal_relations(free, kernel_vectors)
    return Presentation(quiver, tuple(relations), len(kernel_vectors), tuple(lifts), rad)


def _minimal_relations(free: BasicAlgebra, kernel: Sequence[Mapping[Path, Any]]) -> list[Relation]:
    """Kernel elements spanning I modulo J·I + I·J."""
    f = free.field
    if not kernel:
        return []
    arrows = [free.element(Path.of_arrows([a])) for a in free.quiver.arrows]
    products = []
    for k in kernel:
        for arrow in arrows:
            for prod in (free.multiply(arrow, k), free.multiply(k, arrow)):
                if prod:
                    products.append(free.to_vector(prod))
    base = (
        column_space(Matrix.from_columns(f, products, free.dim))
        if products else Matrix.zeros(f, free.dim, 0)
    )
    vectors = Matrix.from_columns(f, [free.to_vector(k) for k in kernel], free.dim)
    combined = hstack(f, free.dim, [base, vectors])
    chosen = [p - base.cols for p in rref(combined).pivot_cols if p >= base.cols]
    return [
        Relation.from_terms(f, [(c, p) for p, c in kernel[idx].items()]) for idx in chosen
    ]


# Matching against a target algebra


@dataclass(frozen=True)
class MatchResult:
    matched: bool
    reason: str
    graph_isomorphic: bool
    relation_counts: tuple[int, int]
    vertex_mapping: Optional[dict] = field(default=None, compare=False)


def presentations_match(p: Presentation, q: Presentation) -> tuple[bool, Optional[dict]]:
    """Graph isomorphism of the presentation quivers (with multiplicities)."""
    matcher = isomorphism.MultiDiGraphMatcher(p.quiver.to_networkx(), q.quiver.to_networkx())
    if matcher.is_isomorphic():
        return True, dict(matcher.mapping)
    return False, None


GeneratorMap = Mapping[str, Any]


def identity_generator_map(a: BasicAlgebra) -> dict[str, Vector]:
    """Each vertex to its idempotent, each arrow to itself."""
    result: dict[str, Vector] = {}
    for v in a.vertices:
        result[v] = a.to_vector(a.idempotent(v))
    for arrow in a.quiver.arrows:
        result[arrow.name] = a.to_vector({Path.of_arrows([arrow]): a.field.one})
    return result


def match_presentation(
    a: Union[TableAlgebra, BasicAlgebra],
    b: BasicAlgebra,
    generator_map: GeneratorMap,
    method: Union[RadicalMethod, str] = RadicalMethod.AUTO,
) -> MatchResult:
    """
    Whether the assignment of b's idempotents and arrows to elements of a
    extends to an algebra isomorphism b -> a.
    """
    table = a.table if isinstance(a, BasicAlgebra) else a
    f = b.field
    if table.field != f:
        raise AlgebraMismatchError("algebras over different fields")
    pa, pb = quiver_presentation(table, method), quiver_presentation(b, method)
    iso, mapping = presentations_match(pa, pb)
    counts = (pa.relation_count, pb.relation_count)
    if not iso or counts[0] != counts[1]:
        return MatchResult(False, "quiver presentations differ", iso, counts, mapping)
    required = list(b.vertices) + [arrow.name for arrow in b.quiver.arrows]
    missing = [g for g in required if g not in generator_map]
    if missing:
        raise GeneratorMapError(f"generator map misses {missing}")
    images: dict[str, Vector] = {
        g: _vector_in(table, generator_map[g]) for g in required
    }

    def path_image(path: Path) -> Vector:
        if path.is_lazy:
            return images[path.source]
        value = images[path.arrows[0].name]
        for arrow in path.arrows[1:]:
            value = table.multiply(images[arrow.name], value)
        return value

    basis_images = [path_image(p) for p in b.basis]

    def linear_image(vector: Sequence) -> Vector:
        total = table.zero_vector()
        for c, img in zip(vector, basis_images):
            if c != 0:
                total = table.add(total, table.scale(c, img))
        return total

    for p in b.basis:
        for q in b.basis:
            expected = linear_image(b.to_vector(b.multiply(p, q)))
            actual = table.multiply(path_image(p), path_image(q))
            if expected != actual:
                return MatchResult(
                    False, f"products differ on {p.display()}·{q.display()}", iso, counts, mapping
                )
    if table.dim != b.dim:
        return MatchResult(False, "dimensions differ", iso, counts, mapping)
    if rank(Matrix.from_columns(f, basis_images, table.dim)) != table.dim:
        return MatchResult(False, "generator map is not bijective", iso, counts, mapping)
    return MatchResult(True, "isomorphism along the generator map", iso, counts, mapping)


# Candidates and witnesses


@dataclass(frozen=True)
class SummandStep:
    label: str

    def describe(self) -> str:
        return f"T_{self.label}"


@dataclass(frozen=True)
class ShiftStep:
    inner: "Recipe"
    amount: int

    def describe(self) -> str:
        return f"{self.inner.describe()}[{self.amount}]"


@dataclass(frozen=True)
class ConeStep:
    """cone(f) for the chain map f given by its components between two recipes."""
    source: "Recipe"
    target: "Recipe"
    components: tuple[tuple[int, ModuleMap], ...]

    def describe(self) -> str:
        return f"cone({self.source.describe()} -> {self.target.describe()})"


Recipe = Union[SummandStep, ShiftStep, ConeStep]


@dataclass(frozen=True)
class Witness:
    """A recipe in thick(T) claimed to be isomorphic to P_vertex up to shift."""
    vertex: str
    recipe: Recipe


@dataclass(frozen=True)
class TiltingCandidate:
    algebra: BasicAlgebra
    labels: tuple[str, ...]
    summands: tuple[Complex, ...]
    witnesses: tuple[Witness, ...] = ()
    name: str = ""

    def __post_init__(self):
        if len(self.labels) != len(self.summands):
            raise ComplexError("one label per summand")
        for c in self.summands:
            if c.algebra is not self.algebra:
                raise AlgebraMismatchError("summand over a different algebra")
            if not is_perfect(c):
                raise ComplexError(f"summand {c!r} has a non-projective term")

    def summand(self, label: str) -> Complex:
        try:
            return self.summands[self.labels.index(str(label))]
        except ValueError:
            raise ComplexError(f"no summand labelled {label!r}") from None

    def evaluate(self, recipe: Recipe) -> Complex:
        if isinstance(recipe, SummandStep):
            return self.summand(recipe.label)
        if isinstance(recipe, ShiftStep):
            return shift(self.evaluate(recipe.inner), recipe.amount)
        source, target = self.evaluate(recipe.source), self.evaluate(recipe.target)
        return cone(ChainMap.build(source, target, dict(recipe.components))).complex

    def span(self) -> tuple[int, int]:
        lows = [c.degree_bounds()[0] for c in self.summands if not c.is_zero()]
        highs = [c.degree_bounds()[1] for c in self.summands if not c.is_zero()]
        return (min(lows, default=0), max(highs, default=0))


def build_candidate(
    a: BasicAlgebra,
    summands: Mapping[str, Complex],
    witnesses: Sequence[Witness] = (),
    name: str = "",
) -> TiltingCandidate:
    return TiltingCandidate(
        a, tuple(str(k) for k in summands), tuple(summands.values()), tuple(witnesses), name
    )


def _is_shaped_like_r(r: BasicAlgebra) -> bool:
    q = r.quiver
    if not q.is_linear() or len(q.vertices) != 10 or r.dim != 53:
        return False
    long_path = q.path_from_names([f"a{i}" for i in range(1, 9)]) if q.has_arrow("a8") else None
    return long_path is not None and not r.reduce(r.element(long_path))


def _connecting_complex(r: BasicAlgebra, j: str, sign: int = 1) -> Complex:
    d = canonical_map(r, "1", j)
    return Complex.from_terms(r, 0, [projective(r, "1"), projective(r, j)], [d.scale(sign)])


def build_paper_tilting(r: BasicAlgebra, corrupt_summand: Optional[int] = None) -> TiltingCandidate:
    """
    T = ⊕ T_i over R = kA10/(a8···a1):
    T_1 = P_1 in degree 0, T_j = (P_1 -> P_j) in degrees 0, 1 for j = 2..8,
    T_9 = P_9[-1], T_10 = P_10[-1].

    `corrupt_summand` (2..8) negates the differential of that T_j, giving a
    complex isomorphic to T_j for which the standard generators stop being chain maps.
    """
    if not _is_shaped_like_r(r):
        raise AlgebraMismatchError(f"{r.name or 'algebra'} is not kA10 modulo the path of length 8")
    if corrupt_summand is not None and corrupt_summand not in range(2, 9):
        raise ComplexError("only T_2..T_8 carry a differential to corrupt")
    summands: dict[str, Complex] = {"1": Complex.from_module(projective(r, "1"), 0)}
    for j in range(2, 9):
        sign = -1 if corrupt_summand == j else 1
        summands[str(j)] = _connecting_complex(r, str(j), sign)
    for j in ("9", "10"):
        summands[j] = Complex.from_module(projective(r, j), 1)
    identity_p1 = ModuleMap.identity(projective(r, "1"))
    witnesses = [Witness("1", SummandStep("1"))]
    for j in range(2, 9):
        witnesses.append(Witness(
            str(j), ConeStep(SummandStep(str(j)), SummandStep("1"), ((0, identity_p1),))
        ))
    witnesses += [Witness(j, ShiftStep(SummandStep(j), 1)) for j in ("9", "10")]
    name = "T" if corrupt_summand is None else f"T(corrupted {corrupt_summand})"
    return build_candidate(r, summands, witnesses, name)


def build_regular_candidate(a: BasicAlgebra) -> TiltingCandidate:
    """A as a complex concentrated in degree 0, one summand P_v per vertex."""
    summands = {v: Complex.from_module(projective(a, v), 0) for v in a.vertices}
    witnesses = [Witness(v, SummandStep(v)) for v in a.vertices]
    return build_candidate(a, summands, witnesses, f"{a.name or 'A'}_A")


# Self-orthogonality


class HomEntry(BaseModel):
    """dim Hom_K(T_i, T_j[shift])."""
    source: str
    target: str
    shift: int
    dimension: int


class SelfOrthogonalityReport(BaseModel):
    shifts: list[int] = Field(default_factory=list)
    nonzero: list[HomEntry] = Field(default_factory=list)
    computed: int = 0
    skipped: int = 0
    passed: bool = False


def default_shift_range(t: TiltingCandidate, margin: int = 1) -> range:
    lo, hi = t.span()
    bound = hi - lo + 1 + margin
    return range(-bound, bound + 1)


def verify_self_orthogonal(
    t: TiltingCandidate, shifts: Optional[Sequence[int]] = None, margin: int = 1
) -> SelfOrthogonalityReport:
    """Hom_K(T_i, T_j[l]) = 0 for all i, j and every l != 0 in the checked range."""
    shifts = list(shifts) if shifts is not None else list(default_shift_range(t, margin))
    report = SelfOrthogonalityReport(shifts=shifts)
    for li, ci in zip(t.labels, t.summands):
        for lj, cj in zip(t.labels, t.summands):
            if ci.is_zero() or cj.is_zero():
                report.skipped += sum(1 for l in shifts if l != 0)
                continue
            lo_i, hi_i = ci.degree_bounds()
            lo_j, hi_j = cj.degree_bounds()
            for l in shifts:
                if l == 0:
                    continue
                # chain maps ci -> cj[l] need ci^n and cj^{n+l} both nonzero
                if not lo_j - hi_i <= l <= hi_j - lo_i:
                    report.skipped += 1
                    continue
                report.computed += 1
                dim = homotopy_hom(ci, cj, l).dimension
                if dim:
                    report.nonzero.append(HomEntry(source=li, target=lj, shift=l, dimension=dim))
    report.passed = not report.nonzero
    logger.info(
        "Self-orthogonality of %s: %d spaces computed, %d skipped, %d nonzero",
        t.name, report.computed, report.skipped, len(report.nonzero),
    )
    return report


# Generation


class GenerationStatus(str, Enum):
    """Outcome of the thick-subcategory certificate."""
    CERTIFIED = "certified"
    FAILED = "failed"
    NOT_CERTIFIED = "not_certified"


class GenerationReport(BaseModel):
    status: GenerationStatus = GenerationStatus.NOT_CERTIFIED
    witnesses: dict[str, str] = Field(default_factory=dict)
    failed: list[str] = Field(default_factory=list)
    missing: list[str] = Field(default_factory=list)
    searched: bool = False


def _nonzero_homology_degrees(c: Complex) -> list[int]:
    return [n for n in range(c.lo, c.hi + 1) if not homology(c, n).is_zero()]


def witnessed_vertex(a: BasicAlgebra, c: Complex) -> Optional[str]:
    """v if c has homology only in one degree n and H^n ≅ P_v (so c ≅ P_v[-n])."""
    degrees = _nonzero_homology_degrees(c)
    if len(degrees) != 1:
        return None
    h = homology(c, degrees[0])
    for v in a.vertices:
        p = projective(a, v)
        if h.dims == p.dims and is_isomorphic(h, p):
            return v
    return None


def _initial_pool(t: TiltingCandidate) -> list[tuple[Recipe, Complex]]:
    pool: list[tuple[Recipe, Complex]] = []
    for label in t.labels:
        for amount in (-1, 0, 1):
            step: Recipe = SummandStep(label)
            if amount:
                step = ShiftStep(step, amount)
            pool.append((step, t.evaluate(step)))
    return pool


def _cones_of(pool: Sequence[tuple[Recipe, Complex]]) -> Iterator[tuple[Recipe, Complex]]:
    for (rx, x), (ry, y) in itertools.product(pool, repeat=2):
        for g in homotopy_hom(x, y, 0).representatives:
            yield ConeStep(rx, ry, g.components), cone(g).complex


def search_generation(
    t: TiltingCandidate, vertices: Sequence[str], depth: int = 2, max_objects: int = 64
) -> dict[str, Recipe]:
    """Bounded search through shifts and cones of T for complexes isomorphic to shifted P_v."""
    wanted = set(vertices)
    found: dict[str, Recipe] = {}
    pool = _initial_pool(t)

    def record(recipe: Recipe, c: Complex) -> None:
        v = witnessed_vertex(t.algebra, c)
        if v in wanted and v not in found:
            found[v] = recipe

    for recipe, c in pool:
        record(recipe, c)
    for _ in range(depth):
        if wanted <= set(found) or len(pool) >= max_objects:
            break
        fresh = list(itertools.islice(_cones_of(pool), max_objects - len(pool)))
        for recipe, c in fresh:
            record(recipe, c)
        pool.extend(fresh)
    logger.info("Generation search found witnesses for %d of %d vertices", len(found), len(wanted))
    return found


def verify_generation(
    t: TiltingCandidate, search_depth: int = 2, search_max_objects: int = 64
) -> GenerationReport:
    """Each P_v is reached from T by the supplied witnesses, or else by a bounded search."""
    a = t.algebra
    report = GenerationReport()
    supplied = {w.vertex: w.recipe for w in t.witnesses}
    for v in a.vertices:
        recipe = supplied.get(v)
        if recipe is None:
            report.missing.append(v)
        elif witnessed_vertex(a, t.evaluate(recipe)) == v:
            report.witnesses[v] = recipe.describe()
        else:
            report.failed.append(v)
    pending = report.missing + report.failed
    if pending and search_depth > 0:
        report.searched = True
        found = search_generation(t, pending, search_depth, search_max_objects)
        for v, recipe in found.items():
            report.witnesses[v] = recipe.describe()
        report.missing = [v for v in report.missing if v not in found]
        report.failed = [v for v in report.failed if v not in found]
    if len(report.witnesses) == len(a.vertices):
        report.status = GenerationStatus.CERTIFIED
    elif report.failed:
        report.status = GenerationStatus.FAILED
    else:
        report.status = GenerationStatus.NOT_CERTIFIED
    logger.info("Generation of %s: %s", t.name, report.status.value)
    return report


# End(T)


class EndomorphismAlgebra:
    """
    End_K(T) = ⊕ Hom_K(T_i, T_j) with basis the homotopy-class representatives;
    the product is x·y = x∘y, so Hom_K(T_i, T_j) is the corner e_j·End·e_i.
    """

    def __init__(self, candidate: TiltingCandidate):
        self.candidate = candidate
        self.field = candidate.algebra.field
        labels = candidate.labels
        self.blocks = {
            (i, j): homotopy_hom(candidate.summand(i), candidate.summand(j), 0)
            for i in labels for j in labels
        }
        self.offsets: dict[tuple[str, str], int] = {}
        basis_labels: list[str] = []
        self.basis: list[tuple[str, str, ChainMap]] = []
        for (i, j), space in self.blocks.items():
            self.offsets[(i, j)] = len(basis_labels)
            for k, rep in enumerate(space.representatives):
                basis_labels.append(f"{i}->{j}:{k + 1}")
                self.basis.append((i, j, rep))
        table = []
        for i_x, j_x, x in self.basis:
            row = []
            for i_y, j_y, y in self.basis:
                if j_y != i_x:
                    row.append({})
                    continue
                vector = self.class_vector(x.compose(y), i_y, j_x)
                row.append({k: c for k, c in enumerate(vector) if c != 0})
            table.append(row)
        idempotents = [
            self.class_vector(ChainMap.identity(candidate.summand(i)), i, i) for i in labels
        ]
        self.table = TableAlgebra(
            self.field, basis_labels, table, idempotents, labels, f"End({candidate.name})"
        )
        logger.info("End(%s) has dimension %d", candidate.name, self.table.dim)

    @property
    def dim(self) -> int:
        return self.table.dim

    def class_vector(self, g: ChainMap, source: str, target: str) -> Vector:
        """Coordinates in End(T) of the class of g: T_source -> T_target."""
        space = self.blocks[(source, target)]
        coords = space.class_coordinates(g) if space.dimension else ()
        vector = [self.field.zero] * len(self.basis)
        offset = self.offsets[(source, target)]
        for k, c in enumerate(coords):
            vector[offset + k] = c
        return tuple(vector)

    def corner_dimensions(self) -> dict[str, int]:
        return {f"{i}->{j}": space.dimension for (i, j), space in self.blocks.items()}


def endomorphism_algebra(t: TiltingCandidate) -> EndomorphismAlgebra:
    return EndomorphismAlgebra(t)


GeneratorMapBuilder = Callable[[TiltingCandidate, EndomorphismAlgebra], GeneratorMap]


def _identity_classes(end: EndomorphismAlgebra) -> dict[str, Vector]:
    t = end.candidate
    return {
        label: end.class_vector(ChainMap.identity(t.summand(label)), label, label)
        for label in t.labels
    }


def paper_generator_map(t: TiltingCandidate, end: EndomorphismAlgebra) -> dict[str, Vector]:
    """
    Vertices of E to the identity classes and arrows to the standard chain maps:
    b_i = (id_{P_1}, P_i -> P_{i+1}) for i = 2..7, b_8 and b_9 the maps between
    the degree-1 terms, c = id_{P_1}: T_8 -> T_1.

    Raises ChainMapError when one of these is not a chain map.
    """
    r = t.algebra
    p1 = ModuleMap.identity(projective(r, "1"))
    images = _identity_classes(end)

    def add(name: str, source: str, target: str, components: Mapping[int, ModuleMap]) -> None:
        g = ChainMap.build(t.summand(source), t.summand(target), components)
        images[name] = end.class_vector(g, source, target)

    for i in range(2, 8):
        add(f"b{i}", str(i), str(i + 1), {0: p1, 1: canonical_map(r, str(i), str(i + 1))})
    add("b8", "8", "9", {1: canonical_map(r, "8", "9")})
    add("b9", "9", "10", {1: canonical_map(r, "9", "10")})
    add("c", "8", "1", {0: p1})
    return images


def regular_generator_map(t: TiltingCandidate, end: EndomorphismAlgebra) -> dict[str, Vector]:
    """Vertices to identity classes, each arrow i -> j to left multiplication P_i -> P_j."""
    a = t.algebra
    images = _identity_classes(end)
    for arrow in a.quiver.arrows:
        m = left_multiplication_map(a, arrow.source, arrow.target, a.element(Path.of_arrows([arrow])))
        g = ChainMap.build(t.summand(arrow.source), t.summand(arrow.target), {0: m})
        images[arrow.name] = end.class_vector(g, arrow.source, arrow.target)
    return images


# Report


class EndomorphismReport(BaseModel):
    dimension: int = 0
    corner_dimensions: dict[str, int] = Field(default_factory=dict)
    associative: bool = False
    idempotents_ok: bool = False


class PresentationReport(BaseModel):
    vertices: list[str] = Field(default_factory=list)
    arrows: list[str] = Field(default_factory=list)
    relations: list[str] = Field(default_factory=list)
    radical_method: str = ""
    radical_dimension: int = 0
    branch_arrow: Optional[str] = None
    target: Optional[str] = None
    graph_isomorphic: Optional[bool] = None
    matched: Optional[bool] = None
    reason: str = ""


class TiltingReport(BaseModel):
    """Outcome of every tilting check on one candidate."""
    candidate: str
    field: str
    self_orthogonality: SelfOrthogonalityReport
    generation: GenerationReport
    endomorphism: EndomorphismReport
    presentation: PresentationReport
    passed: bool = False


def branch_arrow(quiver: Quiver) -> Optional[str]:
    """The arrow on the shortest arm at the first branch vertex, as 'source->target'."""
    graph = nx.Graph(quiver.underlying_graph())
    branches = [v for v in quiver.vertices if graph.degree(v) >= 3]
    if not branches:
        return None
    centre = branches[0]

    def arm_length(start: str) -> int:
        previous, current, length = centre, start, 1
        while graph.degree(current) == 2:
            previous, current = current, next(n for n in graph[current] if n != previous)
            length += 1
        return length

    nearest = min(graph[centre], key=lambda n: (arm_length(n), quiver.vertex_index(n)))
    for arrow in quiver.arrows:
        if {arrow.source, arrow.target} == {centre, nearest}:
            return f"{arrow.source}->{arrow.target}"
    return None


def verify_tilting(
    t: TiltingCandidate,
    target: Optional[BasicAlgebra] = None,
    generator_map: Optional[Union[GeneratorMap, GeneratorMapBuilder]] = None,
    shifts: Optional[Sequence[int]] = None,
    margin: int = 1,
    method: Union[RadicalMethod, str] = RadicalMethod.AUTO,
    search_depth: int = 2,
    search_max_objects: int = 64,
) -> TiltingReport:
    """
    Self-orthogonality, generation and End(T); with a target algebra also the
    presentation match, along `generator_map` when one is given.
    """
    orthogonality = verify_self_orthogonal(t, shifts, margin)
    generation = verify_generation(t, search_depth, search_max_objects)
    end = endomorphism_algebra(t)
    endo = EndomorphismReport(
        dimension=end.dim,
        corner_dimensions=end.corner_dimensions(),
        associative=end.table.verify_associativity(),
        idempotents_ok=end.table.verify_idempotents(),
    )
    pres = quiver_presentation(end.table, method)
    presentation = PresentationReport(
        vertices=list(pres.quiver.vertices),
        arrows=[f"{s}->{d}" for s, d in pres.arrow_pairs()],
        relations=[rel.display() for rel in pres.relations],
        radical_method=pres.radical.method.value,
        radical_dimension=pres.radical.dim,
        branch_arrow=branch_arrow(pres.quiver),
    )
    matched = True
    if target is not None:
        presentation.target = target.name
        target_pres = quiver_presentation(target, method)
        iso, _ = presentations_match(pres, target_pres)
        presentation.graph_isomorphic = iso
        same_counts = pres.relation_count == target_pres.relation_count
        if generator_map is None:
            matched = iso and same_counts
            presentation.reason = "quiver and relation count only; no generator map"
        else:
            try:
                images = generator_map(t, end) if callable(generator_map) else generator_map
                result = match_presentation(end.table, target, images, method)
                matched, presentation.reason = result.matched, result.reason
            except ChainMapError as exc:
                matched, presentation.reason = False, f"generator map: {exc}"
        presentation.matched = matched
    passed = (
        orthogonality.passed
        and generation.status is GenerationStatus.CERTIFIED
        and endo.associative
        and endo.idempotents_ok
        and matched
    )
    logger.info("Tilting check of %s: %s", t.name, "passed" if passed else "failed")
    return TiltingReport(
        candidate=t.name,
        field=t.algebra.field.name,
        self_orthogonality=orthogonality,
        generation=generation,
        endomorphism=endo,
        presentation=presentation,
        passed=passed,
    )
