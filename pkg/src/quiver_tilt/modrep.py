"""
Right modules over a BasicAlgebra, realized as quiver representations.

A module M has the space M·e_v at each vertex v. An arrow α: s -> t acts on the
right as M·e_t -> M·e_s and is stored as a (dim_s × dim_t) matrix; a path β_r···β_1
acts by A(β_1)···A(β_r). Module maps are per-vertex matrices f_v of shape
(dim N_v × dim M_v) with f_s·A_M(α) = A_N(α)·f_t.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm
from typing import Any, Iterator, Mapping, NamedTuple, Optional, Sequence, Union

import networkx as nx
import numpy as np

from quiver_tilt.algebra import BasicAlgebra
from quiver_tilt.exceptions import (
    AlgebraMismatchError,
    DecompositionError,
    DimensionMismatchError,
    ModuleMapError,
    NoPathError,
    NotExactError,
    RepresentationError,
    ResolutionTruncatedError,
    UnsupportedShapeError,
)
from quiver_tilt.quiver import Path
from quiver_tilt.scalars import (
    ExactField,
    Matrix,
    Scalar,
    column_space,
    complement_columns,
    hstack,
    in_span,
    inverse,
    is_invertible,
    kernel_basis,
    rank,
    rref,
    solve,
    vstack,
)

logger = logging.getLogger(__name__)

Vertex = Union[str, int]


@dataclass(frozen=True)
class Representation:
    """A finite-dimensional right module: dimension per vertex, action matrix per arrow."""
    algebra: BasicAlgebra
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]

    @classmethod
    def build(
        cls,
        algebra: BasicAlgebra,
        dims: Union[Sequence[int], Mapping[str, int]],
        matrices: Optional[Mapping[str, Any]] = None,
    ) -> "Representation":
        """Build and validate; arrows missing from `matrices` act by zero."""
        q = algebra.quiver
        f = algebra.field
        if isinstance(dims, Mapping):
            for v in dims:
                q.check_vertex(v)
            dims = tuple(int(dims.get(v, 0)) for v in q.vertices)
        else:
            dims = tuple(int(d) for d in dims)
        if len(dims) != len(q.vertices):
            raise RepresentationError(
                f"expected {len(q.vertices)} vertex dimensions, got {len(dims)}"
            )
        if any(d < 0 for d in dims):
            raise RepresentationError("vertex dimensions must be non-negative")
        matrices = dict(matrices or {})
        unknown = set(matrices) - {a.name for a in q.arrows}
        if unknown:
            raise RepresentationError(f"matrices given for unknown arrows {sorted(unknown)}")
        maps = []
        for a in q.arrows:
            ds, dt = dims[q.vertex_index(a.source)], dims[q.vertex_index(a.target)]
            given = matrices.get(a.name)
            if given is None:
                m = Matrix.zeros(f, ds, dt)
            elif isinstance(given, Matrix):
                m = given
            else:
                m = Matrix.from_rows(f, given, cols=dt)
            if m.shape != (ds, dt):
                raise RepresentationError(
                    f"arrow {a.name} needs a {ds}x{dt} matrix, got {m.rows}x{m.cols}"
                )
            maps.append(m)
        rep = cls(algebra, dims, tuple(maps))
        rep.check_relations()
        return rep

    def __repr__(self) -> str:
        return f"Representation({self.algebra.name}, dims={self.dims})"

    @property
    def field(self) -> ExactField:
        return self.algebra.field

    @property
    def quiver(self):
        return self.algebra.quiver

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def dim_at(self, vertex: Vertex) -> int:
        return self.dims[self.quiver.vertex_index(vertex)]

    def arrow_matrix(self, name: str) -> Matrix:
        return self.maps[self.quiver.arrow_index(name)]

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def support(self) -> list[str]:
        return [v for v, d in zip(self.quiver.vertices, self.dims) if d]

    def act(self, path: Path) -> Matrix:
        """Matrix of m -> m·path, from the space at path.target to the one at path.source."""
        if path.is_lazy:
            return Matrix.identity(self.field, self.dim_at(path.source))
        result = self.arrow_matrix(path.arrows[0].name)
        for a in path.arrows[1:]:
            result = result @ self.arrow_matrix(a.name)
        return result

    def act_element(self, element: Mapping[Path, Scalar], source: str, target: str) -> Matrix:
        total = Matrix.zeros(self.field, self.dim_at(source), self.dim_at(target))
        for path, coef in element.items():
            total = total + self.act(path).scale(coef)
        return total

    def check_relations(self) -> None:
        for relation in self.algebra.relations:
            value = self.act_element(dict(relation.terms), relation.source, relation.target)
            if not value.is_zero():
                raise RepresentationError(f"representation violates relation {relation.display()}")


def _check_same_algebra(*modules: Representation) -> None:
    first = modules[0].algebra
    for m in modules[1:]:
        if m.algebra is not first:
            raise AlgebraMismatchError("modules over different algebras")


def _same_module(a: Representation, b: Representation) -> bool:
    return a is b or a == b


@dataclass(frozen=True)
class ModuleMap:
    """A module homomorphism given by one matrix per vertex."""
    source: Representation
    target: Representation
    components: tuple[Matrix, ...]

    @classmethod
    def build(
        cls,
        source: Representation,
        target: Representation,
        components: Union[Sequence[Any], Mapping[str, Any]],
    ) -> "ModuleMap":
        """Build from per-vertex matrices (or row lists) and verify commutation."""
        _check_same_algebra(source, target)
        q = source.quiver
        f = source.field
        if isinstance(components, Mapping):
            components = [components.get(v) for v in q.vertices]
        if len(components) != len(q.vertices):
            raise ModuleMapError("one component per vertex is required")
        mats = []
        for k, comp in enumerate(components):
            rows, cols = target.dims[k], source.dims[k]
            if comp is None:
                mats.append(Matrix.zeros(f, rows, cols))
            elif isinstance(comp, Matrix):
                mats.append(comp)
            else:
                mats.append(Matrix.from_rows(f, comp, cols=cols))
        result = cls(source, target, tuple(mats))
        result.check()
        return result

    @classmethod
    def identity(cls, module: Representation) -> "ModuleMap":
        f = module.field
        return cls(module, module, tuple(Matrix.identity(f, d) for d in module.dims))

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "ModuleMap":
        f = source.field
        return cls(
            source, target, tuple(Matrix.zeros(f, t, s) for s, t in zip(source.dims, target.dims))
        )

    def __repr__(self) -> str:
        return f"ModuleMap({self.source.dims} -> {self.target.dims})"

    def check(self) -> None:
        q = self.source.quiver
        for k, comp in enumerate(self.components):
            if comp.shape != (self.target.dims[k], self.source.dims[k]):
                raise ModuleMapError(f"component at {q.vertices[k]} has shape {comp.shape}")
        if not self.is_morphism():
            raise ModuleMapError("matrices do not commute with the arrow actions")

    def is_morphism(self) -> bool:
        q = self.source.quiver
        for idx, a in enumerate(q.arrows):
            s, t = q.vertex_index(a.source), q.vertex_index(a.target)
            left = self.components[s] @ self.source.maps[idx]
            right = self.target.maps[idx] @ self.components[t]
            if left != right:
                return False
        return True

    def at(self, vertex: Vertex) -> Matrix:
        return self.components[self.source.quiver.vertex_index(vertex)]

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other."""
        if not _same_module(other.target, self.source):
            raise ModuleMapError("maps are not composable")
        return ModuleMap(
            other.source,
            self.target,
            tuple(a @ b for a, b in zip(self.components, other.components)),
        )

    def _check_parallel(self, other: "ModuleMap") -> None:
        if not (_same_module(self.source, other.source) and _same_module(self.target, other.target)):
            raise ModuleMapError("maps are not parallel")

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        self._check_parallel(other)
        return ModuleMap(
            self.source, self.target, tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        self._check_parallel(other)
        return ModuleMap(
            self.source, self.target, tuple(a - b for a, b in zip(self.components, other.components))
        )

    def __neg__(self) -> "ModuleMap":
        return self.scale(-1)

    def scale(self, c: Any) -> "ModuleMap":
        return ModuleMap(self.source, self.target, tuple(m.scale(c) for m in self.components))

    def power(self, n: int) -> "ModuleMap":
        if not _same_module(self.source, self.target):
            raise ModuleMapError("power of a map that is not an endomorphism")
        result = ModuleMap.identity(self.source)
        for _ in range(n):
            result = self.compose(result)
        return result

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components)

    def ranks(self) -> tuple[int, ...]:
        return tuple(rank(m) for m in self.components)

    def is_injective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.source.dims))

    def is_surjective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.target.dims))

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and all(
            is_invertible(m) for m in self.components
        )

    def inverse(self) -> "ModuleMap":
        if not self.is_isomorphism():
            raise ModuleMapError("map is not invertible")
        return ModuleMap(self.target, self.source, tuple(inverse(m) for m in self.components))

    def flatten(self) -> tuple[Scalar, ...]:
        return tuple(x for m in self.components for x in m.flatten())


@dataclass(frozen=True)
class HomSpace:
    """A basis of Hom(source, target)."""
    source: Representation
    target: Representation
    basis: tuple[ModuleMap, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coefficients: Sequence[Any]) -> ModuleMap:
        if len(coefficients) != self.dim:
            raise DimensionMismatchError(f"expected {self.dim} coefficients")
        result = ModuleMap.zero(self.source, self.target)
        for c, b in zip(coefficients, self.basis):
            if c != 0:
                result = result + b.scale(c)
        return result

    def _basis_matrix(self) -> Matrix:
        length = sum(t * s for s, t in zip(self.source.dims, self.target.dims))
        return Matrix.from_columns(self.source.field, [b.flatten() for b in self.basis], length)

    def coordinates(self, f: ModuleMap) -> tuple[Scalar, ...]:
        sol = solve(self._basis_matrix(), Matrix.column_vector(self.source.field, f.flatten()))
        if not sol.consistent:
            raise ModuleMapError("map is not in this Hom space")
        return sol.particular.column(0)

    def coordinates_matrix(self, maps: Sequence[ModuleMap]) -> Matrix:
        """Coordinates of several maps at once, one column per map."""
        field = self.source.field
        length = sum(t * s for s, t in zip(self.source.dims, self.target.dims))
        if not maps:
            return Matrix.zeros(field, self.dim, 0)
        targets = Matrix.from_columns(field, [g.flatten() for g in maps], length)
        if not self.basis:
            if not targets.is_zero():
                raise ModuleMapError("map is not in this Hom space")
            return Matrix.zeros(field, 0, len(maps))
        sol = solve(self._basis_matrix(), targets)
        if not sol.consistent:
            raise ModuleMapError("map is not in this Hom space")
        return sol.particular

    def contains(self, f: ModuleMap) -> bool:
        return in_span(self._basis_matrix(), Matrix.column_vector(self.source.field, f.flatten()))


def hom(m: Representation, n: Representation) -> HomSpace:
    """All module maps m -> n, from the commutation linear system."""
    _check_same_algebra(m, n)
    return HomSpace(m, n, _hom_basis(m, n))


def hom_dimension(m: Representation, n: Representation) -> int:
    return hom(m, n).dim


@lru_cache(maxsize=4096)
def _hom_basis(m: Representation, n: Representation) -> tuple[ModuleMap, ...]:
    q = m.quiver
    f = m.field
    offsets = []
    total = 0
    for dm, dn in zip(m.dims, n.dims):
        offsets.append(total)
        total += dm * dn
    if total == 0:
        return ()
    rows = []
    for idx, a in enumerate(q.arrows):
        s, t = q.vertex_index(a.source), q.vertex_index(a.target)
        am, an = m.maps[idx], n.maps[idx]
        dm_s, dm_t, dn_t = m.dims[s], m.dims[t], n.dims[t]
        # (X_s·A_M - A_N·X_t)[r, c] = 0
        for r in range(n.dims[s]):
            for c in range(dm_t):
                row = [f.zero] * total
                for b in range(dm_s):
                    coef = am[b, c]
                    if coef != 0:
                        k = offsets[s] + r * dm_s + b
                        row[k] = f.add(row[k], coef)
                for e in range(dn_t):
                    coef = an[r, e]
                    if coef != 0:
                        k = offsets[t] + e * dm_t + c
                        row[k] = f.sub(row[k], coef)
                rows.append(tuple(row))
    system = Matrix(f, len(rows), total, tuple(rows))
    kernel = kernel_basis(system)
    basis = []
    for j in range(kernel.cols):
        vec = kernel.column(j)
        comps = []
        for k, (dm, dn) in enumerate(zip(m.dims, n.dims)):
            start = offsets[k]
            data = tuple(
                tuple(vec[start + r * dm: start + (r + 1) * dm]) for r in range(dn)
            )
            comps.append(Matrix(f, dn, dm, data))
        basis.append(ModuleMap(m, n, tuple(comps)))
    logger.debug("dim Hom(%s, %s) = %d", m.dims, n.dims, len(basis))
    return tuple(basis)


# Constructors


def projective_basis(a: BasicAlgebra, i: Vertex, v: Vertex) -> list[Path]:
    """Basis of the vertex-v space of P_i = e_i·A: the paths v -> i."""
    return a.basis_between(v, i)


def projective(a: BasicAlgebra, i: Vertex) -> Representation:
    """P_i = e_i·A."""
    return _projective(a, a.quiver.check_vertex(i))


@lru_cache(maxsize=512)
def _projective(a: BasicAlgebra, i: str) -> Representation:
    q = a.quiver
    f = a.field
    bases = {v: a.basis_between(v, i) for v in q.vertices}
    maps = []
    for arrow in q.arrows:
        src_basis = bases[arrow.source]
        index = {p: k for k, p in enumerate(src_basis)}
        columns = []
        for x in bases[arrow.target]:
            col = [f.zero] * len(src_basis)
            for p, c in a.multiply(x, Path.of_arrows([arrow])).items():
                col[index[p]] = c
            columns.append(col)
        maps.append(Matrix.from_columns(f, columns, len(src_basis)))
    dims = tuple(len(bases[v]) for v in q.vertices)
    return Representation(a, dims, tuple(maps))


def simple(a: BasicAlgebra, i: Vertex) -> Representation:
    """S_i: one-dimensional at i, zero elsewhere."""
    i = a.quiver.check_vertex(i)
    return Representation.build(a, {i: 1})


def zero_module(a: BasicAlgebra) -> Representation:
    return Representation.build(a, [0] * len(a.vertices))


def interval_module(a: BasicAlgebra, lo: Vertex, hi: Vertex) -> Representation:
    """
    The module with 1-dimensional spaces on the vertices lo..hi of a linear quiver
    and identity actions inside. Raises RepresentationError if a relation is violated.
    """
    q = a.quiver
    if not q.is_linear():
        raise UnsupportedShapeError("interval modules need a linearly oriented quiver")
    start, stop = q.vertex_index(lo), q.vertex_index(hi)
    if start > stop:
        raise RepresentationError(f"empty interval [{lo}, {hi}]")
    inside = set(q.vertices[start:stop + 1])
    dims = {v: 1 for v in inside}
    matrices = {
        arrow.name: [[1]] for arrow in q.arrows
        if arrow.source in inside and arrow.target in inside
    }
    return Representation.build(a, dims, matrices)


class DirectSum(NamedTuple):
    """A direct sum with its canonical inclusions and projections."""
    module: Representation
    inclusions: tuple[ModuleMap, ...]
    projections: tuple[ModuleMap, ...]


def direct_sum(
    modules: Sequence[Representation], algebra: Optional[BasicAlgebra] = None
) -> DirectSum:
    if not modules:
        if algebra is None:
            raise RepresentationError("empty direct sum needs an algebra")
        z = zero_module(algebra)
        return DirectSum(z, (), ())
    _check_same_algebra(*modules)
    a = modules[0].algebra
    f = a.field
    nverts = len(a.vertices)
    dims = tuple(sum(m.dims[k] for m in modules) for k in range(nverts))
    maps = []
    for idx in range(len(a.quiver.arrows)):
        maps.append(_block_diag(f, [m.maps[idx] for m in modules]))
    total = Representation(a, dims, tuple(maps))
    inclusions, projections = [], []
    offsets = [0] * nverts
    for m in modules:
        inc, proj = [], []
        for k in range(nverts):
            d, big = m.dims[k], dims[k]
            rows = tuple(
                tuple(f.one if (r == offsets[k] + c) else f.zero for c in range(d))
                for r in range(big)
            )
            emb = Matrix(f, big, d, rows)
            inc.append(emb)
            proj.append(emb.transpose())
            offsets[k] += d
        inclusions.append(ModuleMap(m, total, tuple(inc)))
        projections.append(ModuleMap(total, m, tuple(proj)))
    return DirectSum(total, tuple(inclusions), tuple(projections))


def _block_diag(f: ExactField, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = f.zero
    data = []
    offset = 0
    for b in blocks:
        for r in b.data:
            data.append((z,) * offset + r + (z,) * (cols - offset - b.cols))
        offset += b.cols
    return Matrix(f, rows, cols, tuple(data))


def regular_module(a: BasicAlgebra) -> Representation:
    """A_A = ⊕_i P_i."""
    return direct_sum([projective(a, v) for v in a.vertices]).module


def block_map(
    sources: Sequence[Representation],
    targets: Sequence[Representation],
    blocks: Mapping[tuple[int, int], ModuleMap],
    algebra: Optional[BasicAlgebra] = None,
) -> ModuleMap:
    """
    The map ⊕ sources -> ⊕ targets whose (row, col) block is `blocks[(row, col)]`
    (a map sources[col] -> targets[row]); absent blocks are zero.
    """
    if algebra is None:
        algebra = (list(sources) + list(targets))[0].algebra
    src = direct_sum(sources, algebra).module
    tgt = direct_sum(targets, algebra).module
    f = algebra.field
    comps = []
    for k in range(len(algebra.vertices)):
        row_blocks = []
        for r, t in enumerate(targets):
            pieces = []
            for c, s in enumerate(sources):
                block = blocks.get((r, c))
                if block is None:
                    pieces.append(Matrix.zeros(f, t.dims[k], s.dims[k]))
                else:
                    pieces.append(block.components[k])
            row_blocks.append(hstack(f, t.dims[k], pieces))
        comps.append(vstack(f, src.dims[k], row_blocks))
    return ModuleMap(src, tgt, tuple(comps))


# Submodules and quotients


def submodule(
    m: Representation, spans: Sequence[Matrix]
) -> tuple[Representation, ModuleMap]:
    """The submodule spanned per vertex by the columns of `spans`, with its inclusion."""
    f = m.field
    q = m.quiver
    bases = [column_space(s) for s in spans]
    maps = []
    for idx, a in enumerate(q.arrows):
        s, t = q.vertex_index(a.source), q.vertex_index(a.target)
        image = m.maps[idx] @ bases[t]
        sol = solve(bases[s], image)
        if not sol.consistent:
            raise RepresentationError("subspaces are not closed under the arrow actions")
        maps.append(sol.particular)
    sub = Representation(m.algebra, tuple(b.cols for b in bases), tuple(maps))
    return sub, ModuleMap(sub, m, tuple(bases))


def quotient_module(
    m: Representation, spans: Sequence[Matrix]
) -> tuple[Representation, ModuleMap]:
    """M / U for a submodule U given per vertex by column spans, with the projection."""
    f = m.field
    q = m.quiver
    complements, projections = [], []
    for k, s in enumerate(spans):
        basis = column_space(s)
        comp = complement_columns(basis)
        change = inverse(hstack(f, m.dims[k], [basis, comp]))
        projections.append(change.submatrix(range(basis.cols, m.dims[k]), range(m.dims[k])))
        complements.append(comp)
    maps = []
    for idx, a in enumerate(q.arrows):
        s, t = q.vertex_index(a.source), q.vertex_index(a.target)
        maps.append(projections[s] @ m.maps[idx] @ complements[t])
    quo = Representation(m.algebra, tuple(c.cols for c in complements), tuple(maps))
    return quo, ModuleMap(m, quo, tuple(projections))


def kernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return submodule(f.source, [kernel_basis(c) for c in f.components])


def image(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return submodule(f.target, [column_space(c) for c in f.components])


def cokernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return quotient_module(f.target, [column_space(c) for c in f.components])


def radical_spans(m: Representation) -> list[Matrix]:
    """Per vertex v, the span of the images of the arrows leaving v: (M·J)·e_v."""
    q = m.quiver
    f = m.field
    spans = []
    for k, v in enumerate(q.vertices):
        blocks = [m.maps[q.arrow_index(a.name)] for a in q.outgoing(v)]
        spans.append(column_space(hstack(f, m.dims[k], blocks)))
    return spans


def radical(m: Representation) -> Representation:
    return submodule(m, radical_spans(m))[0]


def radical_inclusion(m: Representation) -> ModuleMap:
    return submodule(m, radical_spans(m))[1]


def top(m: Representation) -> Representation:
    return quotient_module(m, radical_spans(m))[0]


def top_projection(m: Representation) -> ModuleMap:
    return quotient_module(m, radical_spans(m))[1]


# Maps between projectives


def left_multiplication_map(
    a: BasicAlgebra, i: Vertex, j: Vertex, element: Mapping[Path, Scalar]
) -> ModuleMap:
    """The map P_i -> P_j, x -> u·x, for u in e_j·A·e_i."""
    q = a.quiver
    i, j = q.check_vertex(i), q.check_vertex(j)
    for p in element:
        if p.source != i or p.target != j:
            raise ModuleMapError(f"{p} is not a path from {i} to {j}")
    f = a.field
    src, tgt = projective(a, i), projective(a, j)
    comps = []
    for v in q.vertices:
        src_basis = a.basis_between(v, i)
        tgt_index = {p: k for k, p in enumerate(a.basis_between(v, j))}
        columns = []
        for x in src_basis:
            col = [f.zero] * len(tgt_index)
            for p, c in a.multiply(element, x).items():
                col[tgt_index[p]] = c
            columns.append(col)
        comps.append(Matrix.from_columns(f, columns, len(tgt_index)))
    return ModuleMap(src, tgt, tuple(comps))


def canonical_map(a: BasicAlgebra, i: Vertex, j: Vertex) -> ModuleMap:
    """
    The map P_i -> P_j induced by the unique path i -> j; zero when that path
    lies in the ideal. Raises NoPathError without a unique path.
    """
    paths = a.quiver.paths_between(i, j)
    if len(paths) != 1:
        raise NoPathError(f"expected a unique path from {i} to {j}, found {len(paths)}")
    return left_multiplication_map(a, i, j, a.element(paths[0]))


# Projective covers and resolutions


class ProjectiveCover(NamedTuple):
    """⊕ P_v -> M, minimal, with one summand vertex per top generator."""
    module: Representation
    map: ModuleMap
    vertices: tuple[str, ...]


def projective_cover(m: Representation) -> ProjectiveCover:
    a = m.algebra
    q = a.quiver
    f = a.field
    generators = []
    for k, span in enumerate(radical_spans(m)):
        for col in complement_columns(span).columns():
            generators.append((q.vertices[k], Matrix.column_vector(f, col)))
    summands = [projective(a, v) for v, _ in generators]
    cover = direct_sum(summands, a).module
    comps = []
    for k, u in enumerate(q.vertices):
        blocks = []
        for v, vec in generators:
            columns = [(m.act(x) @ vec).column(0) for x in a.basis_between(u, v)]
            blocks.append(Matrix.from_columns(f, columns, m.dims[k]))
        comps.append(hstack(f, m.dims[k], blocks))
    return ProjectiveCover(cover, ModuleMap(cover, m, tuple(comps)), tuple(v for v, _ in generators))


def syzygy(m: Representation) -> Representation:
    return kernel(projective_cover(m).map)[0]


def is_projective(m: Representation) -> bool:
    return projective_cover(m).module.total_dim == m.total_dim


@dataclass(frozen=True)
class ProjectiveResolution:
    """
    Minimal resolution ... -> P_1 -> P_0 -> M -> 0.

    `differentials[k]` is d_{k+1}: P_{k+1} -> P_k. `complete` is False when the
    length bound was reached before the syzygies vanished.
    """
    module: Representation
    terms: tuple[Representation, ...]
    differentials: tuple[ModuleMap, ...]
    augmentation: ModuleMap
    term_vertices: tuple[tuple[str, ...], ...]
    complete: bool

    @property
    def length(self) -> int:
        return max(len(self.terms) - 1, 0)

    def term(self, k: int) -> Representation:
        if 0 <= k < len(self.terms):
            return self.terms[k]
        return zero_module(self.module.algebra)

    def to_complex(self):
        """The resolution as a complex P_n -> ... -> P_0 in degrees -n..0."""
        from quiver_tilt.complexes import Complex

        if not self.terms:
            return Complex.zero(self.module.algebra)
        n = len(self.terms) - 1
        return Complex(
            self.module.algebra,
            -n,
            tuple(reversed(self.terms)),
            tuple(reversed(self.differentials)),
        )


def projective_resolution(m: Representation, max_len: Optional[int] = None) -> ProjectiveResolution:
    """Iterated projective covers of syzygies, truncated after P_max_len."""
    bound = m.algebra.dim if max_len is None else max_len
    cover = projective_cover(m)
    terms, diffs, verts = [], [], []
    complete = True
    current = cover
    while not current.module.is_zero():
        terms.append(current.module)
        verts.append(current.vertices)
        syz, inclusion = kernel(current.map)
        if syz.is_zero():
            break
        if len(terms) - 1 >= bound:
            complete = False
            logger.info("Resolution of %s truncated at length %d", m.dims, bound)
            break
        current = projective_cover(syz)
        diffs.append(inclusion.compose(current.map))
    logger.debug("Resolution of %s: terms %s", m.dims, [t.dims for t in terms])
    return ProjectiveResolution(
        m, tuple(terms), tuple(diffs), cover.map, tuple(verts), complete
    )


def projective_dimension(m: Representation, max_len: Optional[int] = None) -> int:
    res = projective_resolution(m, max_len)
    if not res.complete:
        raise ResolutionTruncatedError(f"resolution of {m.dims} exceeds length {res.length}")
    return res.length


def global_dimension(a: BasicAlgebra, max_len: Optional[int] = None) -> int:
    """max over vertices of pd(S_i)."""
    return max((projective_dimension(simple(a, v), max_len) for v in a.vertices), default=0)


@dataclass(frozen=True)
class ExtResult:
    """dim Ext^degree(source, target) with the resolution it was computed from."""
    degree: int
    dimension: int
    hom_dimensions: tuple[int, ...]
    resolution: ProjectiveResolution


def ext(
    m: Representation, n: Representation, i: int, max_len: Optional[int] = None
) -> ExtResult:
    """Degree-i cohomology of Hom(resolution(m), n)."""
    if i < 0:
        raise ValueError("Ext degree must be non-negative")
    _check_same_algebra(m, n)
    res = projective_resolution(m, max_len)
    if not res.complete and i + 1 >= len(res.terms):
        raise ResolutionTruncatedError(f"resolution too short to compute Ext^{i}")
    f = m.field

    def coboundary_rank(k: int) -> int:
        # rank of Hom(P_k, n) -> Hom(P_{k+1}, n), g -> g∘d_{k+1}
        if k < 0 or k + 1 >= len(res.terms):
            return 0
        space = hom(res.terms[k], n)
        d = res.differentials[k]
        vectors = [g.compose(d).flatten() for g in space.basis]
        if not vectors:
            return 0
        return rank(Matrix.from_columns(f, vectors, len(vectors[0])))

    hom_dims = tuple(hom(t, n).dim for t in res.terms)
    h = hom_dims[i] if i < len(hom_dims) else 0
    dimension = h - coboundary_rank(i) - coboundary_rank(i - 1)
    return ExtResult(i, dimension, hom_dims, res)


# Exact sequences


def find_section(g: ModuleMap) -> Optional[ModuleMap]:
    """Some s with g∘s = id, or None."""
    space = hom(g.target, g.source)
    ident = ModuleMap.identity(g.target).flatten()
    if not ident:
        return ModuleMap.zero(g.target, g.source)
    if not space.basis:
        return None
    f = g.source.field
    columns = [g.compose(s).flatten() for s in space.basis]
    sol = solve(Matrix.from_columns(f, columns, len(ident)), Matrix.column_vector(f, ident))
    if not sol.consistent:
        return None
    return space.element(sol.particular.column(0))


def is_split_exact(f: ModuleMap, g: ModuleMap) -> bool:
    """
    For an exact 0 -> M -> N -> P -> 0, whether g has a section.
    Raises NotExactError if the maps do not form a short exact sequence.
    """
    if not _same_module(f.target, g.source):
        raise NotExactError("maps are not composable")
    if not g.compose(f).is_zero():
        raise NotExactError("g∘f is not zero")
    if not f.is_injective() or not g.is_surjective():
        raise NotExactError("f is not injective or g is not surjective")
    for rf, rg, d in zip(f.ranks(), g.ranks(), f.target.dims):
        if rf + rg != d:
            raise NotExactError("image of f differs from the kernel of g")
    return find_section(g) is not None


# Isomorphism and decomposition


def _candidate_maps(space: HomSpace, rng: np.random.Generator, tries: int) -> Iterator[ModuleMap]:
    yield from space.basis
    f = space.source.field
    for _ in range(tries):
        yield space.element([f.random_element(rng) for _ in range(space.dim)])


def _enumerable(space: HomSpace, limit: int) -> bool:
    """Whether Hom is finite with at most `limit` elements."""
    p = space.source.field.characteristic
    return p > 0 and p ** space.dim <= limit


def _all_maps(space: HomSpace) -> Iterator[ModuleMap]:
    p = space.source.field.characteristic
    for coefficients in itertools.product(range(p), repeat=space.dim):
        if any(coefficients):
            yield space.element(coefficients)


def find_isomorphism(
    m: Representation,
    n: Representation,
    seed: int = 0,
    tries: int = 64,
    exhaustive_limit: int = 4096,
) -> Optional[ModuleMap]:
    """
    Seeded search through Hom(m, n) for an invertible map.

    Over F_p with |Hom(m, n)| <= exhaustive_limit a miss falls back to walking every
    map, so None is a proof. Otherwise None only means the random search missed.
    """
    _check_same_algebra(m, n)
    if m.dims != n.dims:
        return None
    space = hom(m, n)
    if m.is_zero():
        return ModuleMap.zero(m, n)
    if space.dim != hom(m, m).dim:
        return None
    rng = np.random.default_rng(seed)
    for phi in _candidate_maps(space, rng, tries):
        if phi.is_isomorphism():
            return phi
    if _enumerable(space, exhaustive_limit):
        logger.debug("Random search missed; enumerating Hom of dimension %d", space.dim)
        for phi in _all_maps(space):
            if phi.is_isomorphism():
                return phi
    return None


def is_isomorphic(
    m: Representation,
    n: Representation,
    seed: int = 0,
    tries: int = 64,
    exhaustive_limit: int = 4096,
) -> bool:
    """False is certain only when Hom(m, n) was small enough to enumerate."""
    return find_isomorphism(m, n, seed, tries, exhaustive_limit) is not None


def _minimal_polynomial(a: Matrix) -> list[Scalar]:
    """Monic minimal polynomial, coefficients from the constant term up."""
    f = a.field
    n = a.rows
    powers = [Matrix.identity(f, n)]
    while True:
        nxt = powers[-1] @ a
        basis = Matrix.from_columns(f, [p.flatten() for p in powers], n * n)
        sol = solve(basis, Matrix.column_vector(f, nxt.flatten()))
        if sol.consistent:
            return [f.neg(c) for c in sol.particular.column(0)] + [f.one]
        powers.append(nxt)


def _evaluate(field: ExactField, coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    value = field.zero
    for c in reversed(coeffs):
        value = field.add(field.mul(value, x), c)
    return value


def _divisors(n: int) -> list[int]:
    n = abs(n)
    found = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            found.update((d, n // d))
    return sorted(found)


def _polynomial_roots(field: ExactField, coeffs: Sequence[Scalar]) -> list[Scalar]:
    """Roots in the ground field; over Q only the rational roots of small polynomials."""
    if field.is_prime_field:
        return [x for x in range(field.characteristic) if _evaluate(field, coeffs, x) == 0]
    coeffs = list(coeffs)
    roots: list[Scalar] = []
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(coeffs) <= 1:
        return roots
    scale = lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * scale) for c in coeffs]
    if max(abs(ints[0]), abs(ints[-1])) > 10**9:
        logger.debug("Skipping rational root search for large coefficients")
        return roots
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for candidate in (Fraction(p, q), Fraction(-p, q)):
                if candidate not in roots and _evaluate(field, coeffs, candidate) == 0:
                    roots.append(candidate)
    return sorted(roots)


def eigenvalues(phi: ModuleMap) -> list[Scalar]:
    """Eigenvalues of an endomorphism that lie in the ground field."""
    found: list[Scalar] = []
    for comp in phi.components:
        if comp.rows == 0:
            continue
        for root in _polynomial_roots(phi.source.field, _minimal_polynomial(comp)):
            if root not in found:
                found.append(root)
    return sorted(found)


def _support_components(m: Representation) -> list[list[int]]:
    q = m.quiver
    graph = nx.Graph()
    graph.add_nodes_from(k for k, d in enumerate(m.dims) if d)
    for idx, a in enumerate(q.arrows):
        if not m.maps[idx].is_zero():
            graph.add_edge(q.vertex_index(a.source), q.vertex_index(a.target))
    return sorted(sorted(c) for c in nx.connected_components(graph))


def _fitting_split(psi: ModuleMap) -> Optional[list[tuple[Representation, ModuleMap]]]:
    """M = ker ψ^n ⊕ im ψ^n, or None if one side is zero."""
    m = psi.source
    stable = psi.power(max(m.dims))
    kernels = [kernel_basis(c) for c in stable.components]
    size = sum(k.cols for k in kernels)
    if size == 0 or size == m.total_dim:
        return None
    images = [column_space(c) for c in stable.components]
    return [submodule(m, kernels), submodule(m, images)]


def _find_splitting(
    m: Representation, rng: np.random.Generator, tries: int
) -> Optional[list[tuple[Representation, ModuleMap]]]:
    f = m.field
    components = _support_components(m)
    if len(components) > 1:
        parts = []
        for comp in components:
            members = set(comp)
            spans = [
                Matrix.identity(f, d) if k in members else Matrix.zeros(f, d, 0)
                for k, d in enumerate(m.dims)
            ]
            parts.append(submodule(m, spans))
        return parts
    space = hom(m, m)
    if space.dim <= 1:
        return None
    identity = ModuleMap.identity(m)
    for phi in _candidate_maps(space, rng, tries):
        for lam in [None] + eigenvalues(phi):
            psi = phi if lam is None else phi - identity.scale(lam)
            parts = _fitting_split(psi)
            if parts is not None:
                return parts
    return None


def _local_certificate(m: Representation) -> bool:
    """End(m) = k·id ⊕ N with N a nilpotent ideal."""
    f = m.field
    space = hom(m, m)
    identity = ModuleMap.identity(m)
    nilpotent = []
    for phi in space.basis:
        values = eigenvalues(phi)
        if len(values) != 1:
            return False
        psi = phi - identity.scale(values[0])
        if not psi.power(max(m.dims)).is_zero():
            return False
        nilpotent.append(psi)
    if not nilpotent:
        return True
    length = len(nilpotent[0].flatten())

    def span_matrix(maps: Sequence[ModuleMap]) -> Matrix:
        return Matrix.from_columns(f, [x.flatten() for x in maps], length)

    ideal = span_matrix(nilpotent)
    current = nilpotent
    for _ in range(m.total_dim + 1):
        products = [x.compose(y) for x in nilpotent for y in current]
        products = [p for p in products if not p.is_zero()]
        if not products:
            return True
        matrix = span_matrix(products)
        if not in_span(ideal, matrix):
            return False
        current = [products[c] for c in rref(matrix).pivot_cols]
    return False


@dataclass(frozen=True)
class Decomposition:
    """Indecomposable summands of `module` with their inclusions."""
    module: Representation
    summands: tuple[Representation, ...]
    inclusions: tuple[ModuleMap, ...]

    def dim_vectors(self) -> list[tuple[int, ...]]:
        return [s.dims for s in self.summands]

    def is_certified(self) -> bool:
        """The inclusions assemble to an isomorphism ⊕ summands -> module."""
        f = self.module.field
        for k, d in enumerate(self.module.dims):
            blocks = [inc.components[k] for inc in self.inclusions]
            if not is_invertible(hstack(f, d, blocks)):
                return False
        return True


def decompose(m: Representation, seed: int = 0, tries: int = 64) -> Decomposition:
    """
    Split m into certified indecomposables over a prime field: support components
    first, then Fitting splittings along (shifted) endomorphisms.
    """
    if not m.field.is_prime_field:
        raise DecompositionError(f"decomposition needs a prime field, not {m.field.name}")
    rng = np.random.default_rng(seed)
    pieces: list[tuple[Representation, ModuleMap]] = []
    stack = [(m, ModuleMap.identity(m))]
    while stack:
        part, inclusion = stack.pop()
        if part.is_zero():
            continue
        split = _find_splitting(part, rng, tries)
        if split is None:
            if not _local_certificate(part):
                raise DecompositionError(f"could not certify a summand with dims {part.dims}")
            pieces.append((part, inclusion))
            continue
        logger.debug("Split %s into %s", part.dims, [p.dims for p, _ in split])
        for sub, sub_inclusion in reversed(split):
            stack.append((sub, inclusion.compose(sub_inclusion)))
    pieces.sort(key=lambda item: (-item[0].total_dim, item[0].dims))
    return Decomposition(m, tuple(p for p, _ in pieces), tuple(i for _, i in pieces))


def is_indecomposable(m: Representation, seed: int = 0, tries: int = 64) -> bool:
    """
    True when End(m) is k·id plus a nilpotent ideal; False when an endomorphism
    splits m. Works over Q and F_p.
    """
    if m.is_zero():
        return False
    rng = np.random.default_rng(seed)
    if _find_splitting(m, rng, tries) is not None:
        return False
    if _local_certificate(m):
        return True
    raise DecompositionError(f"indecomposability of {m.dims} could not be decided")


# Numerical invariants and sampling


def euler_form(a: BasicAlgebra, x: Sequence[int], y: Sequence[int]) -> int:
    """⟨x, y⟩ = Σ x_v·y_v - Σ_{α: s -> t} x_t·y_s for right modules."""
    q = a.quiver
    value = sum(xv * yv for xv, yv in zip(x, y))
    for arrow in q.arrows:
        value -= x[q.vertex_index(arrow.target)] * y[q.vertex_index(arrow.source)]
    return value


def random_representation(
    a: BasicAlgebra,
    dims: Sequence[int],
    seed: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
    bound: int = 3,
) -> Representation:
    """
    Random arrow matrices; each violated monomial relation is cleared by zeroing a
    randomly chosen arrow on its path.
    """
    if any(not r.is_monomial for r in a.relations):
        raise UnsupportedShapeError("random modules support monomial relations only")
    if rng is None:
        rng = np.random.default_rng(seed)
    q = a.quiver
    f = a.field
    dims = tuple(int(d) for d in dims)
    maps = []
    for arrow in q.arrows:
        ds, dt = dims[q.vertex_index(arrow.source)], dims[q.vertex_index(arrow.target)]
        rows = [[f.random_element(rng, bound) for _ in range(dt)] for _ in range(ds)]
        maps.append(Matrix.from_rows(f, rows, cols=dt))
    rep = Representation(a, dims, tuple(maps))
    while True:
        violated = None
        for relation in a.relations:
            path = relation.paths[0]
            if not rep.act(path).is_zero():
                violated = path
                break
        if violated is None:
            return rep
        victim = violated.arrows[int(rng.integers(0, len(violated)))]
        idx = q.arrow_index(victim.name)
        cleared = list(rep.maps)
        cleared[idx] = Matrix.zeros(f, cleared[idx].rows, cleared[idx].cols)
        rep = Representation(a, dims, tuple(cleared))
