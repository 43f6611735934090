"""Representation type: Dynkin classification of quivers and interval modules of linear quivers."""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field

from quiver_tilt.algebra import BasicAlgebra
from quiver_tilt.exceptions import (
    DecompositionError,
    QuiverError,
    RepresentationError,
    UnsupportedShapeError,
)
from quiver_tilt.modrep import (
    Representation,
    decompose,
    interval_module,
    is_indecomposable,
    is_isomorphic,
    random_representation,
)
from quiver_tilt.quiver import Quiver

logger = logging.getLogger(__name__)


class DynkinFamily(str, Enum):
    """Family of a connected underlying graph."""
    A = "A"
    D = "D"
    E = "E"
    NOT_DYNKIN = "not_dynkin"


class GraphClass(BaseModel):
    """Classification of one connected underlying graph."""
    family: DynkinFamily
    rank: int
    vertices: list[str] = Field(default_factory=list)
    branch_vertex: Optional[str] = None
    arm_profile: Optional[list[int]] = None
    reason: str = ""

    @property
    def is_dynkin(self) -> bool:
        return self.family is not DynkinFamily.NOT_DYNKIN

    @property
    def label(self) -> str:
        if not self.is_dynkin:
            return "not Dynkin"
        return f"{self.family.value}{self.rank}"

    def positive_root_count(self) -> Optional[int]:
        """Number of indecomposables of a hereditary algebra of this type (Gabriel)."""
        n = self.rank
        if self.family is DynkinFamily.A:
            return n * (n + 1) // 2
        if self.family is DynkinFamily.D:
            return n * (n - 1)
        if self.family is DynkinFamily.E:
            return {6: 36, 7: 63, 8: 120}[n]
        return None


_E_ARMS = {(1, 2, 2): 6, (1, 2, 3): 7, (1, 2, 4): 8}


def _arms(graph: nx.Graph, centre: str) -> list[int]:
    """Edge lengths of the paths leaving `centre` in a tree whose other vertices have degree <= 2."""
    lengths = []
    for start in graph[centre]:
        previous, current, length = centre, start, 1
        while graph.degree(current) == 2:
            previous, current = current, next(n for n in graph[current] if n != previous)
            length += 1
        lengths.append(length)
    return sorted(lengths)


def classify_underlying_graph(q: Quiver) -> GraphClass:
    """
    Dynkin type of the underlying undirected graph of a connected quiver, or a
    witness that it is not Dynkin. Orientation is ignored.
    """
    multigraph = q.underlying_graph()
    vertices = list(q.vertices)
    n = len(vertices)
    if n == 0 or not nx.is_connected(multigraph):
        raise QuiverError("classify_underlying_graph needs a connected quiver; use classify_components")

    def not_dynkin(reason: str, **extra) -> GraphClass:
        return GraphClass(family=DynkinFamily.NOT_DYNKIN, rank=n, vertices=vertices, reason=reason, **extra)

    if nx.number_of_selfloops(multigraph):
        return not_dynkin("loop")
    graph = nx.Graph(multigraph)
    if graph.number_of_edges() != multigraph.number_of_edges():
        return not_dynkin("multiple edges")
    if not nx.is_tree(graph):
        return not_dynkin("cycle in the underlying graph")
    branches = [v for v in vertices if graph.degree(v) >= 3]
    if not branches:
        return GraphClass(family=DynkinFamily.A, rank=n, vertices=vertices, reason="path")
    if len(branches) > 1:
        return not_dynkin(f"{len(branches)} branch vertices")
    centre = branches[0]
    if graph.degree(centre) > 3:
        return not_dynkin(
            f"vertex {centre} of degree {graph.degree(centre)}",
            branch_vertex=centre,
            arm_profile=_arms(graph, centre),
        )
    arms = _arms(graph, centre)
    extra = dict(branch_vertex=centre, arm_profile=arms)
    if arms[0] == 1 and arms[1] == 1:
        return GraphClass(family=DynkinFamily.D, rank=n, vertices=vertices, reason="arms (1, 1, k)", **extra)
    if tuple(arms) in _E_ARMS:
        return GraphClass(family=DynkinFamily.E, rank=n, vertices=vertices, reason=f"arms {tuple(arms)}", **extra)
    return not_dynkin(f"arm profile {tuple(arms)}", **extra)


def _subquiver(q: Quiver, vertices: set[str]) -> Quiver:
    return Quiver(
        tuple(v for v in q.vertices if v in vertices),
        tuple(a for a in q.arrows if a.source in vertices),
        q.name,
    )


def classify_components(q: Quiver) -> list[GraphClass]:
    """One classification per connected component, in vertex order."""
    components = nx.connected_components(q.underlying_graph())
    ordered = sorted(components, key=lambda c: min(q.vertex_index(v) for v in c))
    return [classify_underlying_graph(_subquiver(q, set(c))) for c in ordered]


def gabriel_finite(q: Quiver) -> bool:
    """kQ has finitely many indecomposables iff every component is Dynkin."""
    return all(c.is_dynkin for c in classify_components(q))


# Interval modules


@dataclass(frozen=True)
class IntervalModule:
    """The module supported on vertices lo..hi of a linear quiver with identity arrow maps."""
    lo: str
    hi: str
    module: Representation

    @property
    def dims(self) -> tuple[int, ...]:
        return self.module.dims

    def display(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _check_linear_monomial(a: BasicAlgebra) -> None:
    if not a.quiver.is_linear():
        raise UnsupportedShapeError("interval enumeration needs a linearly oriented quiver")
    if any(not r.is_monomial for r in a.relations):
        raise UnsupportedShapeError("interval enumeration needs monomial relations")


def _killed_intervals(a: BasicAlgebra) -> set[tuple[int, int]]:
    q = a.quiver
    spans = [
        (q.vertex_index(r.source), q.vertex_index(r.target)) for r in a.relations
    ]
    n = len(q.vertices)
    return {
        (lo, hi)
        for lo in range(n)
        for hi in range(lo, n)
        if any(lo <= s and t <= hi for s, t in spans)
    }


def enumerate_indecomposables(a: BasicAlgebra, verify: bool = True) -> list[IntervalModule]:
    """
    All indecomposables of kA_n/I with I monomial: the intervals [lo, hi] that
    contain no relation path, ordered by (lo, hi).
    """
    _check_linear_monomial(a)
    q = a.quiver
    killed = _killed_intervals(a)
    result = []
    n = len(q.vertices)
    for lo in range(n):
        for hi in range(lo, n):
            if (lo, hi) in killed:
                continue
            module = interval_module(a, q.vertices[lo], q.vertices[hi])
            if verify and not is_indecomposable(module):
                raise DecompositionError(f"interval [{q.vertices[lo]}, {q.vertices[hi]}] splits")
            result.append(IntervalModule(q.vertices[lo], q.vertices[hi], module))
    logger.info("%s has %d interval modules", a.name, len(result))
    return result


def _interval_dims(intervals: list[IntervalModule]) -> dict[tuple[int, ...], IntervalModule]:
    return {iv.dims: iv for iv in intervals}


def zero_one_modules(a: BasicAlgebra) -> Iterator[Representation]:
    """Every module over F_p with all vertex dimensions in {0, 1} and arrow scalars in {0, 1}."""
    q = a.quiver
    for dims in itertools.product((0, 1), repeat=len(q.vertices)):
        live = [
            arrow.name for arrow in q.arrows
            if dims[q.vertex_index(arrow.source)] and dims[q.vertex_index(arrow.target)]
        ]
        for values in itertools.product((0, 1), repeat=len(live)):
            matrices = {name: [[v]] for name, v in zip(live, values)}
            try:
                yield Representation.build(a, dims, matrices)
            except RepresentationError:
                continue


def zero_one_summands(a: BasicAlgebra) -> set[tuple[int, ...]]:
    """Dimension vectors of the summands met when decomposing every 0/1 module."""
    seen: set[tuple[int, ...]] = set()
    for m in zero_one_modules(a):
        seen.update(s.dims for s in decompose(m).summands)
    return seen


# Finite-type certificate


class FiniteTypeStatus(str, Enum):
    """Outcome of the finite representation type certificate."""
    FINITE = "finite"
    INFINITE = "infinite"
    NOT_CERTIFIED = "not_certified"


class SampleCheck(BaseModel):
    """Random modules decomposed and matched against the enumerated list."""
    samples: int = 0
    summands: int = 0
    unmatched: int = 0
    types_seen: int = 0
    skipped_reason: str = ""


class FiniteTypeReport(BaseModel):
    algebra: str
    field: str
    status: FiniteTypeStatus
    components: list[GraphClass] = Field(default_factory=list)
    method: str = ""
    indecomposable_count: Optional[int] = None
    indecomposables: list[str] = Field(default_factory=list)
    sample_check: Optional[SampleCheck] = None
    cited: list[str] = Field(default_factory=list)
    reason: str = ""

    @property
    def is_finite(self) -> bool:
        return self.status is FiniteTypeStatus.FINITE


PURE_SEMISIMPLE_CITATION = (
    "finite representation type is equivalent to pure global dimension 0 "
    "(Auslander; Tachikawa): external theorem, not machine-checked"
)


def sample_decompositions(
    a: BasicAlgebra,
    intervals: list[IntervalModule],
    samples: int = 50,
    max_entry: int = 2,
    seed: int = 0,
) -> SampleCheck:
    """Decompose random modules and match every summand to an interval module."""
    if not a.field.is_prime_field:
        return SampleCheck(skipped_reason=f"decomposition needs a prime field, not {a.field.name}")
    rng = np.random.default_rng(seed)
    by_dims = _interval_dims(intervals)
    check = SampleCheck()
    seen: set[tuple[int, ...]] = set()
    n = len(a.vertices)
    for _ in range(samples):
        dims = [int(d) for d in rng.integers(0, max_entry + 1, size=n)]
        m = random_representation(a, dims, rng=rng)
        check.samples += 1
        for summand in decompose(m, seed=seed).summands:
            check.summands += 1
            match = by_dims.get(summand.dims)
            if match is None or not is_isomorphic(summand, match.module):
                check.unmatched += 1
            else:
                seen.add(summand.dims)
    check.types_seen = len(seen)
    logger.debug("Decomposed %d random modules into %d summands", check.samples, check.summands)
    return check


def finite_type_certificate(
    a: BasicAlgebra, samples: int = 50, max_entry: int = 2, seed: int = 0
) -> FiniteTypeReport:
    """
    Certify finite representation type: interval enumeration for linear quivers
    with monomial relations, Gabriel's theorem for path algebras; anything else
    is reported as not certified.
    """
    report = FiniteTypeReport(
        algebra=a.name, field=a.field.name, status=FiniteTypeStatus.NOT_CERTIFIED,
        components=classify_components(a.quiver),
    )
    linear = a.quiver.is_linear() and all(r.is_monomial for r in a.relations)
    if linear:
        intervals = enumerate_indecomposables(a)
        report.method = "interval enumeration"
        report.indecomposable_count = len(intervals)
        report.indecomposables = [iv.display() for iv in intervals]
        report.sample_check = sample_decompositions(a, intervals, samples, max_entry, seed)
        skipped = report.sample_check.skipped_reason
        if skipped:
            report.method = f"interval enumeration (sample check skipped: {skipped})"
            report.reason = "enumeration not cross-checked by random decompositions"
        if report.sample_check.unmatched:
            report.reason = "a random module has a summand outside the enumerated list"
        else:
            report.status = FiniteTypeStatus.FINITE
    elif a.is_path_algebra:
        report.method = "Gabriel's theorem"
        if all(c.is_dynkin for c in report.components):
            report.status = FiniteTypeStatus.FINITE
            report.indecomposable_count = sum(c.positive_root_count() for c in report.components)
        else:
            report.status = FiniteTypeStatus.INFINITE
            report.reason = "underlying graph is not a union of Dynkin diagrams"
    else:
        report.reason = "only linear quivers with monomial relations and path algebras are supported"
    if report.is_finite:
        report.cited.append(PURE_SEMISIMPLE_CITATION)
    logger.info("Finite type of %s: %s", a.name, report.status.value)
    return report
