"""Workbench that wires configuration, field and seed to the computational modules."""

import logging
from typing import Any, Optional, Sequence, Union

from quiver_tilt.algebra import BasicAlgebra, builtin_algebras
from quiver_tilt.config import Config
from quiver_tilt.exceptions import ParseError
from quiver_tilt.fileformat import QuiverFile, load_candidate, parse_module_spec
from quiver_tilt.modrep import (
    Representation,
    ext,
    global_dimension,
    hom,
    projective_resolution,
)
from quiver_tilt.repclass import classify_components, finite_type_certificate
from quiver_tilt.repro import ReproReport, paper_repro
from quiver_tilt.scalars import ExactField
from quiver_tilt.tilting import (
    TiltingCandidate,
    TiltingReport,
    paper_generator_map,
    regular_generator_map,
    verify_tilting,
)

logger = logging.getLogger(__name__)

BUILTIN_PREFIX = "builtin:"


class Workbench:
    """
    Main entry point for quiver-tilt computations.

    Resolves algebra, module and complex specs, applies the configured field,
    seed and search budgets, and returns JSON-ready reports.
    """

    def __init__(
        self,
        config: Optional[Config] = None,
        field: Optional[Union[str, ExactField]] = None,
        seed: Optional[int] = None,
    ):
        self.config = config or Config.from_default_locations()
        if isinstance(field, str):
            field = ExactField.parse(field)
        self._field_override: Optional[ExactField] = field
        self.seed = self.config.random.seed if seed is None else seed

    @property
    def field(self) -> ExactField:
        return self._field_override or self.config.field.build()

    # ============ Algebras ============

    def load_algebra(self, spec: str) -> BasicAlgebra:
        """`builtin:R|S|A10|E` over the working field, or a quiver file (its own field unless overridden)."""
        if spec.startswith(BUILTIN_PREFIX):
            name = spec[len(BUILTIN_PREFIX):]
            algebras = builtin_algebras(self.field)
            if name not in algebras:
                raise ParseError(f"unknown builtin algebra {name!r}; choose from {', '.join(algebras)}")
            return algebras[name]
        return QuiverFile.load(spec).to_algebra(self._field_override)

    def info(self, a: BasicAlgebra) -> dict[str, Any]:
        """Dimension, basis, idempotents and the table dim e_j A e_i."""
        table = a.hom_dimension_table()
        return {
            "algebra": a.name,
            "field": a.field.name,
            "vertices": list(a.vertices),
            "arrows": [str(arrow) for arrow in a.quiver.arrows],
            "relations": [r.display() for r in a.relations],
            "dimension": a.dim,
            "basis": [p.display() for p in a.basis],
            "idempotents": {v: f"e_{v}" for v in a.vertices},
            "hom_dimensions": {
                i: {j: table[(i, j)] for j in a.vertices} for i in a.vertices
            },
        }

    # ============ Modules ============

    def module(self, a: BasicAlgebra, spec: str) -> Representation:
        return parse_module_spec(a, spec)

    def hom(self, a: BasicAlgebra, m_spec: str, n_spec: str, basis: bool = False) -> dict[str, Any]:
        m, n = self.module(a, m_spec), self.module(a, n_spec)
        space = hom(m, n)
        result: dict[str, Any] = {
            "source": {"spec": m_spec, "dims": list(m.dims)},
            "target": {"spec": n_spec, "dims": list(n.dims)},
            "dimension": space.dim,
        }
        if basis:
            result["basis"] = [
                {v: g.at(v).to_lists() for v in a.vertices} for g in space.basis
            ]
        return result

    def ext(self, a: BasicAlgebra, m_spec: str, n_spec: str, degree: int) -> dict[str, Any]:
        m, n = self.module(a, m_spec), self.module(a, n_spec)
        result = ext(m, n, degree, self.config.resolution.max_len)
        return {
            "source": {"spec": m_spec, "dims": list(m.dims)},
            "target": {"spec": n_spec, "dims": list(n.dims)},
            "degree": degree,
            "dimension": result.dimension,
            "hom_dimensions": list(result.hom_dimensions),
        }

    def resolve(self, a: BasicAlgebra, m_spec: str, max_len: Optional[int] = None) -> dict[str, Any]:
        m = self.module(a, m_spec)
        bound = self.config.resolution.max_len if max_len is None else max_len
        res = projective_resolution(m, bound)
        return {
            "module": {"spec": m_spec, "dims": list(m.dims)},
            "length": res.length,
            "complete": res.complete,
            "terms": [
                {"degree": -k, "projectives": [f"P{v}" for v in vertices], "dims": list(term.dims)}
                for k, (term, vertices) in enumerate(zip(res.terms, res.term_vertices))
            ],
        }

    def global_dimension(self, a: BasicAlgebra) -> int:
        return global_dimension(a, self.config.resolution.max_len)

    # ============ Tilting ============

    def candidate(self, a: BasicAlgebra, spec: str, corrupt_summand: Optional[int] = None) -> TiltingCandidate:
        return load_candidate(a, spec, corrupt_summand)

    def tilt_verify(
        self,
        a: BasicAlgebra,
        spec: str,
        target: Optional[BasicAlgebra] = None,
        corrupt_summand: Optional[int] = None,
    ) -> TiltingReport:
        """
        Verify a candidate. The ten-summand complex T is matched against S along the standard
        generators and the regular candidate against the algebra itself; other
        candidates are matched by presentation only when a target is given.
        """
        t = self.candidate(a, spec, corrupt_summand)
        generator_map = None
        if spec == "builtin:paper":
            target = target or self.load_algebra("builtin:S")
            generator_map = paper_generator_map
        elif spec == "builtin:regular" and target is None:
            target = a
            generator_map = regular_generator_map
        settings = self.config.tilting
        return verify_tilting(
            t,
            target=target,
            generator_map=generator_map,
            margin=settings.l_margin,
            method=settings.radical_method,
            search_depth=settings.search_depth,
            search_max_objects=settings.search_max_objects,
        )

    # ============ Classification ============

    def classify(self, a: BasicAlgebra) -> dict[str, Any]:
        components = classify_components(a.quiver)
        certificate = finite_type_certificate(
            a, samples=self.config.repro.finite_type_samples, seed=self.seed
        )
        return {
            "algebra": a.name,
            "components": [
                {"type": c.label, **c.model_dump(mode="json")} for c in components
            ],
            "finite_type": certificate.model_dump(mode="json"),
        }

    # ============ Reproduction ============

    def paper_repro(
        self, fields: Optional[Sequence[str]] = None, corrupt_summand: Optional[int] = None
    ) -> ReproReport:
        names = list(fields) if fields else list(self.config.repro.fields)
        settings = self.config
        return paper_repro(
            [ExactField.parse(name) for name in names],
            seed=self.seed,
            corrupt_summand=corrupt_summand,
            hereditary_samples=settings.repro.hereditary_samples,
            finite_type_samples=settings.repro.finite_type_samples,
            euler_samples=settings.repro.euler_samples,
            l_margin=settings.tilting.l_margin,
            radical_method=settings.tilting.radical_method,
            search_depth=settings.tilting.search_depth,
            search_max_objects=settings.tilting.search_max_objects,
        )

    def get_stats(self) -> dict[str, Any]:
        """Working field, seed and the configured budgets."""
        return {
            "field": self.field.name,
            "seed": self.seed,
            "resolution_max_len": self.config.resolution.max_len,
            "tilting": self.config.tilting.model_dump(),
        }
