"""Text formats: quiver files, module specs and complex (tilting candidate) specs."""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from quiver_tilt.algebra import BasicAlgebra, Relation
from quiver_tilt.complexes import ChainMap, Complex
from quiver_tilt.exceptions import (
    FieldError,
    NoPathError,
    ParseError,
    QuiverTiltError,
    UnsupportedShapeError,
)
from quiver_tilt.modrep import (
    ModuleMap,
    Representation,
    canonical_map,
    direct_sum,
    interval_module,
    projective,
    simple,
    zero_module,
)
from quiver_tilt.quiver import Quiver
from quiver_tilt.scalars import ExactField
from quiver_tilt.tilting import (
    ConeStep,
    Recipe,
    ShiftStep,
    SummandStep,
    TiltingCandidate,
    Witness,
    build_candidate,
    build_paper_tilting,
    build_regular_candidate,
)

logger = logging.getLogger(__name__)

NAME = r"[A-Za-z0-9_]+"
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([*+-]))")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


# Quiver files


@dataclass
class RelationSpec:
    """Integer-weighted arrow words; each word is stored source-to-target."""
    terms: list[tuple[int, list[str]]] = field(default_factory=list)

    def display(self) -> str:
        parts = []
        for k, (coef, word) in enumerate(self.terms):
            sign = "-" if coef < 0 else "+"
            body = "*".join(reversed(word))
            if abs(coef) != 1:
                body = f"{abs(coef)}*{body}"
            if k == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


def parse_relation(text: str, line: Optional[int] = None) -> RelationSpec:
    """`[<int>*] a*b*... {(+|-) [<int>*] a*b*...}`, the rightmost arrow applied first."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in relation", line)
        number, name, op = match.groups()
        tokens.append(("int", int(number)) if number else ("name", name) if name else ("op", op))
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    spec = RelationSpec()
    k = 0

    def expect(kind: str):
        nonlocal k
        if k >= len(tokens) or tokens[k][0] != kind:
            raise ParseError(f"expected {kind} in relation", line)
        value = tokens[k][1]
        k += 1
        return value

    sign = 1
    while True:
        if k < len(tokens) and tokens[k] in (("op", "+"), ("op", "-")):
            sign *= -1 if tokens[k][1] == "-" else 1
            k += 1
        coef = 1
        if k < len(tokens) and tokens[k][0] == "int":
            coef = expect("int")
            if expect("op") != "*":
                raise ParseError("expected '*' after a coefficient", line)
        word = [expect("name")]
        while k < len(tokens) and tokens[k] == ("op", "*"):
            k += 1
            word.append(expect("name"))
        spec.terms.append((sign * coef, list(reversed(word))))
        if k == len(tokens):
            return spec
        if tokens[k] not in (("op", "+"), ("op", "-")):
            raise ParseError("terms must be joined by + or -", line)
        sign = 1


@dataclass
class QuiverFile:
    field: ExactField
    vertices: list[str] = field(default_factory=list)
    arrows: list[tuple[str, str, str]] = field(default_factory=list)
    relations: list[RelationSpec] = field(default_factory=list)
    name: str = ""

    @classmethod
    def parse(cls, text: str, name: str = "") -> "QuiverFile":
        parsed_field: Optional[ExactField] = None
        vertices: list[str] = []
        arrows: list[tuple[str, str, str]] = []
        relations: list[RelationSpec] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = _strip_comment(raw)
            if not line:
                continue
            keyword, _, rest = line.partition(" ")
            rest = rest.strip()
            if keyword == "field":
                if parsed_field is not None:
                    raise ParseError("more than one field line", number)
                try:
                    parsed_field = ExactField.parse(rest)
                except FieldError as exc:
                    raise ParseError(str(exc), number) from None
            elif keyword == "vertex":
                if not re.fullmatch(NAME, rest):
                    raise ParseError(f"bad vertex name {rest!r}", number)
                if rest in vertices:
                    raise ParseError(f"vertex {rest} declared twice", number)
                vertices.append(rest)
            elif keyword == "arrow":
                match = re.fullmatch(rf"({NAME})\s*:\s*({NAME})\s*->\s*({NAME})", rest)
                if not match:
                    raise ParseError("expected 'arrow <name>: <src> -> <tgt>'", number)
                arrow = match.groups()
                for v in arrow[1:]:
                    if v not in vertices:
                        raise ParseError(f"arrow {arrow[0]} uses undeclared vertex {v}", number)
                if any(arrow[0] == a[0] for a in arrows):
                    raise ParseError(f"arrow {arrow[0]} declared twice", number)
                arrows.append(arrow)
            elif keyword == "relation":
                spec = parse_relation(rest, number)
                known = {a[0] for a in arrows}
                for _, word in spec.terms:
                    for arrow_name in word:
                        if arrow_name not in known:
                            raise ParseError(f"relation uses unknown arrow {arrow_name}", number)
                relations.append(spec)
            else:
                raise ParseError(f"unknown keyword {keyword!r}", number)
        if parsed_field is None:
            raise ParseError("missing field line")
        if not vertices:
            raise ParseError("no vertices declared")
        return cls(parsed_field, vertices, arrows, relations, name)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "QuiverFile":
        path = Path(path)
        logger.debug("Reading quiver file %s", path)
        return cls.parse(path.read_text(), path.stem)

    def serialize(self) -> str:
        lines = [f"field {'Q' if self.field.characteristic == 0 else f'F {self.field.characteristic}'}"]
        lines += [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {n}: {s} -> {t}" for n, s, t in self.arrows]
        lines += [f"relation {r.display()}" for r in self.relations]
        return "\n".join(lines) + "\n"

    def quiver(self) -> Quiver:
        return Quiver.build(self.vertices, self.arrows, self.name)

    def to_algebra(self, field_override: Optional[ExactField] = None) -> BasicAlgebra:
        f = field_override or self.field
        q = self.quiver()
        relations = [
            Relation.from_terms(f, [(coef, q.path_from_names(word)) for coef, word in r.terms])
            for r in self.relations
        ]
        return BasicAlgebra(q, f, relations, self.name)

    @classmethod
    def from_algebra(cls, a: BasicAlgebra) -> "QuiverFile":
        q = a.quiver
        relations = []
        for relation in a.relations:
            terms = []
            for path, coef in relation.terms:
                p = a.field.characteristic
                # signed representative in (-p/2, p/2]
                value = Fraction(coef - p if p and coef > p // 2 else coef)
                if value.denominator != 1:
                    raise UnsupportedShapeError("quiver files carry integer coefficients only")
                terms.append((int(value), list(path.arrow_names)))
            relations.append(RelationSpec(terms))
        return cls(
            a.field,
            list(q.vertices),
            [(arrow.name, arrow.source, arrow.target) for arrow in q.arrows],
            relations,
            a.name,
        )


# Module specs


def _module_from_line(a: BasicAlgebra, keyword: str, args: list[str], line: Optional[int]) -> Representation:
    try:
        if keyword == "projective" and len(args) == 1:
            return projective(a, args[0])
        if keyword == "simple" and len(args) == 1:
            return simple(a, args[0])
        if keyword == "interval" and len(args) == 2:
            return interval_module(a, args[0], args[1])
    except QuiverTiltError as exc:
        raise ParseError(str(exc), line) from None
    raise ParseError(f"bad module line {keyword} {' '.join(args)}", line)


def parse_module_text(a: BasicAlgebra, text: str) -> Representation:
    """
    Module file: `dim <v> <n>` and `matrix <arrow> <row>;<row>` lines describe one
    explicit summand; `projective <v>`, `simple <v>`, `interval <a> <b>` add more.
    """
    dims: dict[str, int] = {}
    matrices: dict[str, list[list[int]]] = {}
    summands: list[Representation] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        keyword, *args = line.split()
        if keyword == "dim":
            if len(args) != 2 or not args[1].isdigit():
                raise ParseError("expected 'dim <vertex> <n>'", number)
            dims[args[0]] = int(args[1])
        elif keyword == "matrix":
            if len(args) < 2:
                raise ParseError("expected 'matrix <arrow> <row>;<row>'", number)
            body = "".join(args[1:])
            try:
                matrices[args[0]] = [
                    [int(x) for x in row.split(",") if x] for row in body.split(";") if row
                ]
            except ValueError:
                raise ParseError(f"non-integer entry in matrix {args[0]}", number) from None
        else:
            summands.append(_module_from_line(a, keyword, args, number))
    if dims or matrices:
        try:
            summands.insert(0, Representation.build(a, dims, matrices))
        except QuiverTiltError as exc:
            raise ParseError(str(exc)) from None
    if not summands:
        raise ParseError("module file describes no module")
    if len(summands) == 1:
        return summands[0]
    return direct_sum(summands, a).module


def parse_module_spec(a: BasicAlgebra, spec: str) -> Representation:
    """`P<v>`, `S<v>`, `I<a>-<b>`, the long forms `projective:<v>` etc., or a module file path."""
    patterns = [
        (rf"(?:P|projective:)({NAME})", "projective"),
        (rf"(?:S|simple:)({NAME})", "simple"),
        (rf"I({NAME})-({NAME})", "interval"),
        (rf"interval:({NAME}):({NAME})", "interval"),
    ]
    path = Path(spec)
    if path.is_file():
        return parse_module_text(a, path.read_text())
    for pattern, keyword in patterns:
        match = re.fullmatch(pattern, spec)
        if match:
            return _module_from_line(a, keyword, list(match.groups()), None)
    raise ParseError(f"unrecognized module spec {spec!r}")


# Complex specs


@dataclass
class SummandSpec:
    label: str
    terms: list[Optional[str]]
    degree: int

    def display(self) -> str:
        body = " -> ".join(f"P{t}" if t is not None else "0" for t in self.terms)
        return f"summand {self.label}: {body} @{self.degree}"


@dataclass
class WitnessSpec:
    vertex: str
    text: str


@dataclass
class ComplexFile:
    summands: list[SummandSpec] = field(default_factory=list)
    witnesses: list[WitnessSpec] = field(default_factory=list)
    name: str = ""

    @classmethod
    def parse(cls, text: str, name: str = "") -> "ComplexFile":
        summand_re = re.compile(
            rf"summand\s+({NAME})\s*:\s*(P{NAME}|0)(?:\s*->\s*(P{NAME}|0))?\s*@\s*(-?\d+)"
        )
        witness_re = re.compile(rf"witness\s+({NAME})\s*:\s*(.+)")
        result = cls(name=name)
        for number, raw in enumerate(text.splitlines(), start=1):
            line = _strip_comment(raw)
            if not line:
                continue
            if match := summand_re.fullmatch(line):
                label, first, second, degree = match.groups()
                terms = [first] + ([second] if second else [])
                result.summands.append(SummandSpec(
                    label, [None if t == "0" else t[1:] for t in terms], int(degree)
                ))
            elif match := witness_re.fullmatch(line):
                result.witnesses.append(WitnessSpec(match.group(1), match.group(2).strip()))
            else:
                raise ParseError("expected 'summand <label>: <term> [-> <term>] @<degree>'", number)
        if not result.summands:
            raise ParseError("complex file has no summands")
        labels = [s.label for s in result.summands]
        if len(set(labels)) != len(labels):
            raise ParseError("summand labels must be unique")
        return result

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ComplexFile":
        path = Path(path)
        return cls.parse(path.read_text(), path.stem)

    def serialize(self) -> str:
        lines = [s.display() for s in self.summands]
        lines += [f"witness {w.vertex}: {w.text}" for w in self.witnesses]
        return "\n".join(lines) + "\n"

    def build(self, a: BasicAlgebra) -> TiltingCandidate:
        summands = {s.label: summand_complex(a, s) for s in self.summands}
        witnesses = [Witness(w.vertex, parse_recipe(a, summands, w.text)) for w in self.witnesses]
        return build_candidate(a, summands, witnesses, self.name)


def summand_complex(a: BasicAlgebra, spec: SummandSpec) -> Complex:
    terms = [projective(a, v) if v is not None else zero_module(a) for v in spec.terms]
    if len(terms) == 1:
        return Complex.from_module(terms[0], spec.degree)
    first, second = spec.terms
    if first is None or second is None:
        d = ModuleMap.zero(terms[0], terms[1])
    else:
        try:
            d = canonical_map(a, first, second)
        except NoPathError as exc:
            raise ParseError(f"summand {spec.label}: {exc}") from None
    return Complex.from_terms(a, spec.degree, terms, [d])


def canonical_chain_map(source: Complex, target: Complex) -> ChainMap:
    """
    In each degree where both terms are indecomposable projectives P_v, P_w joined by a
    unique path, the canonical map P_v -> P_w; zero elsewhere. Raises ChainMapError
    when the result does not commute with the differentials.
    """
    a = source.algebra
    tops = [(projective(a, v), v) for v in a.vertices]

    def top_of(term: Representation) -> Optional[str]:
        return next((v for p, v in tops if p == term), None)

    components: dict[int, ModuleMap] = {}
    for n in range(min(source.lo, target.lo), max(source.hi, target.hi) + 1):
        v, w = top_of(source.term(n)), top_of(target.term(n))
        if v is None or w is None:
            continue
        try:
            components[n] = canonical_map(a, v, w)
        except NoPathError:
            continue
    return ChainMap.build(source, target, components)


_SHIFTED = re.compile(rf"({NAME})\[(-?\d+)\]")
_CONE = re.compile(rf"cone\s+({NAME})\s*->\s*({NAME})")


def parse_recipe(a: BasicAlgebra, summands: dict[str, Complex], text: str) -> Recipe:
    """`<label>`, `<label>[<n>]` or `cone <a> -> <b>` (along the canonical chain map)."""
    if text in summands:
        return SummandStep(text)
    if match := _SHIFTED.fullmatch(text):
        if match.group(1) not in summands:
            raise ParseError(f"witness names unknown summand {match.group(1)}")
        return ShiftStep(SummandStep(match.group(1)), int(match.group(2)))
    if match := _CONE.fullmatch(text):
        src, tgt = match.groups()
        if src not in summands or tgt not in summands:
            raise ParseError(f"witness names unknown summands in {text!r}")
        g = canonical_chain_map(summands[src], summands[tgt])
        return ConeStep(SummandStep(src), SummandStep(tgt), g.components)
    raise ParseError(f"unrecognized witness recipe {text!r}")


BUILTIN_COMPLEXES = ("paper", "regular", "p1-shift")


def p1_shift_candidate(a: BasicAlgebra) -> TiltingCandidate:
    """{P_v, P_v[1]} for the first vertex v: self-orthogonality fails at l = +-1."""
    v = a.vertices[0]
    p = Complex.from_module(projective(a, v), 0)
    summands = {f"P{v}": p, f"P{v}[1]": Complex.from_module(projective(a, v), -1)}
    return build_candidate(a, summands, [Witness(v, SummandStep(f"P{v}"))], f"P{v}+P{v}[1]")


def load_candidate(a: BasicAlgebra, spec: str, corrupt_summand: Optional[int] = None) -> TiltingCandidate:
    """`builtin:paper`, `builtin:regular`, `builtin:p1-shift` or a complex file path."""
    if spec.startswith("builtin:"):
        key = spec.split(":", 1)[1]
        if key == "paper":
            return build_paper_tilting(a, corrupt_summand)
        if key == "regular":
            return build_regular_candidate(a)
        if key == "p1-shift":
            return p1_shift_candidate(a)
        raise ParseError(f"unknown builtin complex {key!r}; choose from {', '.join(BUILTIN_COMPLEXES)}")
    return ComplexFile.load(spec).build(a)
