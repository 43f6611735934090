"""Finite quivers, paths and path combinatorics."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import networkx as nx

from quiver_tilt.exceptions import (
    CyclicQuiverError,
    NotComposableError,
    QuiverError,
    UnknownVertexError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    """A named arrow `name: source -> target`."""
    name: str
    source: str
    target: str

    def __str__(self) -> str:
        return f"{self.name}: {self.source} -> {self.target}"


@dataclass(frozen=True)
class Path:
    """
    A path of composable arrows, stored source-to-target (β_1 first).

    The empty arrow sequence is the lazy path at `source` (= `target`).
    """
    source: str
    target: str
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if not self.arrows:
            if self.source != self.target:
                raise QuiverError("a lazy path must have source == target")
            return
        if self.arrows[0].source != self.source or self.arrows[-1].target != self.target:
            raise QuiverError(f"arrows do not run from {self.source} to {self.target}")
        for prev, curr in zip(self.arrows, self.arrows[1:]):
            if prev.target != curr.source:
                raise QuiverError(f"target of {prev.name} != source of {curr.name}")

    @classmethod
    def lazy(cls, vertex: str) -> "Path":
        return cls(vertex, vertex, ())

    @classmethod
    def of_arrows(cls, arrows: Sequence[Arrow]) -> "Path":
        if not arrows:
            raise QuiverError("use Path.lazy for the empty path")
        return cls(arrows[0].source, arrows[-1].target, tuple(arrows))

    @property
    def is_lazy(self) -> bool:
        return not self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def vertices(self) -> list[str]:
        return [self.source] + [a.target for a in self.arrows]

    def occurrences(self, sub: "Path") -> list[int]:
        """Start offsets at which `sub` occurs as a contiguous piece of this path."""
        if sub.is_lazy:
            return [i for i, v in enumerate(self.vertices()) if v == sub.source]
        n = len(sub)
        return [
            i for i in range(len(self) - n + 1) if self.arrows[i:i + n] == sub.arrows
        ]

    def contains(self, sub: "Path") -> bool:
        return bool(self.occurrences(sub))

    def display(self) -> str:
        """Right-to-left notation `(y|β_r|...|β_1|x)`."""
        inner = [a.name for a in reversed(self.arrows)]
        return "(" + "|".join([self.target, *inner, self.source]) + ")"

    def __str__(self) -> str:
        return self.display()


def compose(p: Path, q: Path) -> Path:
    """The path "q, then p"; lazy paths are neutral."""
    if q.target != p.source:
        raise NotComposableError(f"cannot compose {p} after {q}")
    if q.is_lazy:
        return p
    if p.is_lazy:
        return q
    return Path(q.source, p.target, q.arrows + p.arrows)


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with ordered vertices Q_0 and arrows Q_1."""
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex names must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("arrow names must be unique")
        known = set(self.vertices)
        for a in self.arrows:
            if a.source not in known or a.target not in known:
                raise QuiverError(f"arrow {a} has an undeclared endpoint")

    @classmethod
    def build(
        cls,
        vertices: Iterable[Union[str, int]],
        arrows: Iterable[tuple[str, Union[str, int], Union[str, int]]],
        name: str = "",
    ) -> "Quiver":
        """Build from plain vertex names and `(name, source, target)` triples."""
        return cls(
            tuple(str(v) for v in vertices),
            tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows),
            name,
        )

    @cached_property
    def _vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    def vertex_index(self, vertex: Union[str, int]) -> int:
        try:
            return self._vertex_index[str(vertex)]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {vertex!r}") from None

    def check_vertex(self, vertex: Union[str, int]) -> str:
        self.vertex_index(vertex)
        return str(vertex)

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[self._arrow_index[name]]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def arrow_index(self, name: str) -> int:
        return self._arrow_index[name]

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_index

    def outgoing(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def incoming(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == vertex]

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for a in self.arrows:
            graph.add_edge(a.source, a.target, key=a.name)
        return graph

    def underlying_graph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for a in self.arrows:
            graph.add_edge(a.source, a.target, key=a.name)
        return graph

    def opposite(self) -> "Quiver":
        return Quiver(
            self.vertices,
            tuple(Arrow(a.name, a.target, a.source) for a in self.arrows),
            f"{self.name}^op" if self.name else "",
        )

    def is_acyclic(self) -> bool:
        """True iff the quiver has no oriented cycle (loops count as cycles)."""
        return nx.is_directed_acyclic_graph(self.to_networkx())

    def path_sort_key(self, path: Path) -> tuple:
        """Length first, then arrow declaration order; lazy paths by vertex order."""
        if path.is_lazy:
            return (0, (self.vertex_index(path.source),))
        return (len(path), tuple(self._arrow_index[a.name] for a in path.arrows))

    @cached_property
    def _all_paths(self) -> tuple[Path, ...]:
        if not self.is_acyclic():
            raise CyclicQuiverError(f"quiver {self.name or ''} has an oriented cycle".strip())
        paths: list[Path] = [Path.lazy(v) for v in self.vertices]
        frontier = [Path.of_arrows([a]) for a in self.arrows]
        while frontier:
            paths.extend(frontier)
            frontier = [
                Path(p.source, a.target, p.arrows + (a,))
                for p in frontier
                for a in self.outgoing(p.target)
            ]
        paths.sort(key=self.path_sort_key)
        logger.debug("Enumerated %d paths of quiver %s", len(paths), self.name)
        return tuple(paths)

    def enumerate_paths(self) -> list[Path]:
        """All paths, lazy ones included, ordered length-then-lex."""
        return list(self._all_paths)

    def paths_between(self, source: str, target: str) -> list[Path]:
        source, target = self.check_vertex(source), self.check_vertex(target)
        return [p for p in self._all_paths if p.source == source and p.target == target]

    def path_from_names(self, names: Sequence[str]) -> Path:
        """Path from arrow names listed source-to-target."""
        return Path.of_arrows([self.arrow(n) for n in names])

    def is_linear(self) -> bool:
        """True iff the quiver is 1 -> 2 -> ... -> n in declaration order."""
        if len(self.arrows) != len(self.vertices) - 1:
            return False
        return all(
            a.source == self.vertices[i] and a.target == self.vertices[i + 1]
            for i, a in enumerate(self.arrows)
        )


def linear_quiver(n: int, prefix: str = "a", name: Optional[str] = None) -> Quiver:
    """The linearly oriented quiver 1 -> 2 -> ... -> n with arrows a1..a(n-1)."""
    return Quiver.build(
        range(1, n + 1),
        [(f"{prefix}{i}", i, i + 1) for i in range(1, n)],
        name or f"A{n}",
    )


def quiver_e() -> Quiver:
    """
    The quiver E: the chain 2 -> 3 -> ... -> 10 with a branch arrow c: 8 -> 1.

    The branch orientation is the one under which End of the tilting complex
    over R has E as its quiver (see tilting.verify_tilting).
    """
    arrows = [(f"b{i}", i, i + 1) for i in range(2, 10)]
    arrows.append(("c", 8, 1))
    return Quiver.build(range(1, 11), arrows, "E")


def builtin_quivers() -> dict[str, Quiver]:
    return {"A10": linear_quiver(10), "E": quiver_e()}
