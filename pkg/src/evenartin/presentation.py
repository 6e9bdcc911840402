"""Defining graphs of even Artin groups.

A :class:`CoxeterGraph` stores a finite vertex set and the finite labels
``m(s, t)``; a missing edge means ``m(s, t) = infinity``.  Vertices are
ordered by plain string comparison and every choice made downstream
(decomposition vertex, HNN letter order) follows that order.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ValidationError(ValueError):
    """The graph does not define an even Artin group."""


class NotFCError(ValidationError):
    """Some triangle has fewer than two edges labelled 2."""

    def __init__(self, triangle):
        self.triangle = triangle
        a, b, c = triangle
        super().__init__(f"not of FC type: triangle {a} {b} {c} has fewer than two edges labelled 2")


class GraphParseError(ValueError):
    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)


@dataclass(frozen=True)
class CoxeterGraph:
    """Labelled graph; ``edges`` holds ``(s, t, m)`` with ``s < t``."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, int]] | Mapping = ()) -> CoxeterGraph:
        if isinstance(edges, Mapping):
            edges = [(*pair, m) for pair, m in edges.items()]
        norm = []
        for s, t, m in edges:
            s, t = sorted((s, t))
            norm.append((s, t, m))
        return cls(tuple(sorted(vertices)), tuple(sorted(norm)))

    @cached_property
    def _labels(self) -> Mapping[frozenset, int]:
        return MappingProxyType({frozenset((s, t)): m for s, t, m in self.edges})

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def label(self, s: str, t: str) -> int | None:
        """``m(s, t)``, or ``None`` for infinity."""
        return self._labels.get(frozenset((s, t)))

    def linked(self, s: str, t: str) -> bool:
        return s != t and frozenset((s, t)) in self._labels

    def neighbours(self, v: str) -> tuple[str, ...]:
        return tuple(s for s in self.vertices if self.linked(v, s))

    def __len__(self):
        return len(self.vertices)

    def __str__(self):
        return format_graph(self)


def validate(graph: CoxeterGraph) -> None:
    """Raise :class:`ValidationError` on the first defect found."""
    seen = set()
    for v in graph.vertices:
        if not IDENT.match(v):
            raise ValidationError(f"bad vertex identifier {v!r}")
        if v in seen:
            raise ValidationError(f"duplicate vertex {v}")
        seen.add(v)
    pairs = set()
    for s, t, m in graph.edges:
        if s == t:
            raise ValidationError(f"self-edge at {s}")
        for v in (s, t):
            if v not in seen:
                raise ValidationError(f"edge {s} {t}: unknown vertex {v}")
        if (s, t) in pairs:
            raise ValidationError(f"duplicate edge {s} {t}")
        pairs.add((s, t))
        if not isinstance(m, int) or m < 2:
            raise ValidationError(f"edge {s} {t}: label {m} < 2")
        if m % 2:
            raise ValidationError(f"edge {s} {t}: odd label {m}")


def triangles(graph: CoxeterGraph):
    for a, b, c in itertools.combinations(graph.vertices, 3):
        if graph.linked(a, b) and graph.linked(b, c) and graph.linked(a, c):
            yield a, b, c


def fc_violation(graph: CoxeterGraph) -> tuple[str, str, str] | None:
    for a, b, c in triangles(graph):
        twos = sum(graph.label(p, q) == 2 for p, q in ((a, b), (b, c), (a, c)))
        if twos < 2:
            return a, b, c
    return None


def is_fc_type(graph: CoxeterGraph) -> bool:
    """Even graphs only: FC type iff every triangle has two edges labelled 2."""
    return fc_violation(graph) is None


def is_spherical_even(graph: CoxeterGraph) -> bool:
    vs = graph.vertices
    if any(not graph.linked(s, t) for s, t in itertools.combinations(vs, 2)):
        return False
    return all(sum(graph.label(v, s) > 2 for s in vs if s != v) <= 1 for v in vs)


def require_even_fc(graph: CoxeterGraph) -> None:
    validate(graph)
    bad = fc_violation(graph)
    if bad is not None:
        raise NotFCError(bad)


def full_subgraph(graph: CoxeterGraph, vertices: Iterable[str]) -> CoxeterGraph:
    keep = frozenset(vertices)
    unknown = keep - graph.vertex_set
    if unknown:
        raise ValueError(f"unknown vertex {sorted(unknown)[0]}")
    return CoxeterGraph(
        tuple(v for v in graph.vertices if v in keep),
        tuple(e for e in graph.edges if e[0] in keep and e[1] in keep),
    )


def link(graph: CoxeterGraph, z: str) -> CoxeterGraph:
    if z not in graph.vertex_set:
        raise ValueError(f"unknown vertex {z}")
    return full_subgraph(graph, graph.neighbours(z))


@dataclass(frozen=True, eq=False)
class DecompositionData:
    """Everything the splitting at ``z`` needs.

    ``half_labels[s]`` is ``m(z, s) / 2`` for ``s`` in the link.  The
    amalgamating maps of the HNN tower are identities on the
    ``star_subgraphs`` and are never stored.
    """

    graph: CoxeterGraph
    z: str
    link: CoxeterGraph
    gamma1: CoxeterGraph
    L1: CoxeterGraph
    hnn_letters: tuple[str, ...]
    star_subgraphs: Mapping[str, CoxeterGraph]
    half_labels: Mapping[str, int]

    def tower(self):
        """Vertex sets X_0 = L1, X_1, ..., X_n = L."""
        out = [self.L1.vertex_set]
        for x in self.hnn_letters:
            out.append(out[-1] | {x})
        return out


def decompose_at(graph: CoxeterGraph, z: str) -> DecompositionData:
    require_even_fc(graph)
    lk = link(graph, z)
    half = {s: graph.label(z, s) // 2 for s in lk.vertices}
    for s, t, m in lk.edges:
        if half[s] > 1 and half[t] > 1:
            raise NotFCError(tuple(sorted((z, s, t))))
        if max(half[s], half[t]) > 1 and m != 2:
            raise NotFCError(tuple(sorted((z, s, t))))
    l1 = full_subgraph(lk, [s for s in lk.vertices if half[s] == 1])
    xs = tuple(s for s in lk.vertices if half[s] > 1)
    stars = {x: link(lk, x) for x in xs}
    return DecompositionData(
        graph=graph,
        z=z,
        link=lk,
        gamma1=full_subgraph(graph, [v for v in graph.vertices if v != z]),
        L1=l1,
        hnn_letters=xs,
        star_subgraphs=MappingProxyType(stars),
        half_labels=MappingProxyType(half),
    )


# -- text and JSON formats -------------------------------------------------

def parse_graph(text: str) -> CoxeterGraph:
    """Parse either the line format or the JSON form."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    vertices: list[str] = []
    edges: list[tuple[str, str, int]] = []
    seen_v: set[str] = set()
    seen_e: set[frozenset] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        kind, col = tokens[0]
        for tok, c in tokens[1:3] if kind == "edge" else tokens[1:2]:
            if not IDENT.match(tok):
                raise GraphParseError(f"bad identifier {tok!r}", lineno, c)
        if kind == "vertex":
            if len(tokens) != 2:
                raise GraphParseError("expected 'vertex <id>'", lineno, col)
            v = tokens[1][0]
            if v in seen_v:
                raise GraphParseError(f"duplicate vertex {v}", lineno, tokens[1][1])
            seen_v.add(v)
            vertices.append(v)
        elif kind == "edge":
            if len(tokens) != 4:
                raise GraphParseError("expected 'edge <id> <id> <label>'", lineno, col)
            (s, _), (t, ct), (lab, cl) = tokens[1:]
            if not lab.isdigit():
                raise GraphParseError(f"bad label {lab!r}", lineno, cl)
            key = frozenset((s, t))
            if key in seen_e:
                raise GraphParseError(f"duplicate edge {s} {t}", lineno, col)
            seen_e.add(key)
            edges.append((s, t, int(lab)))
        else:
            raise GraphParseError(f"unknown record {kind!r}", lineno, col)
    for s, t, _ in edges:
        for v in (s, t):
            if v not in seen_v:
                raise GraphParseError(f"edge mentions undeclared vertex {v}")
    return CoxeterGraph.build(vertices, edges)


def _parse_json(text: str) -> CoxeterGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        vertices = [str(v) for v in doc["vertices"]]
        edges = [(str(s), str(t), int(m)) for s, t, m in doc.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphParseError(f"malformed graph document: {exc}") from None
    if len(set(vertices)) != len(vertices):
        raise GraphParseError("duplicate vertex")
    if len({frozenset(e[:2]) for e in edges}) != len(edges):
        raise GraphParseError("duplicate edge")
    for v in vertices:
        if not IDENT.match(v):
            raise GraphParseError(f"bad identifier {v!r}")
    for s, t, _ in edges:
        if s not in vertices or t not in vertices:
            raise GraphParseError(f"edge {s} {t} mentions undeclared vertex")
    return CoxeterGraph.build(vertices, edges)


def format_graph(graph: CoxeterGraph) -> str:
    lines = [f"vertex {v}" for v in graph.vertices]
    lines += [f"edge {s} {t} {m}" for s, t, m in graph.edges]
    return "\n".join(lines) + "\n"


def graph_to_json(graph: CoxeterGraph) -> dict:
    return {"vertices": list(graph.vertices), "edges": [list(e) for e in graph.edges]}
