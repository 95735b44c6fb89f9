"""Undirected multigraphs, the edge-list format, and orientation enumeration.

Vertices are positive integers.  A parsed graph always has vertices
``1..n``; induced subgraphs keep the identifiers of the parent graph.
Edges are stored as ordered ``(u, w)`` pairs in input order, so parallel
edges are told apart by position and a loop is an edge with ``u == w``.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

DEFAULT_LIMIT = 24
LIMIT_ENV = "GTM_LIMIT"

Edge = tuple[int, int]


class GraphError(ValueError):
    """A vertex or vertex set that does not belong to the graph."""


class GraphParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class LimitExceededError(RuntimeError):
    """An exhaustive enumeration was refused because it would be too large."""


def default_limit() -> int:
    """Edge cap for orientation enumeration, honouring ``$GTM_LIMIT``."""
    raw = os.environ.get(LIMIT_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{LIMIT_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"{LIMIT_ENV} must be non-negative, got {value}")
    return value


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((int(u), int(w)) for u, w in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex identifiers")
        known = set(self.vertices)
        for idx, (u, w) in enumerate(self.edges):
            if u not in known or w not in known:
                raise GraphError(f"edge {idx} = ({u}, {w}) has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Multigraph":
        return cls(tuple(range(1, n + 1)), tuple((u, w) for u, w in edges))

    @cached_property
    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for u, w in self.edges:
            # a loop adds 2 here, once per end
            deg[u] += 1
            deg[w] += 1
        return deg

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def loop_count(self) -> int:
        return sum(1 for u, w in self.edges if u == w)

    def check_vertices(self, vs: Iterable[int]) -> frozenset[int]:
        vs = frozenset(vs)
        unknown = sorted(vs - set(self.vertices))
        if unknown:
            raise GraphError(f"unknown vertices: {unknown}")
        return vs

    def to_text(self) -> str:
        """Serialize to the edge-list format (only for graphs on ``1..n``)."""
        if self.vertices != tuple(range(1, self.n + 1)):
            raise GraphError("only graphs on vertices 1..n can be written as edge lists")
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {w}" for u, w in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Multigraph:
    """Parse the edge-list format.

    The first non-comment line is ``n m``; exactly ``m`` edge lines
    ``u w`` with ``1 <= u, w <= n`` follow.  Lines starting with ``#``
    and blank lines are skipped.
    """
    header = None
    edges: list[Edge] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(lineno, f"expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(lineno, f"expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphParseError(lineno, "vertex and edge counts must be non-negative")
            header = (a, b)
            continue
        n, m = header
        if len(edges) == m:
            raise GraphParseError(lineno, f"header declares {m} edges but more lines follow")
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphParseError(lineno, f"endpoint out of range 1..{n}: {a} {b}")
        edges.append((a, b))
    if header is None:
        raise GraphParseError(max(lineno, 1), "missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphParseError(lineno, f"header declares {header[1]} edges, found {len(edges)}")
    return Multigraph.from_edges(header[0], edges)


def read_graph(path: str | os.PathLike) -> Multigraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def degree(g: Multigraph, v: int) -> int:
    try:
        return g.degrees[v]
    except KeyError:
        raise GraphError(f"unknown vertex {v}") from None


def induced_subgraph(g: Multigraph, keep: Iterable[int]) -> Multigraph:
    keep = g.check_vertices(keep)
    return Multigraph(
        tuple(v for v in g.vertices if v in keep),
        tuple((u, w) for u, w in g.edges if u in keep and w in keep),
    )


def edges_meeting(g: Multigraph, w: Iterable[int]) -> tuple[int, ...]:
    """Indices of the edges with at least one end in ``w``."""
    w = g.check_vertices(w)
    return tuple(i for i, (a, b) in enumerate(g.edges) if a in w or b in w)


@dataclass(frozen=True)
class Orientation:
    """One ``(tail, head)`` arc per edge, in edge order."""

    arcs: tuple[Edge, ...]
    vertices: tuple[int, ...] = field(default=(), compare=False)

    def out_degree(self, v: int) -> int:
        return sum(1 for t, _ in self.arcs if t == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, h in self.arcs if h == v)

    def out_degrees(self) -> tuple[int, ...]:
        """Out-degree vector in the graph's vertex order."""
        counts = Counter(t for t, _ in self.arcs)
        return tuple(counts[v] for v in self.vertices)


def _check_limit(m: int, limit: int | None) -> None:
    cap = default_limit() if limit is None else limit
    if m > cap:
        raise LimitExceededError(
            f"graph has {m} edges, above the enumeration limit of {cap}; "
            f"raise it with --limit or ${LIMIT_ENV}"
        )


def all_orientations(g: Multigraph, limit: int | None = None) -> Iterator[Orientation]:
    """Yield every orientation of ``g`` exactly once.

    A loop has a single orientation, so ``2 ** (m - loops)`` orientations
    are produced.  Raises :class:`LimitExceededError` up front when
    ``g.m`` exceeds ``limit``.
    """
    _check_limit(g.m, limit)
    choices = [((u, w),) if u == w else ((u, w), (w, u)) for u, w in g.edges]
    for arcs in itertools.product(*choices):
        yield Orientation(arcs, g.vertices)


def orientation_count(g: Multigraph) -> int:
    return 2 ** (g.m - g.loop_count)
