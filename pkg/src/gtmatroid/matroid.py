"""The transversal matroid TM(G) of a multigraph and its deletions TM(G, W).

The ground set holds the pairs ``(v, i)`` with ``1 <= i <= deg(v)``.  The
rank of a subset ``X`` is the maximum height of a labeling whose capacity
at ``v`` is the number of pairs of ``X`` at ``v``.  Deleting the pairs of
every vertex in ``W`` only shrinks the domain of that rank function.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .graph import GraphError, LimitExceededError, Multigraph, edges_meeting
from .labeling import max_height

SELF_DUAL_LIMIT = 16


class GroundElement(NamedTuple):
    vertex: int
    index: int

    def __str__(self):
        return f"{self.vertex}:{self.index}"


def parse_element(token: str) -> GroundElement:
    """Parse a ``"v:i"`` token."""
    parts = token.strip().split(":")
    if len(parts) != 2:
        raise ValueError(f"ground element must look like 'v:i', got {token!r}")
    try:
        return GroundElement(int(parts[0]), int(parts[1]))
    except ValueError:
        raise ValueError(f"ground element must look like 'v:i', got {token!r}") from None


def parse_subset(text: str) -> frozenset[GroundElement]:
    """Parse comma-separated ``"v:i"`` tokens; the empty string is the empty set."""
    tokens = [t for t in text.split(",") if t.strip()]
    return frozenset(parse_element(t) for t in tokens)


def format_subset(x: Iterable[GroundElement]) -> list[str]:
    return [str(e) for e in sorted(x)]


def ground_set(g: Multigraph) -> tuple[GroundElement, ...]:
    return tuple(GroundElement(v, i) for v in sorted(g.vertices) for i in range(1, g.degrees[v] + 1))


def perfect_subset(g: Multigraph, w: Iterable[int]) -> frozenset[GroundElement]:
    """S(W): every ground element sitting at a vertex of ``w``."""
    w = g.check_vertices(w)
    return frozenset(e for e in ground_set(g) if e.vertex in w)


def alpha_of(g: Multigraph, x: Iterable[GroundElement]) -> dict[int, int]:
    """Per-vertex count of the elements of ``x``; every vertex is keyed."""
    alpha = dict.fromkeys(g.vertices, 0)
    for e in set(x):
        d = g.degrees.get(e.vertex)
        if d is None or not 1 <= e.index <= d:
            raise GraphError(f"{e} is not a ground element of the graph")
        alpha[e.vertex] += 1
    return alpha


@dataclass(frozen=True)
class Presentation:
    """A family of ground subsets, one per listed edge of the graph."""

    edges: tuple[int, ...]
    sets: tuple[frozenset[GroundElement], ...]

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def to_json(self) -> list[list[str]]:
        return [format_subset(s) for s in self.sets]


def _edge_set(g: Multigraph, edge: int) -> frozenset[GroundElement]:
    u, w = g.edges[edge]
    return frozenset(GroundElement(x, i) for x in {u, w} for i in range(1, g.degrees[x] + 1))


@dataclass(frozen=True)
class GraphicalTransversalMatroid:
    """Handle for TM(G) (``deleted`` empty) or TM(G, W)."""

    graph: Multigraph
    deleted: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "deleted", self.graph.check_vertices(self.deleted))

    @cached_property
    def ground(self) -> tuple[GroundElement, ...]:
        return tuple(e for e in ground_set(self.graph) if e.vertex not in self.deleted)

    @cached_property
    def _ground_lookup(self) -> frozenset[GroundElement]:
        return frozenset(self.ground)

    @cached_property
    def full_rank(self) -> int:
        return self.rank(self.ground)

    def check_subset(self, x: Iterable[GroundElement]) -> frozenset[GroundElement]:
        x = frozenset(x)
        outside = x - self._ground_lookup
        if outside:
            raise GraphError(f"not in the ground set: {format_subset(outside)}")
        return x

    def rank(self, x: Iterable[GroundElement]) -> int:
        x = self.check_subset(x)
        return max_height(self.graph, alpha_of(self.graph, x))[0]

    def is_independent(self, x: Iterable[GroundElement]) -> bool:
        x = self.check_subset(x)
        return self.rank(x) == len(x)

    def is_basis(self, b: Iterable[GroundElement]) -> bool:
        b = self.check_subset(b)
        return len(b) == self.full_rank and self.is_independent(b)

    def delete(self, w: Iterable[int]) -> "GraphicalTransversalMatroid":
        return GraphicalTransversalMatroid(self.graph, self.deleted | self.graph.check_vertices(w))

    def primal_presentation(self) -> Presentation:
        """The family ``(A(e), e in E)`` presenting TM(G)."""
        if self.deleted:
            raise ValueError("the primal presentation is only defined for TM(G) (no deleted vertices)")
        idx = tuple(range(self.graph.m))
        return Presentation(idx, tuple(_edge_set(self.graph, e) for e in idx))

    def dual_presentation(self) -> Presentation:
        """The family ``(A(e), e in E1)`` presenting the dual of TM(G, W).

        ``E1`` holds the edges with both ends outside ``W``; the sets still
        use degrees in the whole graph.
        """
        meeting = set(edges_meeting(self.graph, self.deleted))
        idx = tuple(e for e in range(self.graph.m) if e not in meeting)
        return Presentation(idx, tuple(_edge_set(self.graph, e) for e in idx))

    def random_basis(self, rng: random.Random) -> frozenset[GroundElement]:
        order = list(self.ground)
        rng.shuffle(order)
        basis: set[GroundElement] = set()
        for e in order:
            if len(basis) == self.full_rank:
                break
            if self.is_independent(basis | {e}):
                basis.add(e)
        return frozenset(basis)

    def check_self_dual(self, limit: int = SELF_DUAL_LIMIT, samples: int | None = None,
                        seed: int = 0) -> bool:
        """True iff the complement of every basis is a basis.

        Without ``samples`` all ``|E|``-subsets of the ground set are swept,
        which is refused above ``limit`` ground elements.  With ``samples``
        that many random greedy bases are drawn instead.
        """
        if self.deleted:
            raise ValueError("self-duality is a property of TM(G); this handle has deleted vertices")
        ground = self._ground_lookup
        if samples is not None:
            rng = random.Random(seed)
            return all(self.is_basis(ground - self.random_basis(rng)) for _ in range(samples))
        if len(ground) > limit:
            raise LimitExceededError(
                f"exhaustive self-duality check supports at most {limit} ground elements, "
                f"got {len(ground)}; use sampling"
            )
        for cand in itertools.combinations(self.ground, self.full_rank):
            if self.is_independent(cand) and not self.is_basis(ground - frozenset(cand)):
                return False
        return True


def transversal_matroid(g: Multigraph, w: Iterable[int] = ()) -> GraphicalTransversalMatroid:
    """TM(G) or, with ``w``, TM(G, W)."""
    return GraphicalTransversalMatroid(g, frozenset(w))


def max_basis_count(g: Multigraph) -> int:
    """Number of ``|E|``-subsets of the ground set of TM(G)."""
    return math.comb(2 * g.m, g.m)
