"""Labelings of a multigraph under per-vertex capacities.

A labeling sends every edge either to one of its ends or to :data:`INF`,
with at most ``alpha[v]`` edges sent to each vertex ``v``.  Its height is
the number of edges not sent to :data:`INF`.  :func:`max_height` finds the
largest height with a capacitated augmenting-path matching between edges
and vertices; :func:`exhaustive_max_height` gets the same number by trying
every assignment and exists only to check it.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from typing import Union

from .graph import GraphError, LimitExceededError, Multigraph

EXHAUSTIVE_EDGE_LIMIT = 6


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

Label = Union[int, _Infinity]
Labeling = tuple[Label, ...]
AlphaLike = Union[Mapping[int, int], Sequence[int]]


def as_alpha(g: Multigraph, alpha: AlphaLike) -> dict[int, int]:
    """Normalize a capacity vector to a dict over all vertices of ``g``.

    A mapping may omit vertices (read as 0); a sequence is taken in the
    graph's vertex order and must have one entry per vertex.
    """
    if isinstance(alpha, Mapping):
        g.check_vertices(alpha.keys())
        caps = dict.fromkeys(g.vertices, 0)
        caps.update(alpha)
    else:
        if len(alpha) != g.n:
            raise GraphError(f"capacity vector has {len(alpha)} entries for {g.n} vertices")
        caps = dict(zip(g.vertices, alpha))
    for v, c in caps.items():
        if int(c) != c or c < 0:
            raise ValueError(f"capacity of vertex {v} must be a non-negative integer, got {c!r}")
        caps[v] = int(c)
    return caps


def _as_labeling(g: Multigraph, phi) -> Labeling:
    if isinstance(phi, Mapping):
        missing = [i for i in range(g.m) if i not in phi]
        if missing:
            raise ValueError(f"labeling does not assign edges {missing}")
        extra = sorted(set(phi) - set(range(g.m)))
        if extra:
            raise ValueError(f"labeling assigns unknown edges {extra}")
        phi = [phi[i] for i in range(g.m)]
    phi = tuple(phi)
    if len(phi) != g.m:
        raise ValueError(f"labeling has {len(phi)} entries for {g.m} edges")
    for i, lab in enumerate(phi):
        if lab is not INF and not isinstance(lab, int):
            raise ValueError(f"edge {i} is labeled {lab!r}, which is neither a vertex nor INF")
    return phi


def is_valid_labeling(g: Multigraph, alpha: AlphaLike, phi) -> bool:
    """True iff every edge goes to an end or INF and no capacity is exceeded.

    ``phi`` is a sequence indexed by edge or a mapping from edge index.
    An integer label that is not an end of its edge (including one that is
    not a vertex at all) makes the labeling invalid rather than raising.
    """
    caps = as_alpha(g, alpha)
    phi = _as_labeling(g, phi)
    used: dict[int, int] = {}
    for (u, w), lab in zip(g.edges, phi):
        if lab is INF:
            continue
        if lab != u and lab != w:
            return False
        used[lab] = used.get(lab, 0) + 1
    return all(count <= caps[v] for v, count in used.items())


def height(phi: Sequence[Label] | Mapping[int, Label]) -> int:
    values = phi.values() if isinstance(phi, Mapping) else phi
    return sum(1 for lab in values if lab is not INF)


def max_height(g: Multigraph, alpha: AlphaLike) -> tuple[int, Labeling]:
    """Maximum height of a labeling of ``g`` under ``alpha``, with a witness.

    Edges are inserted in order; each insertion searches for an augmenting
    path that may move already-labeled edges to their other end.  A vertex
    is visited at most once per search because its free slots are
    interchangeable.
    """
    caps = as_alpha(g, alpha)
    ends = [(u,) if u == w else (u, w) for u, w in g.edges]
    holders: dict[int, list[int]] = {v: [] for v in g.vertices}
    label: list[Label] = [INF] * g.m

    def augment(e: int, seen: set[int]) -> bool:
        for v in ends[e]:
            if v in seen or caps[v] == 0:
                continue
            seen.add(v)
            if len(holders[v]) < caps[v]:
                holders[v].append(e)
                label[e] = v
                return True
            for f in list(holders[v]):
                if augment(f, seen):
                    holders[v].remove(f)
                    holders[v].append(e)
                    label[e] = v
                    return True
        return False

    total = 0
    budget = sum(caps.values())
    for e in range(g.m):
        if total == budget:
            break
        if augment(e, set()):
            total += 1
    return total, tuple(label)


def exhaustive_max_height(g: Multigraph, alpha: AlphaLike) -> int:
    """Brute-force maximum height over every assignment (``g.m <= 6``)."""
    if g.m > EXHAUSTIVE_EDGE_LIMIT:
        raise LimitExceededError(
            f"exhaustive labeling search supports at most {EXHAUSTIVE_EDGE_LIMIT} edges, got {g.m}"
        )
    caps = as_alpha(g, alpha)
    options = [(INF, u) if u == w else (INF, u, w) for u, w in g.edges]
    best = 0
    for phi in itertools.product(*options):
        used: dict[int, int] = {}
        ok = True
        for lab in phi:
            if lab is INF:
                continue
            used[lab] = used.get(lab, 0) + 1
            if used[lab] > caps[lab]:
                ok = False
                break
        if ok:
            best = max(best, height(phi))
    return best
