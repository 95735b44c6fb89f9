"""Brute-force ground truth for the fast paths.

Nothing here calls the labeling solver.  Independence is decided by
matching elements to the sets of an explicit set system, and bases are
found by sweeping every subset of the right size.  Agreement between
these sweeps, the labeling rank and the counting formula is the evidence
the rest of the package relies on.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .census import count_bases
from .graph import LimitExceededError, Multigraph
from .matroid import format_subset, transversal_matroid

GROUND_LIMIT = 20
AXIOM_LIMIT = 10


@dataclass(frozen=True)
class SetSystem:
    """A multiset of subsets of ``ground``; the order of ``family`` is irrelevant."""

    ground: tuple
    family: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "family", tuple(frozenset(a) for a in self.family))
        known = set(self.ground)
        for i, a in enumerate(self.family):
            if not a <= known:
                raise ValueError(f"set {i} contains elements outside the ground set")

    @classmethod
    def restricted(cls, ground: Iterable, family: Iterable[Iterable]) -> "SetSystem":
        """Intersect every member of ``family`` with ``ground`` (deletion)."""
        ground = tuple(ground)
        keep = set(ground)
        return cls(ground, tuple(frozenset(a) & keep for a in family))


def _matching_size(family: Sequence[frozenset], xs: Sequence[Hashable]) -> int:
    """Maximum number of elements of ``xs`` matched to distinct sets."""
    owner: dict[int, Hashable] = {}
    options = [[j for j, a in enumerate(family) if x in a] for x in xs]
    where = {x: i for i, x in enumerate(xs)}

    def place(i: int, seen: set[int]) -> bool:
        for j in options[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in owner or place(where[owner[j]], seen):
                owner[j] = xs[i]
                return True
        return False

    return sum(1 for i in range(len(xs)) if place(i, set()))


def is_partial_transversal(sys: SetSystem, x: Iterable) -> bool:
    """True iff ``x`` has distinct representatives among the sets of ``sys``."""
    xs = list(dict.fromkeys(x))
    if len(xs) > len(sys.family):
        return False
    outside = set(xs) - set(sys.ground)
    if outside:
        raise ValueError(f"elements outside the ground set: {sorted(outside)}")
    return _matching_size(sys.family, xs) == len(xs)


def transversal_rank(sys: SetSystem) -> int:
    return _matching_size(sys.family, list(sys.ground))


def enumerate_bases(sys: SetSystem) -> list[frozenset]:
    """Every maximum partial transversal, by sweeping all subsets of that size.

    Refused above 20 ground elements, which caps the sweep at
    ``comb(20, 10)`` subsets whatever the rank.
    """
    n = len(sys.ground)
    if n > GROUND_LIMIT:
        raise LimitExceededError(f"basis sweep supports at most {GROUND_LIMIT} elements, got {n}")
    r = transversal_rank(sys)
    return [frozenset(c) for c in itertools.combinations(sys.ground, r) if is_partial_transversal(sys, c)]


@dataclass
class Verdict:
    check: str
    instance: str
    passed: bool
    witness: object = None
    elapsed_ms: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"check": self.check, "instance": self.instance, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        out["elapsed_ms"] = round(self.elapsed_ms, 3)
        if self.details:
            out["details"] = self.details
        return out


def _subset_of(ground: Sequence, mask: int) -> list:
    return [ground[i] for i in range(len(ground)) if mask >> i & 1]


def _show(items: Iterable) -> list:
    items = list(items)
    try:
        return format_subset(items)
    except (TypeError, AttributeError):
        return sorted(map(str, items))


def check_rank_axioms(rank_fn: Callable[[list], int], ground: Sequence,
                      instance: str = "", limit: int = AXIOM_LIMIT) -> Verdict:
    """Check the rank axioms over every subset and every pair of subsets.

    Covers ``r(empty) = 0``, ``0 <= r(X) <= |X|``, monotonicity for all
    ``X`` inside ``Y`` and submodularity for all pairs.  Refused above
    ``limit`` ground elements.
    """
    start = time.perf_counter()
    ground = list(ground)
    k = len(ground)
    if k > limit:
        raise LimitExceededError(f"rank-axiom sweep supports at most {limit} elements, got {k}")
    size = 1 << k
    ranks = np.array([rank_fn(_subset_of(ground, mask)) for mask in range(size)], dtype=np.int64)
    card = np.array([bin(mask).count("1") for mask in range(size)], dtype=np.int64)
    masks = np.arange(size, dtype=np.int64)

    def done(ok: bool, witness=None, rule: str = "") -> Verdict:
        details = {"subsets": size, "pairs": size * size}
        if rule:
            details["violated"] = rule
        return Verdict("rank_axioms", instance, ok, witness, (time.perf_counter() - start) * 1e3, details)

    if ranks[0] != 0:
        return done(False, {"X": []}, "r(empty) = 0")
    bad = np.flatnonzero((ranks < 0) | (ranks > card))
    if bad.size:
        x = int(bad[0])
        return done(False, {"X": _show(_subset_of(ground, x)), "r": int(ranks[x])}, "0 <= r(X) <= |X|")

    for x in range(size):
        ys = masks[(masks & x) == x]
        worse = ys[ranks[ys] < ranks[x]]
        if worse.size:
            y = int(worse[0])
            return done(False, {"X": _show(_subset_of(ground, x)), "Y": _show(_subset_of(ground, y))},
                        "X <= Y implies r(X) <= r(Y)")
        lhs = ranks[masks | x] + ranks[masks & x]
        rhs = ranks + ranks[x]
        viol = np.flatnonzero(lhs > rhs)
        if viol.size:
            y = int(viol[0])
            return done(False, {"X": _show(_subset_of(ground, x)), "Y": _show(_subset_of(ground, y))},
                        "r(X|Y) + r(X&Y) <= r(X) + r(Y)")
    return done(True)


def check_basis_exchange(bases: Sequence[Iterable], instance: str = "") -> Verdict:
    """For all bases B1, B2 and x in B1 - B2, some y in B2 - B1 swaps in."""
    start = time.perf_counter()
    bases = [frozenset(b) for b in bases]
    if not bases:
        raise ValueError("basis exchange needs at least one basis")
    if len({len(b) for b in bases}) != 1:
        return Verdict("basis_exchange", instance, False, {"reason": "bases of different sizes"},
                       (time.perf_counter() - start) * 1e3)
    known = set(bases)
    for b1 in bases:
        for b2 in bases:
            for x in b1 - b2:
                if not any((b1 - {x}) | {y} in known for y in b2 - b1):
                    witness = {"B1": _show(b1), "B2": _show(b2), "x": str(x)}
                    return Verdict("basis_exchange", instance, False, witness,
                                   (time.perf_counter() - start) * 1e3)
    return Verdict("basis_exchange", instance, True, None, (time.perf_counter() - start) * 1e3,
                   {"bases": len(bases)})


def _smallest(sets: Iterable[frozenset]) -> frozenset | None:
    return min(sets, key=lambda s: (len(s), sorted(s)), default=None)


def cross_validate(g: Multigraph, w: Iterable[int] = (), instance: str = "") -> Verdict:
    """Compare the counting formula with two brute-force basis sweeps.

    The bases of TM(G, W) are swept directly against the edge sets cut
    down to the ground set, and the bases of the dual presentation are
    swept separately.  The counts must agree with the formula, and the
    complements of the dual bases must be exactly the direct bases.  With
    ``w`` empty every basis must also have a basis as its complement.
    """
    start = time.perf_counter()
    w = g.check_vertices(w)
    m = transversal_matroid(g, w)
    ground = frozenset(m.ground)

    formula = count_bases(g, w)
    dual_sys = SetSystem(m.ground, m.dual_presentation().sets)
    primal_sets = transversal_matroid(g).primal_presentation().sets
    direct_sys = SetSystem.restricted(m.ground, primal_sets)
    dual_bases = set(enumerate_bases(dual_sys))
    direct_bases = set(enumerate_bases(direct_sys))
    complements = {ground - b for b in dual_bases}

    details = {
        "formula": str(formula),
        "dual_enumeration": str(len(dual_bases)),
        "direct_enumeration": str(len(direct_bases)),
        "rank": transversal_rank(direct_sys),
    }
    witness = None
    if not formula == len(dual_bases) == len(direct_bases):
        witness = {"reason": "counts differ"}
    elif complements != direct_bases:
        odd = _smallest(complements ^ direct_bases)
        witness = {"reason": "complements of dual bases are not the bases", "subset": _show(odd)}
    elif not w:
        for b in sorted(direct_bases, key=lambda s: (len(s), sorted(s))):
            if ground - b not in direct_bases:
                witness = {"reason": "complement of a basis is not a basis", "subset": _show(b)}
                break
        details["self_dual"] = witness is None
    return Verdict("cross_validate", instance, witness is None, witness,
                   (time.perf_counter() - start) * 1e3, details)


@dataclass(frozen=True)
class Instance:
    name: str
    graph: Multigraph
    w: frozenset[int] = frozenset()

    @property
    def label(self) -> str:
        return f"{self.name} W={{{','.join(map(str, sorted(self.w)))}}}"


def _canonical(n: int, edges: Iterable[tuple[int, int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        relabel = sorted(tuple(sorted((perm[u - 1], perm[w - 1]))) for u, w in edges)
        key = tuple(relabel)
        if best is None or key < best:
            best = key
    return best


def _connected(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    reach = {1}
    frontier = [1]
    while frontier:
        v = frontier.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == v and y not in reach:
                    reach.add(y)
                    frontier.append(y)
    return len(reach) == n


def small_connected_graphs(max_n: int = 4) -> list[tuple[str, Multigraph]]:
    """One representative of every simple connected graph on 1..max_n vertices."""
    out = []
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        seen = set()
        for r in range(len(pairs) + 1):
            for edges in itertools.combinations(pairs, r):
                if not _connected(n, edges):
                    continue
                key = _canonical(n, edges)
                if key in seen:
                    continue
                seen.add(key)
                out.append((f"conn{n}_{len(seen)}", Multigraph.from_edges(n, edges)))
    return out


def random_multigraphs(count: int = 8, seed: int = 20240607, max_edges: int = 6) -> list[tuple[str, Multigraph]]:
    """Seeded random multigraphs; loops, parallel edges and isolated vertices allowed."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, 5)
        m = rng.randint(1, max_edges)
        edges = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(m)]
        out.append((f"random{i}", Multigraph.from_edges(n, edges)))
    return out


def complete_graph(n: int) -> Multigraph:
    return Multigraph.from_edges(n, itertools.combinations(range(1, n + 1), 2))


def corpus_graphs() -> list[tuple[str, Multigraph]]:
    graphs = small_connected_graphs(4)
    graphs += [
        ("K2_doubled", Multigraph.from_edges(2, [(1, 2), (1, 2)])),
        ("loop", Multigraph.from_edges(1, [(1, 1)])),
        ("double_loop", Multigraph.from_edges(1, [(1, 1), (1, 1)])),
        ("K3_pendant", Multigraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (3, 4)])),
    ]
    graphs += random_multigraphs()
    return graphs


def corpus() -> list[Instance]:
    """Every corpus graph with every W of size at most 2, plus K6 with W = {5, 6}."""
    out = []
    for name, g in corpus_graphs():
        for r in range(3):
            for w in itertools.combinations(g.vertices, r):
                out.append(Instance(name, g, frozenset(w)))
    out.append(Instance("K6", complete_graph(6), frozenset({5, 6})))
    return out
