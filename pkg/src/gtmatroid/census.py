"""Out-degree classes of orientations and exact basis counts of TM(G, W).

Two orientations are equivalent when every vertex has the same out-degree
in both.  The basis count of TM(G, W) sums, over the distinct out-degree
vectors ``a`` of ``G[V - W]``, the product of ``comb(deg_G(v_i), a_i)``.
Degrees come from the whole graph ``G`` while classes come from the
induced subgraph.  Everything is exact Python integers.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import (
    Multigraph,
    _check_limit,
    all_orientations,
    induced_subgraph,
    orientation_count,
)

_CHUNK_BITS = 20
# mixed-radix keys must fit in int64
_MAX_KEY_SPACE = 2 ** 62

Vector = tuple[int, ...]


@dataclass(frozen=True)
class OutDegreeClass:
    vector: Vector
    multiplicity: int


def _classes_by_orientations(g: Multigraph) -> Counter:
    return Counter(o.out_degrees() for o in all_orientations(g, limit=g.m))


def _classes_vectorized(g: Multigraph) -> Counter:
    pos = {v: i for i, v in enumerate(g.vertices)}
    radix = []
    scale = 1
    for v in g.vertices:
        radix.append(scale)
        scale *= g.degrees[v] + 1
    if scale > _MAX_KEY_SPACE:
        return _classes_by_orientations(g)

    # every orientation starts from "all non-loop edges point u -> w";
    # bit j set flips edge j to w -> u
    base = 0
    flips = []
    for u, w in g.edges:
        base += radix[pos[u]]
        if u != w:
            flips.append(radix[pos[w]] - radix[pos[u]])
    k = len(flips)
    chunk = 1 << min(k, _CHUNK_BITS)
    counts: Counter = Counter()
    for start in range(0, 1 << k, chunk):
        masks = np.arange(start, start + chunk, dtype=np.int64)
        keys = np.full(chunk, base, dtype=np.int64)
        for j, delta in enumerate(flips):
            keys += ((masks >> j) & 1) * delta
        uniq, mult = np.unique(keys, return_counts=True)
        for key, c in zip(uniq.tolist(), mult.tolist()):
            counts[key] += c

    out: Counter = Counter()
    for key, c in counts.items():
        vec = []
        for v in g.vertices:
            key, digit = divmod(key, g.degrees[v] + 1)
            vec.append(digit)
        out[tuple(vec)] = c
    return out


def enumerate_classes(g: Multigraph, limit: int | None = None) -> list[OutDegreeClass]:
    """Every distinct out-degree vector of ``g`` with its orientation count.

    All ``2 ** (m - loops)`` orientations are visited, so ``g.m`` must not
    exceed ``limit``.  Vectors follow the graph's vertex order; the result
    is sorted lexicographically.
    """
    _check_limit(g.m, limit)
    counts = _classes_vectorized(g)
    return [OutDegreeClass(vec, counts[vec]) for vec in sorted(counts)]


def feasible_classes(g: Multigraph) -> list[Vector]:
    """Out-degree vectors of ``g`` found without enumerating orientations.

    A vector is realizable iff it sums to ``m`` and every vertex set ``U``
    has total out-degree at least the number of edges inside ``U``.
    Multiplicities are not available this way.  The subset test costs
    ``2 ** n`` per candidate, so this pays off for many edges on few
    vertices.
    """
    verts = g.vertices
    n = len(verts)
    pos = {v: i for i, v in enumerate(verts)}
    loops = Counter(pos[u] for u, w in g.edges if u == w)
    lo = [loops[i] for i in range(n)]
    hi = [g.degrees[v] - loops[i] for i, v in enumerate(verts)]

    inside = [0] * (1 << n)
    for u, w in g.edges:
        bits = (1 << pos[u]) | (1 << pos[w])
        for mask in range(1 << n):
            if mask & bits == bits:
                inside[mask] += 1

    suffix_hi = [0] * (n + 1)
    suffix_lo = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_hi[i] = suffix_hi[i + 1] + hi[i]
        suffix_lo[i] = suffix_lo[i + 1] + lo[i]

    found: list[Vector] = []

    def feasible(vec: Sequence[int]) -> bool:
        sums = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            sums[mask] = sums[mask ^ low] + vec[low.bit_length() - 1]
            if sums[mask] < inside[mask]:
                return False
        return True

    def extend(prefix: list[int], remaining: int) -> None:
        i = len(prefix)
        if i == n:
            if remaining == 0 and feasible(prefix):
                found.append(tuple(prefix))
            return
        for a in range(lo[i], hi[i] + 1):
            rest = remaining - a
            if rest < suffix_lo[i + 1]:
                break
            if rest > suffix_hi[i + 1]:
                continue
            prefix.append(a)
            extend(prefix, rest)
            prefix.pop()

    extend([], g.m)
    return sorted(found)


def class_weight(g_full: Multigraph, keep: Sequence[int], a: Sequence[int]) -> int:
    """Product of ``comb(deg_full(keep[i]), a[i])``; 0 if some ``a[i]`` is too large."""
    if len(keep) != len(a):
        raise ValueError(f"{len(keep)} vertices but a vector of length {len(a)}")
    g_full.check_vertices(keep)
    weight = 1
    for v, ai in zip(keep, a):
        weight *= math.comb(g_full.degrees[v], ai)
    return weight


def count_bases(g: Multigraph, w: Iterable[int] = (), limit: int | None = None,
                method: str = "enumerate") -> int:
    """Exact number of bases of TM(G, W).

    ``method="enumerate"`` visits every orientation of ``G[V - W]``
    (bounded by ``limit``); ``method="feasible"`` builds the class set from
    the cut condition instead and has no edge limit.
    """
    w = g.check_vertices(w)
    keep = tuple(v for v in g.vertices if v not in w)
    h = induced_subgraph(g, keep)
    if method == "enumerate":
        vectors = [c.vector for c in enumerate_classes(h, limit)]
    elif method == "feasible":
        vectors = feasible_classes(h)
    else:
        raise ValueError(f"unknown method {method!r}")
    return sum(class_weight(g, keep, a) for a in vectors)


@dataclass(frozen=True)
class ClassRow:
    vector: Vector
    multiplicity: int
    weight: int
    alt_weight: int | None = None


@dataclass(frozen=True)
class TableReport:
    keep: tuple[int, ...]
    rows: tuple[ClassRow, ...]
    orientations: int
    bases: int
    alt_bases: int | None = None

    def to_dict(self) -> dict:
        classes = []
        for r in self.rows:
            entry = {"a": list(r.vector), "mult": r.multiplicity, "weight": str(r.weight)}
            if r.alt_weight is not None:
                entry["alt_weight"] = str(r.alt_weight)
            classes.append(entry)
        totals = {
            "orientations": str(self.orientations),
            "classes": len(self.rows),
            "bases": str(self.bases),
        }
        if self.alt_bases is not None:
            totals["alt_bases"] = str(self.alt_bases)
        return {"vertices": list(self.keep), "classes": classes, "totals": totals}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        has_alt = self.alt_bases is not None
        header = ["a", "|a|", "weight"] + (["alt_weight"] if has_alt else [])
        body = []
        for r in self.rows:
            row = ["(" + ",".join(map(str, r.vector)) + ")", str(r.multiplicity), str(r.weight)]
            if has_alt:
                row.append(str(r.alt_weight))
            body.append(row)
        widths = [max(len(x) for x in col) for col in zip(header, *body)]
        lines = []
        for row in [header] + body:
            cells = [row[0].ljust(widths[0])] + [c.rjust(wd) for c, wd in zip(row[1:], widths[1:])]
            lines.append("  ".join(cells).rstrip())
        totals = f"orientations {self.orientations}  classes {len(self.rows)}  bases {self.bases}"
        if has_alt:
            totals += f"  alt_bases {self.alt_bases}"
        lines.append(totals)
        return "\n".join(lines) + "\n"


def table_report(g: Multigraph, w: Iterable[int] = (), alt_full: Multigraph | None = None,
                 limit: int | None = None) -> TableReport:
    """One row per out-degree class of ``G[V - W]``.

    ``weight`` uses the degrees of ``g``; ``alt_weight`` (when ``alt_full``
    is given) uses the degrees of ``alt_full`` at the same vertex ids.
    """
    w = g.check_vertices(w)
    keep = tuple(v for v in g.vertices if v not in w)
    h = induced_subgraph(g, keep)
    rows = []
    for c in enumerate_classes(h, limit):
        alt = class_weight(alt_full, keep, c.vector) if alt_full is not None else None
        rows.append(ClassRow(c.vector, c.multiplicity, class_weight(g, keep, c.vector), alt))
    return TableReport(
        keep=keep,
        rows=tuple(rows),
        orientations=orientation_count(h),
        bases=sum(r.weight for r in rows),
        alt_bases=sum(r.alt_weight for r in rows) if alt_full is not None else None,
    )
