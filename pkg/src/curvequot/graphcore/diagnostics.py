"""Hyperbolicity, quasiconvexity, projection and WPD measurements on finite graphs."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import CapExceeded, DisconnectedInput, NotAutomorphism, UnknownVertex
from . import kernels
from .core import ElectrifiedGraph, Graph, HalfDistance, SubsetFamily, require_finite

EXHAUSTIVE_THRESHOLD = 64


class VertexMap:
    """A vertex bijection, possibly only defined on part of a graph.

    Maps coming from a group acting on an infinite graph only make sense on
    the vertices of a finite piece whose image stays inside it, so the
    domain may be a proper subset.  :meth:`validate` checks that the map is
    an isometry of the induced subgraph on its domain, and a genuine
    automorphism when it is total.
    """

    def __init__(self, forward: Mapping, inverse: Mapping | None = None, label: str | None = None):
        self.forward = dict(forward)
        if inverse is None:
            inverse = {w: v for v, w in self.forward.items()}
            if len(inverse) != len(self.forward):
                raise NotAutomorphism("map is not injective")
        self.inverse = dict(inverse)
        self.label = label

    @classmethod
    def identity(cls, g: Graph) -> "VertexMap":
        return cls({v: v for v in g.vertices}, label="id")

    @classmethod
    def from_function(cls, g: Graph, f, label: str | None = None) -> "VertexMap":
        """Restrict ``f`` to the vertices of ``g`` it maps back into ``g``."""
        fwd = {}
        for v in g.vertices:
            w = f(v)
            if w in g:
                fwd[v] = w
        return cls(fwd, label=label)

    def __call__(self, v):
        try:
            return self.forward[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def get(self, v, default=None):
        return self.forward.get(v, default)

    def is_total_on(self, g: Graph) -> bool:
        return len(self.forward) == len(g) and all(v in self.forward for v in g.vertices)

    def then(self, other: "VertexMap") -> "VertexMap":
        """``other`` after ``self``, on the vertices where both are defined."""
        fwd = {v: other.forward[w] for v, w in self.forward.items() if w in other.forward}
        return VertexMap(fwd)

    def validate(self, g: Graph) -> None:
        for v, w in self.forward.items():
            if v not in g or w not in g:
                raise NotAutomorphism(f"{self.label or 'map'}: {v!r} -> {w!r} leaves the graph")
            if self.inverse.get(w) != v:
                raise NotAutomorphism(f"{self.label or 'map'}: inverse disagrees at {w!r}")
        if len(self.inverse) != len(self.forward):
            raise NotAutomorphism(f"{self.label or 'map'}: inverse has a different domain")
        n = len(g)
        rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(g._indptr))
        keys = rows * n + g._indices
        for table, weighted, what in ((self.forward, True, "edge"), (self.inverse, False, "non-edge")):
            img = np.full(n, -1, dtype=np.int64)
            for v, w in table.items():
                img[g.index(v)] = g.index(w)
            a, b = img[rows], img[g._indices]
            live = (a >= 0) & (b >= 0)
            target = a[live] * n + b[live]
            pos = np.minimum(np.searchsorted(keys, target), len(keys) - 1)
            ok = keys[pos] == target if len(keys) else np.zeros(0, dtype=bool)
            if weighted:
                ok &= g._weights[pos] == g._weights[live]
            if not ok.all():
                k = int(np.flatnonzero(live)[np.argmin(ok)])
                u, v = g.vertices[rows[k]], g.vertices[g._indices[k]]
                raise NotAutomorphism(f"{self.label or 'map'}: {what} {u!r}-{v!r} not preserved")

    def on_electrification(self, eg: ElectrifiedGraph) -> "VertexMap":
        """Extend a total automorphism of ``eg.base`` to the cone vertices.

        The family must be carried to itself; equal member sets are matched
        in index order.
        """
        members = eg.family.members
        free = {}
        for j, m in enumerate(members):
            free.setdefault(m, []).append(j)
        fwd = dict(self.forward)
        for i, m in enumerate(members):
            try:
                img = frozenset(self.forward[v] for v in m)
            except KeyError:
                raise NotAutomorphism("map not defined on a family member") from None
            slots = free.get(img)
            if not slots:
                raise NotAutomorphism(f"family member {i} has no image in the family")
            fwd[eg.cones[i]] = eg.cones[slots.pop(0)]
        return VertexMap(fwd, label=self.label)


def _vertex_list(g, vertices):
    return list(g.vertices) if vertices is None else list(vertices)


def delta_four_point(
    g: Graph,
    quadruples: Sequence[tuple] | None = None,
    *,
    vertices: Iterable | None = None,
    samples: int = 10_000,
    seed: int = 0,
    exhaustive_threshold: int = EXHAUSTIVE_THRESHOLD,
) -> Fraction:
    """Largest four-point defect, in half-units.

    For each quadruple the three pair-sums are sorted and the top one minus
    the middle one, halved, is the defect.  Explicit ``quadruples`` are used
    as given; otherwise all 4-subsets of ``vertices`` are checked when there
    are at most ``exhaustive_threshold`` of them, and ``samples`` random
    quadruples drawn with ``seed`` otherwise.
    """
    if quadruples is not None:
        verts = list(dict.fromkeys(v for q in quadruples for v in q))
        pos = {v: i for i, v in enumerate(verts)}
        D = g.distance_matrix(verts)
        require_finite(D, "quadruple vertices")
        quads = np.asarray([[pos[v] for v in q] for q in quadruples], dtype=np.int64).reshape(-1, 4)
        best, _ = kernels.four_point_max(D, np.ascontiguousarray(quads))
        return Fraction(int(best), 2)
    verts = _vertex_list(g, vertices)
    D = g.distance_matrix(verts)
    require_finite(D)
    if len(verts) <= exhaustive_threshold:
        best, _ = kernels.four_point_exhaustive(D)
    else:
        rng = np.random.default_rng(seed)
        quads = np.ascontiguousarray(rng.integers(0, len(verts), size=(samples, 4), dtype=np.int64))
        best, _ = kernels.four_point_max(D, quads)
    return Fraction(int(best), 2)


def quasiconvexity_constant(g: Graph, subset: Iterable, radius_cap: int | None = None) -> int:
    """Smallest K such that every geodesic between points of ``subset`` stays K-close to it.

    A vertex lies on some geodesic from u to v exactly when
    d(u, w) + d(w, v) = d(u, v), so the geodesic intervals are computed
    directly from distance rows rather than by listing paths.
    """
    subset = list(dict.fromkeys(subset))
    idx = [g.index(v) for v in subset]
    rows = kernels.distance_rows(g._indptr, g._indices, g._weights, idx)
    pair = rows[:, idx]
    require_finite(pair, "subset vertices")
    if radius_cap is not None and (pair > radius_cap).any():
        raise CapExceeded(f"subset diameter {int(pair.max())} exceeds radius cap {radius_cap}")
    to_subset = rows.min(axis=0)
    best = 0
    for a, b in combinations(range(len(subset)), 2):
        on_geodesic = (rows[a] >= 0) & (rows[b] >= 0) & (rows[a] + rows[b] == pair[a, b])
        best = max(best, int(to_subset[on_geodesic].max()))
    return best


def nearest_point_projection(g: Graph, target: Iterable, source: Iterable) -> frozenset:
    """Every target vertex at minimal distance from some source vertex."""
    target = list(dict.fromkeys(target))
    tidx = np.asarray([g.index(v) for v in target], dtype=np.int64)
    out = set()
    for s in dict.fromkeys(source):
        d = g.distances_from(s)[tidx]
        if (d < 0).all():
            raise DisconnectedInput(f"{s!r} cannot reach the target set")
        d = np.where(d < 0, np.iinfo(np.int64).max, d)
        out.update(target[i] for i in np.flatnonzero(d == d.min()))
    if not out:
        raise DisconnectedInput("empty source")
    return frozenset(out)


def projection_diameter(g: Graph, axis: Iterable, subset: Iterable) -> HalfDistance:
    proj = sorted(nearest_point_projection(g, axis, subset), key=g.index)
    if len(proj) == 1:
        return HalfDistance(0)
    D = g.distance_matrix(proj)
    require_finite(D, "projection")
    return HalfDistance(int(D.max()))


@dataclass
class WpdCensus:
    """Outcome of :func:`wpd_census` for one power ``n``."""

    n: int
    r: int
    count: int
    witnesses: list = field(default_factory=list)
    escaped: list = field(default_factory=list)


def _iterate(mover: VertexMap, x, n):
    y = x
    for _ in range(n):
        y = mover.get(y)
        if y is None:
            raise CapExceeded(f"orbit of {x!r} leaves the graph before step {n}")
    return y


def wpd_census(g: Graph, action_maps: Sequence[VertexMap], mover: VertexMap, x, r: int, n: int,
               validate: bool = True) -> WpdCensus:
    """Count candidates h with d(x, hx) < r and d(m^n x, h m^n x) < r.

    ``r`` is in half-units and both inequalities are strict.  Candidates
    whose image of x or of m^n x falls outside ``g`` are listed in
    ``escaped`` and not counted.  Witnesses are reported by position in
    ``action_maps``.
    """
    if validate:
        for h in list(action_maps) + [mover]:
            h.validate(g)
    y = _iterate(mover, x, n)
    dx = g.distances_from(x)
    dy = g.distances_from(y)
    out = WpdCensus(n=n, r=r, count=0)
    for k, h in enumerate(action_maps):
        hx, hy = h.get(x), h.get(y)
        if hx is None or hy is None:
            out.escaped.append(k)
            continue
        a, b = dx[g.index(hx)], dy[g.index(hy)]
        if 0 <= a < r and 0 <= b < r:
            out.witnesses.append(k)
    out.count = len(out.witnesses)
    return out


def count_parallel_translates(g: Graph, fam: SubsetFamily, a, b, d0: int) -> int:
    """Number of distinct member sets lying closer than ``d0`` half-units to both a and b.

    Members that coincide as sets are counted once.
    """
    da, db = g.distances_from(a), g.distances_from(b)
    seen = set()
    for m in fam:
        if m in seen:
            continue
        idx = np.asarray([g.index(v) for v in m], dtype=np.int64)
        ra, rb = da[idx], db[idx]
        ra, rb = ra[ra >= 0], rb[rb >= 0]
        if len(ra) and len(rb) and ra.min() < d0 and rb.min() < d0:
            seen.add(m)
    return len(seen)


def translation_growth(g: Graph, mover: VertexMap, x, n_max: int) -> list[tuple[int, int]]:
    """``[(n, d(x, m^n x))]`` for n = 1..n_max, distances in half-units."""
    dx = g.distances_from(x)
    out = []
    y = x
    for n in range(1, n_max + 1):
        y = mover.get(y)
        if y is None:
            raise CapExceeded(f"orbit of {x!r} leaves the graph at step {n}")
        d = int(dx[g.index(y)])
        if d < 0:
            raise DisconnectedInput(f"{y!r} unreachable from {x!r}")
        out.append((n, d))
    return out
