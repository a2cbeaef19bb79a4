"""Finite graphs with half-unit edge lengths, and their electrifications."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

import numpy as np

from ..errors import CapExceeded, DisconnectedInput, GraphInvalid, UnknownVertex
from . import kernels

Vertex = Hashable

# an ordinary edge is 2 half-units long, a cone edge 1
EDGE = 2
CONE_EDGE = 1


@dataclass(frozen=True)
class HalfDistance:
    """A path length counted in half-units, or a reason there is none.

    ``half`` is ``None`` exactly when ``status`` is not ``"ok"``.
    """

    half: int | None
    status: str = "ok"

    OK = "ok"
    UNREACHABLE = "unreachable"
    CAP_EXCEEDED = "cap_exceeded"

    @property
    def finite(self) -> bool:
        return self.status == self.OK

    @property
    def length(self) -> Fraction:
        if not self.finite:
            raise ValueError(f"no finite length ({self.status})")
        return Fraction(self.half, 2)

    def __int__(self):
        if not self.finite:
            raise ValueError(f"no finite length ({self.status})")
        return self.half

    def __str__(self):
        return str(self.half) if self.finite else self.status


UNREACHABLE = HalfDistance(None, HalfDistance.UNREACHABLE)
CAP_EXCEEDED = HalfDistance(None, HalfDistance.CAP_EXCEEDED)


@dataclass(frozen=True)
class Cone:
    """Cone vertex added for family member ``index``."""

    index: int
    label: str | None = None

    def __str__(self):
        return f"cone:{self.label if self.label is not None else self.index}"


class SubsetFamily:
    """Indexed family of nonempty vertex subsets.

    Members equal as sets stay distinct members; only
    :func:`count_parallel_translates` identifies them.
    """

    def __init__(self, members: Iterable[Iterable[Vertex]], labels: Sequence[str | None] | None = None):
        self.members = tuple(frozenset(m) for m in members)
        if labels is None:
            labels = [None] * len(self.members)
        if len(labels) != len(self.members):
            raise GraphInvalid("one label per member required")
        self.labels = tuple(labels)
        for i, m in enumerate(self.members):
            if not m:
                raise GraphInvalid(f"family member {i} is empty")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def image(self, vmap) -> "SubsetFamily":
        return SubsetFamily([{vmap(v) for v in m} for m in self.members], self.labels)


class Graph:
    """Immutable simple graph; every edge has length 1 (two half-units).

    Vertices are arbitrary hashables.  Adjacency is stored in CSR form for
    the kernels in :mod:`curvequot.graphcore.kernels`.
    """

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[tuple[Vertex, Vertex]]):
        vertices = list(dict.fromkeys(vertices))
        self._setup(vertices, [(u, v, EDGE) for u, v in edges])

    def _setup(self, vertices, weighted_edges):
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        seen = set()
        rows, cols, wts = [], [], []
        for u, v, w in weighted_edges:
            if u not in self._index:
                raise UnknownVertex(u)
            if v not in self._index:
                raise UnknownVertex(v)
            if u == v:
                raise GraphInvalid(f"self-loop at {u!r}")
            i, j = self._index[u], self._index[v]
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphInvalid(f"duplicate edge {u!r}-{v!r}")
            seen.add(key)
            rows += [i, j]
            cols += [j, i]
            wts += [w, w]
        n = len(self.vertices)
        order = np.lexsort((np.asarray(cols, dtype=np.int64), np.asarray(rows, dtype=np.int64)))
        rows_a = np.asarray(rows, dtype=np.int64)[order]
        self._indices = np.ascontiguousarray(np.asarray(cols, dtype=np.int64)[order])
        self._weights = np.ascontiguousarray(np.asarray(wts, dtype=np.int8)[order])
        self._indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self._indptr, rows_a + 1, 1)
        self._indptr = np.ascontiguousarray(np.cumsum(self._indptr))
        self._edge_keys = frozenset(seen)

    # -- structure ---------------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self._index

    def index(self, v) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise UnknownVertex(v) from None

    def neighbors(self, v):
        i = self.index(v)
        return [self.vertices[j] for j in self._indices[self._indptr[i]:self._indptr[i + 1]]]

    def has_edge(self, u, v) -> bool:
        i, j = self.index(u), self.index(v)
        return (min(i, j), max(i, j)) in self._edge_keys

    @property
    def edges(self):
        return [(self.vertices[i], self.vertices[j]) for i, j in sorted(self._edge_keys)]

    def edge_half_length(self, u, v) -> int:
        i, j = self.index(u), self.index(v)
        lo, hi = self._indptr[i], self._indptr[i + 1]
        k = lo + int(np.searchsorted(self._indices[lo:hi], j))
        if k >= hi or self._indices[k] != j:
            raise GraphInvalid(f"no edge {u!r}-{v!r}")
        return int(self._weights[k])

    # -- metric ------------------------------------------------------------

    def distances_from(self, v, cap: int | None = None) -> np.ndarray:
        """Half-unit distances from ``v`` to every vertex (-1: not reached)."""
        return kernels.sssp(self._indptr, self._indices, self._weights, self.index(v),
                            -1 if cap is None else int(cap))

    def distance_matrix(self, vertices: Sequence[Vertex] | None = None) -> np.ndarray:
        """Half-unit distances among ``vertices`` (default: all), -1 where unreachable."""
        if vertices is None:
            idx = np.arange(len(self.vertices))
        else:
            idx = np.asarray([self.index(v) for v in vertices], dtype=np.int64)
        rows = kernels.distance_rows(self._indptr, self._indices, self._weights, idx.tolist())
        return np.ascontiguousarray(rows[:, idx])

    def distance(self, u, v, radius_cap: int | None = None) -> HalfDistance:
        return distance(self, u, v, radius_cap)


class ElectrifiedGraph(Graph):
    """A graph with one cone vertex per family member.

    Each cone vertex ``Cone(i)`` is joined to every vertex of member ``i``
    by an edge of half a unit.
    """

    def __init__(self, base: Graph, family: SubsetFamily):
        self.base = base
        self.family = family
        self.cones = tuple(Cone(i, lab) for i, lab in enumerate(family.labels))
        weighted = [(u, v, base.edge_half_length(u, v)) for u, v in base.edges]
        for cone, member in zip(self.cones, family.members):
            for y in sorted(member, key=base.index):
                weighted.append((y, cone, CONE_EDGE))
        self._setup(list(base.vertices) + list(self.cones), weighted)


def electrify(g: Graph, fam: SubsetFamily) -> ElectrifiedGraph:
    """Cone off every member of ``fam``."""
    for m in fam:
        for v in m:
            if v not in g:
                raise UnknownVertex(v)
    return ElectrifiedGraph(g, fam)


def distance(g: Graph, u, v, radius_cap: int | None = None) -> HalfDistance:
    """Exact half-unit distance from ``u`` to ``v``.

    With ``radius_cap`` the search stops at that radius; a target that is
    reachable but further away gives ``CAP_EXCEEDED``, an unreachable one
    ``UNREACHABLE``.
    """
    j = g.index(v)
    d = int(g.distances_from(u, radius_cap)[j])
    if d >= 0:
        return HalfDistance(d)
    if radius_cap is not None and g.distances_from(u)[j] >= 0:
        return CAP_EXCEEDED
    return UNREACHABLE


def require_finite(d: np.ndarray, what: str = "vertices"):
    if (d < 0).any():
        raise DisconnectedInput(f"{what} are not in one component")


def require_within(d: np.ndarray, cap: int, what: str):
    if cap is not None and (d > cap).any():
        raise CapExceeded(f"{what} exceed radius cap {cap}")
