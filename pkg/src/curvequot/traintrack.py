"""Combinatorial train tracks with ribbon structure.

A switch has two sides, A and B.  Draw it with A on the left and B on the
right; each side lists its half-branch slots from top to bottom.  Going
counterclockwise round the switch the slots then read
``reversed(side_b) + side_a``, and the corner between two consecutive slots
is a cusp exactly when both slots are on the same side.

Complementary regions are the boundary cycles of this ribbon graph,
numbered in order of discovery: switches in order, and round each switch
counterclockwise starting from the bottom slot of side B.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Hashable, Sequence

import numpy as np

from .errors import IndexMismatch, RibbonInconsistent, TooLarge, TrackInvalid
from .orbifolds import SurfaceSig, euler_char

BRANCH_CAP = 20
ENUMERATION_CAP = 2_000_000

SHAPES = {0: "nullgon", 1: "monogon", 2: "bigon", 3: "triangle", 4: "square", 6: "hexagon"}


@dataclass(frozen=True)
class Switch:
    side_a: tuple
    side_b: tuple

    @property
    def valence(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def ccw(self) -> list:
        return list(reversed(self.side_b)) + list(self.side_a)


@dataclass(frozen=True)
class Region:
    cusps: int
    punctures: int
    corners: tuple = field(default=(), compare=False)

    @property
    def shape(self) -> str:
        return SHAPES.get(self.cusps, f"{self.cusps}-gon")

    @property
    def index(self) -> Fraction:
        return 1 - self.punctures - Fraction(self.cusps, 2)

    @property
    def forbidden(self) -> str | None:
        if self.punctures == 0 and self.cusps <= 2:
            return self.shape
        if self.punctures == 1 and self.cusps == 0:
            return "annulus"
        return None


@dataclass(frozen=True)
class Problem:
    where: str
    what: str

    def __str__(self):
        return f"{self.where}: {self.what}"


class TrainTrack:
    """Switches, branches (pairs of slots), the surface, and punctures per region."""

    def __init__(self, switches: Sequence, branches: Sequence, surface: SurfaceSig,
                 region_punctures: dict | None = None):
        self.switches = tuple(
            s if isinstance(s, Switch) else Switch(tuple(s[0]), tuple(s[1])) for s in switches
        )
        self.branches = tuple(tuple(b) for b in branches)
        self.surface = surface
        self.region_punctures = {int(k): int(v) for k, v in (region_punctures or {}).items()}

    # -- structure -----------------------------------------------------------

    def _structure_problems(self) -> list[Problem]:
        out = []
        where_slot = {}
        for i, s in enumerate(self.switches):
            if not s.side_a or not s.side_b:
                out.append(Problem(f"switch {i}", "one-sided switch"))
            if s.valence < 3:
                out.append(Problem(f"switch {i}", f"valence {s.valence} < 3"))
            for slot in s.side_a + s.side_b:
                if slot in where_slot:
                    out.append(Problem(f"slot {slot!r}", "appears at two places"))
                where_slot[slot] = i
        used = {}
        for j, b in enumerate(self.branches):
            if len(b) != 2 or b[0] == b[1]:
                out.append(Problem(f"branch {j}", "needs two distinct slots"))
                continue
            for slot in b:
                if slot not in where_slot:
                    out.append(Problem(f"branch {j}", f"slot {slot!r} is not at any switch"))
                if slot in used:
                    out.append(Problem(f"slot {slot!r}", "used by two branches"))
                used[slot] = j
        for slot in where_slot:
            if slot not in used:
                out.append(Problem(f"slot {slot!r}", "belongs to no branch"))
        return out

    def _maps(self):
        probs = self._structure_problems()
        if probs:
            raise RibbonInconsistent("; ".join(map(str, probs)))
        other = {}
        branch_of = {}
        for j, (x, y) in enumerate(self.branches):
            other[x], other[y] = y, x
            branch_of[x] = branch_of[y] = j
        nxt = {}
        side = {}
        switch_of = {}
        for i, s in enumerate(self.switches):
            cyc = s.ccw()
            for k, slot in enumerate(cyc):
                nxt[slot] = cyc[(k + 1) % len(cyc)]
                switch_of[slot] = i
            for slot in s.side_a:
                side[slot] = "A"
            for slot in s.side_b:
                side[slot] = "B"
        return other, branch_of, nxt, side, switch_of

    def faces(self) -> list[tuple]:
        """Boundary cycles as tuples of corners ``(slot, next_slot)``."""
        other, _, nxt, _, _ = self._maps()
        seen = set()
        faces = []
        for s in self.switches:
            for start in s.ccw():
                corner = (start, nxt[start])
                if corner in seen:
                    continue
                cyc = []
                while corner not in seen:
                    seen.add(corner)
                    cyc.append(corner)
                    # leave along the second slot of the corner, arrive at its partner
                    arrive = other[corner[1]]
                    corner = (arrive, nxt[arrive])
                if corner != cyc[0]:
                    raise RibbonInconsistent("boundary walk does not close")
                faces.append(tuple(cyc))
        return faces

    def is_connected(self) -> bool:
        if not self.switches:
            return False
        other, _, _, _, switch_of = self._maps()
        adj = {i: set() for i in range(len(self.switches))}
        for x, y in self.branches:
            adj[switch_of[x]].add(switch_of[y])
            adj[switch_of[y]].add(switch_of[x])
        seen, stack = {0}, [0]
        while stack:
            for j in adj[stack.pop()] - seen:
                seen.add(j)
                stack.append(j)
        return len(seen) == len(self.switches)

    def ribbon_genus(self) -> int:
        chi = len(self.switches) - len(self.branches) + len(self.faces())
        return (2 - chi) // 2

    def relabel(self, slot_map: dict, switch_order: Sequence[int] | None = None,
                branch_order: Sequence[int] | None = None) -> "TrainTrack":
        """Rename slots and reorder switches/branches; region numbering follows the new order."""
        order = list(switch_order) if switch_order is not None else list(range(len(self.switches)))
        border = list(branch_order) if branch_order is not None else list(range(len(self.branches)))
        sw = [Switch(tuple(slot_map[x] for x in self.switches[i].side_a),
                     tuple(slot_map[x] for x in self.switches[i].side_b)) for i in order]
        br = [tuple(slot_map[x] for x in self.branches[j]) for j in border]
        old_faces = self.faces()
        key = {frozenset(f): k for k, f in enumerate(old_faces)}
        new = TrainTrack(sw, br, self.surface)
        punct = {}
        for k, f in enumerate(new.faces()):
            inv = {v: u for u, v in slot_map.items()}
            old = key[frozenset((inv[a], inv[b]) for a, b in f)]
            punct[k] = self.region_punctures.get(old, 0)
        new.region_punctures = punct
        return new

    # -- weights -------------------------------------------------------------

    def switch_matrix(self) -> np.ndarray:
        """Rows: switches; entry +1 per side-A slot of a branch, -1 per side-B slot."""
        _, branch_of, _, _, _ = self._maps()
        B = np.zeros((len(self.switches), len(self.branches)), dtype=np.int64)
        for i, s in enumerate(self.switches):
            for slot in s.side_a:
                B[i, branch_of[slot]] += 1
            for slot in s.side_b:
                B[i, branch_of[slot]] -= 1
        return B

    # -- io ------------------------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "TrainTrack":
        sw = [(tuple(s["sideA"]), tuple(s["sideB"])) for s in data["switches"]]
        surf = SurfaceSig(int(data["surface"]["g"]), int(data["surface"]["n"]))
        return cls(sw, [tuple(b) for b in data["branches"]], surf, data.get("region_punctures", {}))

    @classmethod
    def load(cls, path) -> "TrainTrack":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_dict(self) -> dict:
        return {
            "switches": [{"sideA": list(s.side_a), "sideB": list(s.side_b)} for s in self.switches],
            "branches": [list(b) for b in self.branches],
            "surface": {"g": self.surface.g, "n": self.surface.n},
            "region_punctures": {str(k): v for k, v in sorted(self.region_punctures.items())},
        }


def _regions_raw(t: TrainTrack) -> list[Region]:
    _, _, _, side, _ = t._maps()
    out = []
    for k, f in enumerate(t.faces()):
        cusps = sum(1 for a, b in f if side[a] == side[b])
        out.append(Region(cusps, t.region_punctures.get(k, 0), f))
    return out


def problems(t: TrainTrack) -> list[Problem]:
    """Every violation of the train-track rules, empty when ``t`` is valid."""
    if not t.switches:
        return [Problem("track", "empty track")]
    out = t._structure_problems()
    if out:
        return out
    if not t.is_connected():
        return [Problem("track", "not connected")]
    regs = _regions_raw(t)
    for k, v in t.region_punctures.items():
        if not 0 <= k < len(regs):
            out.append(Problem(f"region {k}", "no such region"))
        if v < 0:
            out.append(Problem(f"region {k}", "negative puncture count"))
    total = sum(t.region_punctures.values())
    if total != t.surface.n:
        out.append(Problem("punctures", f"regions hold {total}, surface has {t.surface.n}"))
    genus = t.ribbon_genus()
    if genus != t.surface.g:
        out.append(Problem("surface", f"ribbon genus {genus} but surface genus {t.surface.g}: "
                                      "some complementary region is not a disc (annulus or worse)"))
    for k, r in enumerate(regs):
        bad = r.forbidden
        if bad:
            out.append(Problem(f"region {k}", f"forbidden {bad} ({r.cusps} cusps, {r.punctures} punctures)"))
    return out


def validate(t: TrainTrack) -> None:
    probs = problems(t)
    if probs:
        raise TrackInvalid(probs)


def regions(t: TrainTrack) -> list[Region]:
    """Complementary regions in canonical order.

    Raises :class:`RibbonInconsistent` when the ribbon data is broken or the
    region indices fail to add up to the Euler characteristic of the surface.
    """
    regs = _regions_raw(t)
    total = sum((r.index for r in regs), Fraction(0))
    if total != euler_char(t.surface):
        raise RibbonInconsistent(f"region indices sum to {total}, not chi = {euler_char(t.surface)}")
    return regs


def is_maximal(t: TrainTrack) -> bool:
    """Every region a triangle without punctures or a once-punctured monogon."""
    if not t.switches:
        return False
    return all((r.cusps, r.punctures) in {(3, 0), (1, 1)} for r in regions(t))


def switch_check(t: TrainTrack, w: Sequence) -> bool:
    if len(w) != len(t.branches):
        raise IndexMismatch(f"{len(w)} weights for {len(t.branches)} branches")
    _, branch_of, _, _, _ = t._maps()
    for s in t.switches:
        if sum(w[branch_of[x]] for x in s.side_a) != sum(w[branch_of[x]] for x in s.side_b):
            return False
    return True


# -- weight enumeration -------------------------------------------------------


def _rref(B: np.ndarray):
    """Exact reduced row echelon form; returns (rows as Fractions, pivot columns)."""
    M = [[Fraction(int(x)) for x in row] for row in B]
    ncols = B.shape[1]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        lead = M[r][c]
        M[r] = [x / lead for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def nullity(B: np.ndarray) -> int:
    if B.shape[1] == 0:
        return 0
    _, piv = _rref(B)
    return B.shape[1] - len(piv)


def balanced_systems(t: TrainTrack, cap: int, enumeration_cap: int = ENUMERATION_CAP) -> list[tuple]:
    """Every nonzero integral balanced weight system with entries in [0, cap].

    Free coordinates of the switch equations are enumerated and the pivot
    coordinates solved for exactly, which visits only solutions of the
    3^branches (for cap 2) candidate space.  Sorted lexicographically.
    """
    nb = len(t.branches)
    if nb > BRANCH_CAP:
        raise TooLarge(f"{nb} branches exceed the cap of {BRANCH_CAP}")
    if cap < 1:
        return []
    B = t.switch_matrix()
    rows, piv = _rref(B)
    free = [c for c in range(nb) if c not in piv]
    if (cap + 1) ** len(free) > enumeration_cap:
        raise TooLarge(f"{(cap + 1) ** len(free)} candidates exceed {enumeration_cap}")
    denom = 1
    for row in rows:
        for x in row:
            denom = denom * x.denominator // np.gcd(denom, x.denominator)
    # pivot value * denom = -sum(coef * denom * free value)
    coef = np.array([[-int(row[c] * denom) for c in free] for row in rows], dtype=np.int64).reshape(len(rows), len(free))
    grids = np.indices((cap + 1,) * len(free)).reshape(len(free), -1).T if free else np.zeros((1, 0), dtype=np.int64)
    piv_scaled = grids @ coef.T
    ok = (piv_scaled % denom == 0).all(axis=1)
    piv_vals = piv_scaled // denom
    ok &= ((piv_vals >= 0) & (piv_vals <= cap)).all(axis=1)
    out = np.zeros((int(ok.sum()), nb), dtype=np.int64)
    out[:, free] = grids[ok]
    out[:, piv] = piv_vals[ok]
    sols = [tuple(int(x) for x in row) for row in out if row.any()]
    return sorted(sols)


def decompose(t: TrainTrack, w: Sequence[int]) -> list[tuple]:
    """Split an integral balanced system into the weight vectors of its curves.

    Strands on a half-branch are numbered counterclockwise round its switch;
    along a branch strand i at one end is strand w-1-i at the other, and at
    a switch the strands of both sides are matched from the top down.
    """
    if not switch_check(t, w):
        raise ValueError("weights do not balance")
    other, branch_of, _, _, _ = t._maps()
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for slot, j in branch_of.items():
        for i in range(w[j]):
            parent[(slot, i)] = (slot, i)
    for slot, j in branch_of.items():
        for i in range(w[j]):
            union((slot, i), (other[slot], w[j] - 1 - i))
    for s in t.switches:
        a_list = [(x, i) for x in s.side_a for i in range(w[branch_of[x]])]
        b_list = [(x, i) for x in reversed(s.side_b) for i in range(w[branch_of[x]])]
        for p, q in zip(a_list, reversed(b_list)):
            union(p, q)
    comps = {}
    for j, (x, _) in enumerate(t.branches):
        for i in range(w[j]):
            vec = comps.setdefault(find((x, i)), [0] * len(t.branches))
            vec[j] += 1
    return sorted(tuple(v) for v in comps.values())


def is_extreme(t: TrainTrack, w: Sequence[int]) -> bool:
    """Whether ``w`` spans an extreme ray of the cone of balanced nonnegative weights."""
    support = [j for j, x in enumerate(w) if x]
    if not support:
        return False
    return nullity(t.switch_matrix()[:, support]) == 1


@dataclass(frozen=True)
class MultiCurve:
    weights: tuple
    components: tuple

    @property
    def count(self) -> int:
        return len(self.components)


def vertex_cycles(t: TrainTrack) -> list[tuple]:
    """Connected carried curves of weight <= 2 spanning extreme rays, sorted."""
    return [w for w in balanced_systems(t, 2) if is_extreme(t, w) and len(decompose(t, w)) == 1]


def carried_multicurves(t: TrainTrack, weight_cap: int) -> list[MultiCurve]:
    return [MultiCurve(w, tuple(decompose(t, w))) for w in balanced_systems(t, weight_cap)]


def brute_force_systems(t: TrainTrack, cap: int) -> list[tuple]:
    """Literal scan of [0, cap]^branches; a slow cross-check for :func:`balanced_systems`."""
    return sorted(w for w in product(range(cap + 1), repeat=len(t.branches))
                  if any(w) and switch_check(t, w))


def has_integral_split(t: TrainTrack, w: Sequence[int]) -> bool:
    """Whether w = u + v with u, v nonzero integral balanced systems."""
    for u in product(*(range(x + 1) for x in w)):
        if any(u) and tuple(u) != tuple(w) and switch_check(t, u):
            return True
    return False


def random_track(rng, n_switches: int, extra_slots: int = 0) -> TrainTrack | None:
    """A random connected ribbon track, punctured just enough to be valid.

    Starts from trivalent switches and sprinkles ``extra_slots`` more slots;
    slot sides, orders and the pairing into branches are uniform.  Returns
    None when the draw is disconnected.
    """
    valence = [3] * n_switches
    for _ in range(extra_slots):
        valence[int(rng.integers(n_switches))] += 1
    if sum(valence) % 2:
        valence[int(rng.integers(n_switches))] += 1
    switches = []
    slots = []
    for i, v in enumerate(valence):
        names = [f"s{i}.{k}" for k in range(v)]
        cut = int(rng.integers(1, v))
        order = [names[j] for j in rng.permutation(v)]
        switches.append((tuple(order[:cut]), tuple(order[cut:])))
        slots += names
    perm = [slots[j] for j in rng.permutation(len(slots))]
    branches = [(perm[2 * k], perm[2 * k + 1]) for k in range(len(perm) // 2)]
    t = TrainTrack(switches, branches, SurfaceSig(0, 0))
    if not t.is_connected():
        return None
    punct = {}
    for k, r in enumerate(_regions_raw(t)):
        if r.cusps == 0:
            punct[k] = 2
        elif r.cusps <= 2:
            punct[k] = int(rng.integers(1, 3))
        else:
            punct[k] = int(rng.integers(0, 2))
    t.region_punctures = punct
    t.surface = SurfaceSig(t.ribbon_genus(), sum(punct.values()))
    return t
