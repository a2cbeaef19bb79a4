"""Exact Farey-graph model of the curve graphs of S_{1,1} and S_{0,4}.

Curves are slopes p/q (vector (p, q) up to sign); mapping classes are
SL(2, Z) matrices up to sign.  Balls are taken in the Farey graph cut down
to slopes of height max(|p|, |q|) <= ``max_height``.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor, gcd

from .errors import BadDeterminant, CapExceeded, EqualSlopes, Rejected
from .graphcore import Graph, VertexMap

S11 = "S11"
S04 = "S04"
SURFACES = (S11, S04)

RADIUS_CAP = 8
DEFAULT_HEIGHT = 21


@dataclass(frozen=True, order=True)
class Slope:
    """Slope p/q in lowest terms with q > 0, or 1/0."""

    p: int
    q: int

    def __post_init__(self):
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not primitive")
        if self.q < 0 or (self.q == 0 and self.p != 1):
            raise ValueError(f"{self.p}/{self.q} is not canonical")

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        g = gcd(p, q)
        if g == 0:
            raise ValueError("0/0 is not a slope")
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        p, _, q = text.strip().partition("/")
        return cls.of(int(p), int(q) if q else 1)

    @property
    def height(self) -> int:
        return max(abs(self.p), abs(self.q))

    def __str__(self):
        return f"{self.p}/{self.q}"


def det(a: Slope, b: Slope) -> int:
    return a.p * b.q - a.q * b.p


def intersection_number(a: Slope, b: Slope, surface: str = S11) -> int:
    k = abs(det(a, b))
    if surface == S11:
        return k
    if surface == S04:
        return 2 * k
    raise ValueError(f"unknown surface {surface!r}")


def farey_adjacent(a: Slope, b: Slope) -> bool:
    return abs(det(a, b)) == 1


@dataclass(frozen=True)
class FareyMapClass:
    """Determinant-one integer matrix [[a, b], [c, d]] up to global sign."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise BadDeterminant(f"determinant of {self.entries} is not 1")
        first = next(x for x in self.entries if x != 0)
        if first < 0:
            for name in "abcd":
                object.__setattr__(self, name, -getattr(self, name))

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> int:
        # sign-normalised, so only |trace| is meaningful
        return self.a + self.d

    def __matmul__(self, other: "FareyMapClass") -> "FareyMapClass":
        return FareyMapClass(
            self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "FareyMapClass":
        return FareyMapClass(self.d, -self.b, -self.c, self.a)

    def __call__(self, s: Slope) -> Slope:
        return act(self, s)

    def __str__(self):
        return ",".join(map(str, self.entries))


IDENTITY = FareyMapClass(1, 0, 0, 1)
TWIST_T = FareyMapClass(1, 1, 0, 1)
TWIST_U = FareyMapClass(1, 0, 1, 1)
GENERATORS = {"T": TWIST_T, "t": TWIST_T.inverse(), "U": TWIST_U, "u": TWIST_U.inverse()}

ELLIPTIC = "Elliptic"
REDUCIBLE = "Reducible"
PSEUDO_ANOSOV = "PseudoAnosov"


def classify(m: FareyMapClass) -> str:
    t = abs(m.trace)
    if t < 2:
        return ELLIPTIC
    if t == 2:
        return REDUCIBLE
    return PSEUDO_ANOSOV


def act(m: FareyMapClass, s: Slope) -> Slope:
    return Slope.of(m.a * s.p + m.b * s.q, m.c * s.p + m.d * s.q)


def word_to_map(word: str) -> FareyMapClass:
    """Product of generators, read left to right: "TU" is T @ U."""
    m = IDENTITY
    for ch in word:
        m = m @ GENERATORS[ch]
    return m


def words_up_to(length: int) -> list[tuple[str, FareyMapClass]]:
    """Distinct group elements given by words of length <= ``length``, shortest word first."""
    seen = {IDENTITY: ""}
    frontier = [("", IDENTITY)]
    for _ in range(length):
        nxt = []
        for w, m in frontier:
            for ch in "TtUu":
                mm = m @ GENERATORS[ch]
                if mm not in seen:
                    seen[mm] = w + ch
                    nxt.append((w + ch, mm))
        frontier = nxt
    return [(w, m) for m, w in seen.items()]


# -- balls -------------------------------------------------------------------


def _egcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _partner(s: Slope) -> tuple[int, int]:
    """A vector t with det(s, t) = 1."""
    g, x, y = _egcd(s.p, s.q)  # p x + q y = g = +-1
    r, u = -y * g, x * g
    assert s.p * u - s.q * r == 1
    return r, u


def farey_neighbors(s: Slope, max_height: int) -> list[Slope]:
    """Farey neighbours of ``s`` of height at most ``max_height``, sorted."""
    r, u = _partner(s)
    lo, hi = -10**18, 10**18
    for t0, c in ((r, s.p), (u, s.q)):
        if c == 0:
            if abs(t0) > max_height:
                return []
            continue
        a, b = Fraction(-max_height - t0, c), Fraction(max_height - t0, c)
        a, b = min(a, b), max(a, b)
        lo, hi = max(lo, -floor(-a)), min(hi, floor(b))
    return sorted({Slope.of(r + k * s.p, u + k * s.q) for k in range(lo, hi + 1)})


def farey_ball(center: Slope, radius: int, max_height: int = DEFAULT_HEIGHT, cap: int = RADIUS_CAP) -> Graph:
    """Induced subgraph on slopes within ``radius`` of ``center``.

    Vertex ids are "p/q" strings in breadth-first order, ties broken by
    slope order.
    """
    if radius > cap:
        raise CapExceeded(f"radius {radius} exceeds cap {cap}")
    if center.height > max_height:
        raise CapExceeded(f"{center} is higher than {max_height}")
    depth = {center: 0}
    order = [center]
    queue = deque([center])
    while queue:
        s = queue.popleft()
        if depth[s] == radius:
            continue
        for t in farey_neighbors(s, max_height):
            if t not in depth:
                depth[t] = depth[s] + 1
                order.append(t)
                queue.append(t)
    inside = set(order)
    edges = []
    for s in order:
        for t in farey_neighbors(s, max_height):
            if t in inside and s < t:
                edges.append((str(s), str(t)))
    return Graph([str(s) for s in order], edges)


def ball_slopes(g: Graph) -> list[Slope]:
    return [Slope.parse(v) for v in g.vertices]


def vertex_map(m: FareyMapClass, g: Graph, label: str | None = None) -> VertexMap:
    """``m`` restricted to the ball vertices it keeps inside the ball."""
    names, pairs, index = _ball_index(g)
    a, b, c, d = m.a, m.b, m.c, m.d
    fwd = {}
    for v, (p, q) in zip(names, pairs):
        P, Q = a * p + b * q, c * p + d * q
        if Q < 0 or (Q == 0 and P < 0):
            P, Q = -P, -Q
        w = index.get((P, Q))
        if w is not None:
            fwd[v] = w
    return VertexMap(fwd, label=label or str(m))


_INDEX_CACHE: dict[int, tuple] = {}


def _ball_index(g: Graph):
    # determinant one keeps p/q primitive, so images need only a sign fix
    hit = _INDEX_CACHE.get(id(g))
    if hit is not None and hit[0] is g and len(hit[1]) == len(g):
        return hit[1:]
    names = list(g.vertices)
    pairs = [(s.p, s.q) for s in map(Slope.parse, names)]
    index = dict(zip(pairs, names))
    if len(_INDEX_CACHE) >= 4:
        _INDEX_CACHE.clear()
    _INDEX_CACHE[id(g)] = (g, names, pairs, index)
    return names, pairs, index


# -- complementary regions -----------------------------------------------------


@dataclass
class RegionReport:
    """Complementary regions of a pair of slopes, counted as (shape, punctures)."""

    surface: str
    a: Slope
    b: Slope
    regions: Counter = field(default_factory=Counter)
    vertices: int = 0
    edges: int = 0
    faces: int = 0

    FILLING = "filling"
    MAXIMALLY_FILLING = "maximally_filling"
    NOT_FILLING = "not_filling"

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces

    @property
    def filling(self) -> bool:
        return all(p <= 1 for (_, p) in self.regions) and bool(self.regions)

    @property
    def maximally_filling(self) -> bool:
        allowed = {("square", 0), ("hexagon", 0), ("bigon", 1)}
        return self.filling and all(k in allowed for k in self.regions)

    @property
    def verdict(self) -> str:
        if self.maximally_filling:
            return self.MAXIMALLY_FILLING
        return self.FILLING if self.filling else self.NOT_FILLING


def _normalizer(a: Slope):
    """Matrix sending a's vector to (1, 0)."""
    r, u = _partner(a)  # columns (p, q), (r, u) have determinant 1
    return (u, -r, -a.q, a.p)


class _TorusArrangement:
    """Parallel curves of slopes a and b on R^2/Z^2, in coordinates where a is horizontal.

    a-curves sit at heights ``offsets``; b-curves at the same values of
    phi(x, y) = k x - m y, where (m, k) is b's direction.  Between two
    consecutive a-curves the strip is cut by b-segments into cells
    indexed by the lifted value of phi.
    """

    def __init__(self, a: Slope, b: Slope, offsets):
        n11, n12, n21, n22 = _normalizer(a)
        self.M = (n11, n12, n21, n22)
        m, k = n11 * b.p + n12 * b.q, n21 * b.p + n22 * b.q
        if k < 0:
            m, k = -m, -k
        self.m, self.k = m, k
        self.offsets = [Fraction(o) for o in offsets]
        self.spacing = Fraction(1, len(self.offsets))

    def to_normal(self, x, y):
        a, b, c, d = self.M
        return a * x + b * y, c * x + d * y

    @property
    def cells_per_strip(self) -> int:
        return self.k * len(self.offsets)

    def locate(self, x, y):
        """(strip, cell) of a point off the curves, given in normalised coordinates."""
        ys = self.offsets + [self.offsets[0] + 1]
        y = y - floor(y - ys[0])
        strip = next(i for i in range(len(self.offsets)) if ys[i] < y < ys[i + 1])
        phi = self.k * (x - floor(x)) - self.m * y
        t = (phi - self.offsets[0]) / self.spacing
        if t == floor(t):
            raise ValueError("point lies on a curve")
        return strip, floor(t) % self.cells_per_strip

    def locate_scaled(self, X: int, Y: int, S: int = 4):
        """:meth:`locate` for the point (X/S, Y/S), in integer arithmetic.

        Needs every offset to be a multiple of 1/S.
        """
        ys = [int(o * S) for o in self.offsets]
        ys.append(ys[0] + S)
        Y -= S * ((Y - ys[0]) // S)
        strip = next(i for i in range(len(self.offsets)) if ys[i] < Y < ys[i + 1])
        num = (self.k * (X % S) - self.m * Y - ys[0]) * len(self.offsets)
        if num % S == 0:
            raise ValueError("point lies on a curve")
        return strip, (num // S) % self.cells_per_strip

    def centre(self, strip, cell):
        ys = self.offsets + [self.offsets[0] + 1]
        y = (ys[strip] + ys[strip + 1]) / 2
        phi = self.offsets[0] + (cell + Fraction(1, 2)) * self.spacing
        return (phi + self.m * y) / self.k, y

    @property
    def cell_count(self) -> int:
        return self.cells_per_strip * len(self.offsets)

    def all_cells(self):
        return [(s, c) for s in range(len(self.offsets)) for c in range(self.cells_per_strip)]


def _check_pair(a: Slope, b: Slope, surface: str):
    if surface not in SURFACES:
        raise ValueError(f"unknown surface {surface!r}")
    if a == b:
        raise EqualSlopes(f"{a} twice")


def complementary_regions(a: Slope, b: Slope, surface: str = S11, explicit: bool = False) -> RegionReport:
    """Region census of the curves a and b in minimal position.

    S_{1,1} is the square torus with the marked point at the origin and one
    straight curve of each slope.  S_{0,4} is the quotient of that torus by
    -1, whose four fixed half-lattice points become punctures; each curve
    lifts to two parallel lines at transverse offsets 1/4 and 3/4.  Cells
    upstairs are parallelograms; a cell holding a fixed point folds to a
    punctured bigon, all others pair up into squares.

    With ``explicit`` every cell is enumerated and the involution applied
    cell by cell; otherwise only the cells holding special points are
    located and the rest are counted.
    """
    _check_pair(a, b, surface)
    rep = RegionReport(surface, a, b)
    if surface == S11:
        arr = _TorusArrangement(a, b, [Fraction(1, 2)])
        marked = {arr.locate(*arr.to_normal(0, 0)) if explicit else arr.locate_scaled(0, 0)}
        if explicit:
            for cell in arr.all_cells():
                rep.regions[("square", int(cell in marked))] += 1
        else:
            rep.regions[("square", 1)] = 1
            if arr.cell_count > 1:
                rep.regions[("square", 0)] = arr.cell_count - 1
        rep.vertices = arr.k
        rep.edges = 2 * arr.k
        rep.faces = arr.cell_count
        return rep

    arr = _TorusArrangement(a, b, [Fraction(1, 4), Fraction(3, 4)])
    fixed = {}
    for pt in ((0, 0), (2, 0), (0, 2), (2, 2)):
        cell = (arr.locate(*arr.to_normal(*(Fraction(c, 4) for c in pt))) if explicit
                else arr.locate_scaled(*arr.to_normal(*pt)))
        fixed[cell] = fixed.get(cell, 0) + 1
    if any(v > 1 for v in fixed.values()):
        raise AssertionError("two fixed points in one cell")
    total = arr.cell_count
    if explicit:
        orbits = 0
        seen = set()
        for cell in arr.all_cells():
            if cell in seen:
                continue
            x, y = arr.centre(*cell)
            img = arr.locate(-x, -y)
            seen.update({cell, img})
            orbits += 1
            if img == cell:
                if cell not in fixed:
                    raise AssertionError("invariant cell without a fixed point")
                rep.regions[("bigon", 1)] += 1
            else:
                rep.regions[("square", 0)] += 1
    else:
        rep.regions[("bigon", 1)] = len(fixed)
        if total > len(fixed):
            rep.regions[("square", 0)] = (total - len(fixed)) // 2
    # four lines, each pair of transverse lines meeting k times, halved by the involution
    rep.vertices = 2 * arr.k
    rep.edges = 4 * arr.k
    rep.faces = sum(rep.regions.values())
    return rep


def is_maximally_filling(a: Slope, b: Slope, surface: str = S04) -> bool:
    if a == b:
        return False
    return complementary_regions(a, b, surface).maximally_filling


def k_maximally_filling(a: Slope, b: Slope, K: int, surface: str = S04,
                        max_height: int = DEFAULT_HEIGHT, cap: int = RADIUS_CAP) -> bool:
    """True iff every pair within distance K of (a, b) is maximally filling, on the cut-down balls."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    near_a = ball_slopes(farey_ball(a, K, max_height, cap))
    near_b = ball_slopes(farey_ball(b, K, max_height, cap))
    return all(is_maximally_filling(x, y, surface) for x, y in product(near_a, near_b))


# -- quadrant train tracks -----------------------------------------------------


def carried(s: Slope, quadrant: tuple[int, int]) -> bool:
    """Whether the standard torus track for ``quadrant`` carries ``s``."""
    sp, sq = quadrant
    return any(e * s.p * sp >= 0 and e * s.q * sq >= 0 for e in (1, -1))


def runs_over_every_branch(s: Slope, quadrant: tuple[int, int]) -> bool:
    sp, sq = quadrant
    return any(e * s.p * sp > 0 and e * s.q * sq > 0 for e in (1, -1))


def nesting_check(quadrant: tuple[int, int], a: Slope, K: int,
                  max_height: int = DEFAULT_HEIGHT, cap: int = RADIUS_CAP) -> bool:
    """Whether every slope within K of ``a`` is carried by the quadrant track.

    ``a`` must put positive weight on both branches.
    """
    if quadrant not in {(1, 1), (1, -1), (-1, 1), (-1, -1)}:
        raise Rejected(f"bad quadrant {quadrant!r}")
    if not runs_over_every_branch(a, quadrant):
        raise Rejected(f"{a} does not run over every branch of the {quadrant} track")
    if K == 0:
        return True
    return all(carried(s, quadrant) for s in ball_slopes(farey_ball(a, K, max_height, cap)))


def slope_passages(s: Slope, quadrant: tuple[int, int]):
    """Passage row of ``s`` over the two bands of a quadrant track, or None if not carried."""
    from .ncie import curve_passages

    if not carried(s, quadrant):
        return None
    return curve_passages(s.p, s.q)


def slope_pair_certificate(a: Slope, b: Slope) -> bool:
    """Passage certificate for a vertical slope in the (+,+) quadrant and a horizontal one in (+,-).

    True only when each curve runs at least twice over both bands of its
    own track.  Curves not carried by their track get no certificate.
    """
    from .ncie import maximally_filling_certificate

    va, hb = slope_passages(a, (1, 1)), slope_passages(b, (1, -1))
    if va is None or hb is None:
        return False
    return maximally_filling_certificate(va, hb)
