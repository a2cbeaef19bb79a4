"""Euler characteristics of surfaces and 2-orbifolds, and cover-signature searches.

Orders of cone points are integers >= 2; punctures are the order
:data:`INF`.  All characteristic arithmetic is in :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable

from .errors import ExceptionalInput, NotExceptional, NotHyperbolic

INF = math.inf
DEGREE_CAP = 12


def _order_key(d):
    return (d == INF, d if d != INF else 0)


def format_order(d) -> str:
    return "inf" if d == INF else str(d)


@dataclass(frozen=True)
class SurfaceSig:
    """Orientable surface of genus ``g`` with ``n`` punctures."""

    g: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise ValueError("genus and punctures must be nonnegative")

    @property
    def complexity(self) -> int:
        return 3 * self.g - 3 + self.n

    @property
    def supports_pseudo_anosov(self) -> bool:
        return self.complexity > 0

    def as_orbifold(self) -> "OrbifoldSig":
        return OrbifoldSig(self.g, (INF,) * self.n)

    def __str__(self):
        return f"S_{{{self.g},{self.n}}}"


@dataclass(frozen=True)
class OrbifoldSig:
    """Genus plus multiset of orbifold-point orders (``INF`` for punctures)."""

    g: int
    orders: tuple = ()

    def __post_init__(self):
        for d in self.orders:
            if d != INF and (int(d) != d or d < 2):
                raise ValueError(f"bad orbifold order {d!r}")
        object.__setattr__(self, "orders", tuple(sorted(self.orders, key=_order_key)))

    @property
    def n_points(self) -> int:
        return len(self.orders)

    @property
    def punctures(self) -> int:
        return sum(1 for d in self.orders if d == INF)

    def counts(self) -> Counter:
        return Counter(self.orders)

    def __str__(self):
        return f"S'_{self.g}({', '.join(format_order(d) for d in self.orders)})"


@dataclass(frozen=True)
class CoverCandidate:
    total: SurfaceSig
    base: OrbifoldSig
    degree: int

    @property
    def valid(self) -> bool:
        return euler_char(self.total) == self.degree * orb_euler_char(self.base)


def euler_char(s: SurfaceSig) -> Fraction:
    return Fraction(2 - 2 * s.g - s.n)


def _defect(d) -> Fraction:
    return Fraction(1) if d == INF else 1 - Fraction(1, int(d))


def orb_euler_char(o: OrbifoldSig) -> Fraction:
    return 2 - 2 * o.g - sum((_defect(d) for d in o.orders), Fraction(0))


EXCEPTIONAL = {
    SurfaceSig(0, 4): OrbifoldSig(0, (2, 2, INF, INF)),
    SurfaceSig(1, 1): OrbifoldSig(0, (2, 2, 2, INF)),
    SurfaceSig(1, 2): OrbifoldSig(0, (2, 2, 2, 2, INF)),
    SurfaceSig(2, 0): OrbifoldSig(0, (2, 2, 2, 2, 2, 2)),
}


def is_exceptional(s: SurfaceSig) -> bool:
    """True for S_{0,4}, S_{1,1}, S_{1,2}, S_{2,0}.

    Equivalently 3g - 3 + n > 0 and 2g + n <= 4.
    """
    return s.complexity > 0 and 2 * s.g + s.n <= 4


def exceptional_cover(s: SurfaceSig) -> CoverCandidate:
    """The hyperelliptic quotient of an exceptional surface (degree 2)."""
    if not is_exceptional(s):
        raise NotExceptional(f"{s} is not exceptional")
    cand = CoverCandidate(s, EXCEPTIONAL[s], 2)
    assert cand.valid
    return cand


def teich_dim(o: OrbifoldSig | SurfaceSig) -> int:
    """Real dimension 6g - 6 + 2n of the Teichmuller space.

    Counts every orbifold point, whatever its order.
    """
    if isinstance(o, SurfaceSig):
        o = o.as_orbifold()
    if orb_euler_char(o) >= 0:
        raise NotHyperbolic(f"{o} is not hyperbolic")
    return 6 * o.g - 6 + 2 * o.n_points


def enumerate_signatures(
    s: SurfaceSig,
    d: int,
    order_menu: Iterable,
    n_prime: int | None = None,
    genus: int | None = None,
) -> list[OrbifoldSig]:
    """All signatures over ``order_menu`` with chi(s) = d * chi_orb.

    ``n_prime`` fixes the number of orbifold points and ``genus`` the base
    genus; left open, both range over every value the characteristic allows.
    Only the characteristic equation is checked, not whether a cover exists.
    """
    menu = sorted(set(order_menu), key=_order_key)
    target = euler_char(s) / d
    # chi_orb <= 2 - 2g' bounds the genus
    max_genus = math.floor(1 - target / 2)
    genera = [genus] if genus is not None else range(0, max_genus + 1)
    out = set()
    for gp in genera:
        need = 2 - 2 * gp - target  # total defect the points must supply
        if need < 0:
            continue
        # every point contributes a defect of at least 1/2
        sizes = [n_prime] if n_prime is not None else range(0, math.floor(2 * need) + 1)
        for k in sizes:
            for combo in combinations_with_replacement(menu, k):
                if sum((_defect(x) for x in combo), Fraction(0)) == need:
                    out.add(OrbifoldSig(gp, combo))
    return sorted(out, key=lambda o: (o.g, o.n_points, [_order_key(x) for x in o.orders]))


def divisor_menu(d: int) -> tuple:
    """Orders available to a degree-``d`` cover by a surface: divisors of d above 1, and INF."""
    return tuple(m for m in range(2, d + 1) if d % m == 0) + (INF,)


def degree_permitted(s: SurfaceSig, d: int) -> bool:
    """(1 - 1/d)(2 - 2g) >= (1/2 - 1/d) n, the dimension-count constraint."""
    return (1 - Fraction(1, d)) * (2 - 2 * s.g) >= (Fraction(1, 2) - Fraction(1, d)) * s.n


def punctures_preserved(s: SurfaceSig, o: OrbifoldSig) -> bool:
    if s.n == 0:
        return o.punctures == 0
    return 1 <= o.punctures <= s.n


def _var(k):
    return "abcdefgh"[k]


def _equation(s: SurfaceSig, d: int, finite: list[int]) -> str:
    """Linear equation in the finite-order counts forced by chi, for g' = g and n' = n.

    Eliminating the puncture count gives sum (d/m) c_m = (d - 1)(n + 2g - 2).
    """
    lhs = []
    for k, m in enumerate(finite):
        c = d // m
        lhs.append(f"{'' if c == 1 else c}{_var(k)}")
    rhs = (d - 1) * (s.n + 2 * s.g - 2)
    return f"{'+'.join(lhs)}={rhs}"


@dataclass
class CaseRow:
    genus: int
    punctures: int
    degree: int
    order_counts: dict = field(default_factory=dict)
    chi_total: Fraction = Fraction(0)
    chi_base: Fraction = Fraction(0)
    feasible: bool = False
    rejection_reason: str = ""
    equation: str = ""
    base: OrbifoldSig | None = None

    def counts_str(self) -> str:
        return ";".join(f"{format_order(k)}:{v}" for k, v in
                        sorted(self.order_counts.items(), key=lambda kv: _order_key(kv[0])))


@dataclass
class SearchReport:
    surface: SurfaceSig
    degrees: list
    rows: list

    @property
    def feasible(self) -> list:
        return [r for r in self.rows if r.feasible]


def irregular_same_signature_search(s: SurfaceSig, max_degree: int = DEGREE_CAP) -> SearchReport:
    """Search for degree >= 3 orbifold covers S -> S' with the same genus and point count.

    Only degrees allowed by :func:`degree_permitted` are searched.  Every
    characteristic solution is listed with the reason it fails; the feasible
    set is expected to be empty for every non-exceptional surface.
    """
    if 2 * s.g + s.n <= 4:
        raise ExceptionalInput(f"{s} has 2g + n <= 4")
    max_degree = min(max_degree, DEGREE_CAP)
    degrees = [d for d in range(3, max_degree + 1) if degree_permitted(s, d)]
    rows = []
    chi = euler_char(s)
    for d in degrees:
        menu = divisor_menu(d)
        finite = [m for m in menu if m != INF]
        eq = _equation(s, d, finite)
        sols = enumerate_signatures(s, d, menu, n_prime=s.n, genus=s.g)
        base_row = dict(genus=s.g, punctures=s.n, degree=d, chi_total=chi, chi_base=chi / d, equation=eq)
        if not sols:
            rhs = (d - 1) * (s.n + 2 * s.g - 2)
            if len(finite) == 1:
                c = d // finite[0]
                if rhs % c:
                    reason = f"{eq} has no integer solution"
                else:
                    reason = f"forces a={rhs // c} > n={s.n}"
            else:
                names = "+".join(_var(k) for k in range(len(finite)))
                reason = f"{eq} has no solution with {names}<={s.n}"
            rows.append(CaseRow(**base_row, rejection_reason=reason))
            continue
        for o in sols:
            counts = {m: o.counts().get(m, 0) for m in menu}
            ok = punctures_preserved(s, o)
            reason = "" if ok else ("no punctures" if o.punctures == 0 else "puncture count mismatch")
            rows.append(CaseRow(**base_row, order_counts=counts, feasible=ok,
                                rejection_reason=reason, base=o))
    return SearchReport(s, degrees, rows)
