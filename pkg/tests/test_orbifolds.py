from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from curvequot.errors import ExceptionalInput, NotExceptional, NotHyperbolic
from curvequot.orbifolds import (
    EXCEPTIONAL,
    INF,
    CoverCandidate,
    OrbifoldSig,
    SurfaceSig,
    divisor_menu,
    enumerate_signatures,
    euler_char,
    exceptional_cover,
    irregular_same_signature_search,
    is_exceptional,
    orb_euler_char,
    punctures_preserved,
    teich_dim,
)


def O(*orders, g=0):
    return OrbifoldSig(g, orders)


def test_euler_char():
    assert euler_char(SurfaceSig(0, 0)) == 2
    assert euler_char(SurfaceSig(0, 5)) == -3
    assert euler_char(SurfaceSig(2, 0)) == -2


def test_orb_euler_char():
    assert orb_euler_char(O(2, 2, 2, 2, 2, 2)) == -1
    assert orb_euler_char(O(INF, INF, INF)) == -1
    assert orb_euler_char(O(2, 2, 2, 2, 2)) == Fraction(-1, 2)
    assert orb_euler_char(O(2, 3, 7)) == Fraction(-1, 42)


def test_exceptional_predicate():
    assert is_exceptional(SurfaceSig(1, 1))
    assert not is_exceptional(SurfaceSig(0, 5))
    assert not is_exceptional(SurfaceSig(0, 3))
    found = {SurfaceSig(g, n) for g in range(4) for n in range(9) if is_exceptional(SurfaceSig(g, n))}
    assert found == set(EXCEPTIONAL)


@pytest.mark.parametrize("s,base", [
    (SurfaceSig(0, 4), O(2, 2, INF, INF)),
    (SurfaceSig(1, 1), O(2, 2, 2, INF)),
    (SurfaceSig(1, 2), O(2, 2, 2, 2, INF)),
    (SurfaceSig(2, 0), O(2, 2, 2, 2, 2, 2)),
])
def test_exceptional_covers(s, base):
    c = exceptional_cover(s)
    assert c == CoverCandidate(s, base, 2)
    assert c.valid
    assert teich_dim(s) == teich_dim(base)


def test_exceptional_cover_rejects():
    with pytest.raises(NotExceptional):
        exceptional_cover(SurfaceSig(0, 5))


def test_teich_dim():
    assert teich_dim(SurfaceSig(1, 1)) == 2
    assert teich_dim(O(2, 2, 2, INF)) == 2
    assert teich_dim(O(2, 2, 2, 2, 2, 2)) == 6
    with pytest.raises(NotHyperbolic):
        teich_dim(O(2, 2, 2))


@given(st.lists(st.sampled_from([2, 3, 4, 5, 6, 7, INF]), min_size=5, max_size=8),
       st.integers(0, 7), st.sampled_from([2, 3, 4, 5, 6, 7]))
def test_teich_dim_ignores_finite_orders(orders, k, new):
    k %= len(orders)
    if orders[k] == INF:
        return
    swapped = orders[:k] + [new] + orders[k + 1:]
    assert teich_dim(O(*orders)) == teich_dim(O(*swapped))


def brute_signatures(s, d, menu, n_prime, genus):
    """Every count vector over the menu, filtered by the characteristic equation."""
    out = set()
    for counts in product(range(n_prime + 1), repeat=len(menu)):
        if sum(counts) != n_prime:
            continue
        orders = [m for m, c in zip(menu, counts) for _ in range(c)]
        o = OrbifoldSig(genus, tuple(orders))
        if euler_char(s) == d * orb_euler_char(o):
            out.add(o)
    return out


@pytest.mark.parametrize("n", [5, 6, 7, 8])
@pytest.mark.parametrize("d", [3, 4, 5, 6, 8, 12])
def test_enumeration_matches_brute_force(n, d):
    s = SurfaceSig(0, n)
    menu = divisor_menu(d)
    assert set(enumerate_signatures(s, d, menu, n_prime=n, genus=0)) == brute_signatures(s, d, menu, n, 0)


def test_enumeration_examples():
    assert enumerate_signatures(SurfaceSig(0, 5), 5, {5, INF}, n_prime=5, genus=0) == []
    assert enumerate_signatures(SurfaceSig(0, 6), 4, {2, 4, INF}, n_prime=6, genus=0) == [O(2, 2, 2, 2, 2, 2)]
    assert enumerate_signatures(SurfaceSig(0, 5), 6, {2, 3, 6, INF}, n_prime=5, genus=0) == [O(2, 2, 2, 2, 2)]


def test_enumeration_menu_order_and_duplicates():
    a = enumerate_signatures(SurfaceSig(0, 6), 4, [INF, 4, 2])
    b = enumerate_signatures(SurfaceSig(0, 6), 4, [2, 2, 4, INF])
    assert a == b
    assert len(set(a)) == len(a)


def test_search_s05():
    rep = irregular_same_signature_search(SurfaceSig(0, 5))
    assert rep.degrees == [3, 4, 5, 6]
    assert rep.feasible == []
    by_d = {}
    for r in rep.rows:
        by_d.setdefault(r.degree, []).append(r)
    assert by_d[3][0].rejection_reason == "forces a=6 > n=5"
    (r4,) = by_d[4]
    assert (r4.order_counts[2], r4.order_counts[4]) == (4, 1) and r4.equation == "2a+b=9"
    assert r4.rejection_reason == "no punctures"
    assert by_d[5][0].rejection_reason == "forces a=12 > n=5"
    (r6,) = by_d[6]
    assert r6.equation == "3a+2b+c=15"
    assert (r6.order_counts[2], r6.order_counts[3], r6.order_counts[6]) == (5, 0, 0)


@pytest.mark.parametrize("n,degrees", [(6, [3, 4]), (7, [3]), (8, [3]), (9, [])])
def test_search_case_list(n, degrees):
    rep = irregular_same_signature_search(SurfaceSig(0, n))
    assert rep.degrees == degrees
    assert rep.feasible == []
    if 3 in degrees:
        assert rep.rows[0].rejection_reason == f"forces a={2 * n - 4} > n={n}"


def test_search_rejects_exceptional():
    with pytest.raises(ExceptionalInput):
        irregular_same_signature_search(SurfaceSig(1, 1))


@pytest.mark.parametrize("g,n", [(0, 5), (0, 6), (1, 3), (2, 1), (3, 0), (1, 4)])
def test_no_puncture_preserving_signature_up_to_degree_12(g, n):
    s = SurfaceSig(g, n)
    for d in range(3, 13):
        for o in enumerate_signatures(s, d, divisor_menu(d), n_prime=n, genus=g):
            assert not punctures_preserved(s, o)
