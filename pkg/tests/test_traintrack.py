import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from curvequot.errors import IndexMismatch, RibbonInconsistent, TooLarge, TrackInvalid
from curvequot.orbifolds import SurfaceSig, euler_char
from curvequot import traintrack as tt


def load(data_dir, name):
    return tt.TrainTrack.load(data_dir / "tracks" / f"{name}.json")


def raw(data_dir, name):
    d = json.loads((data_dir / "tracks" / f"{name}.json").read_text())
    return [(s["sideA"], s["sideB"]) for s in d["switches"]], [tuple(b) for b in d["branches"]]


VALID = ["s11_standard", "s11_single_switch", "s11_maximal", "s04_maximal", "s04_parity", "loop_stabilized"]


@pytest.mark.parametrize("name", VALID)
def test_fixtures_valid_and_regions_match_oracle(data_dir, name):
    t = load(data_dir, name)
    tt.validate(t)
    regs = tt.regions(t)
    sw, br = raw(data_dir, name)
    assert sorted(r.cusps for r in regs) == sorted(c for c, _ in oracles.face_cycles(sw, br))
    assert sum(r.index for r in regs) == euler_char(t.surface)


def test_standard_track_region(data_dir):
    regs = tt.regions(load(data_dir, "s11_standard"))
    assert [(r.shape, r.punctures) for r in regs] == [("bigon", 1)]
    assert not tt.is_maximal(load(data_dir, "s11_standard"))


@pytest.mark.parametrize("name", ["s11_maximal", "s04_maximal"])
def test_maximal_fixtures(data_dir, name):
    t = load(data_dir, name)
    assert tt.is_maximal(t)
    assert all(r.shape not in {"square", "hexagon", "bigon"} for r in tt.regions(t))


def test_s11_maximal_regions(data_dir):
    regs = tt.regions(load(data_dir, "s11_maximal"))
    assert sorted((r.shape, r.punctures) for r in regs) == [("monogon", 1), ("triangle", 0)]


def test_broken_fixtures(data_dir):
    with pytest.raises(TrackInvalid, match="one-sided"):
        tt.validate(load(data_dir, "broken_one_sided"))
    with pytest.raises(TrackInvalid, match="forbidden bigon"):
        tt.validate(load(data_dir, "broken_bigon"))
    with pytest.raises(RibbonInconsistent):
        tt.regions(load(data_dir, "broken_ribbon"))


def test_problems_have_locations(data_dir):
    probs = tt.problems(load(data_dir, "broken_ribbon"))
    assert {p.where for p in probs} == {"branch 1", "slot 'y0'"}


def test_empty_track():
    t = tt.TrainTrack([], [], SurfaceSig(1, 1))
    assert not tt.is_maximal(t)
    assert [p.what for p in tt.problems(t)] == ["empty track"]


def test_valence_and_puncture_count():
    t = tt.TrainTrack([(("a",), ("b",))], [("a", "b")], SurfaceSig(0, 2), {0: 1, 1: 1})
    assert any("valence" in p.what for p in tt.problems(t))


def test_switch_check(data_dir):
    t = load(data_dir, "s11_standard")
    assert tt.switch_check(t, (0, 0, 0))
    assert tt.switch_check(t, (1, 1, 2))
    assert not tt.switch_check(t, (1, 0, 2))
    with pytest.raises(IndexMismatch):
        tt.switch_check(t, (1, 1))


def test_switch_check_fractions(data_dir):
    t = load(data_dir, "s11_standard")
    assert tt.switch_check(t, (Fraction(1, 3), Fraction(2, 3), Fraction(1)))


def test_standard_vertex_cycles(data_dir):
    assert tt.vertex_cycles(load(data_dir, "s11_standard")) == [(0, 1, 1), (1, 0, 1)]
    assert tt.vertex_cycles(load(data_dir, "s11_single_switch")) == [(0, 1), (1, 0)]


def test_loop_vertex_cycle(data_dir):
    assert tt.vertex_cycles(load(data_dir, "loop_stabilized")) == [(1, 0, 0)]


def test_parity_fixture(data_dir):
    t = load(data_dir, "s04_parity")
    curves = tt.carried_multicurves(t, 4)
    assert curves and all(m.weights[2] % 2 == 0 for m in curves)
    assert [m.weights for m in curves] == [(1, 1, 2), (2, 2, 4)]
    assert tt.vertex_cycles(t) == [(1, 1, 2)]


@pytest.mark.parametrize("name", VALID)
def test_enumeration_matches_brute_force(data_dir, name):
    t = load(data_dir, name)
    sw, br = raw(data_dir, name)
    for cap in (1, 2, 3):
        assert tt.balanced_systems(t, cap) == oracles.balanced_brute(sw, br, cap)


@pytest.mark.parametrize("name", VALID)
def test_vertex_cycles_extreme_by_decomposition_search(data_dir, name):
    t = load(data_dir, name)
    sw, br = raw(data_dir, name)
    want = [w for w in oracles.balanced_brute(sw, br, 2) if not oracles.splits(sw, br, w)
            and len(tt.decompose(t, w)) == 1]
    assert tt.vertex_cycles(t) == want


@pytest.mark.parametrize("name", VALID)
def test_vertex_cycles_inside_carried(data_dir, name):
    t = load(data_dir, name)
    single = {m.weights for m in tt.carried_multicurves(t, 2) if m.count == 1}
    cycles = tt.vertex_cycles(t)
    assert set(cycles) <= single
    assert all(tt.switch_check(t, w) for w in cycles)


@pytest.mark.parametrize("name", VALID)
def test_decomposition_sums(data_dir, name):
    t = load(data_dir, name)
    for m in tt.carried_multicurves(t, 3):
        assert tuple(map(sum, zip(*m.components))) == m.weights
        assert all(tt.switch_check(t, c) for c in m.components)


def test_multicurve_components(data_dir):
    t = load(data_dir, "s11_standard")
    by_w = {m.weights: m for m in tt.carried_multicurves(t, 2)}
    assert by_w[(0, 0, 0)] if (0, 0, 0) in by_w else True
    assert by_w[(1, 1, 2)].count == 1          # slope 1/1 is one curve
    assert by_w[(2, 0, 2)].count == 2          # two parallel copies
    assert by_w[(0, 2, 2)].count == 2


def test_weight_cap_zero(data_dir):
    assert tt.carried_multicurves(load(data_dir, "s11_standard"), 0) == []


def test_too_large():
    n = tt.BRANCH_CAP + 1
    sw = [(tuple(f"x{i}" for i in range(n)), tuple(f"y{i}" for i in reversed(range(n))))]
    t = tt.TrainTrack(sw, [(f"x{i}", f"y{i}") for i in range(n)], SurfaceSig(0, 0))
    with pytest.raises(TooLarge):
        tt.vertex_cycles(t)
    with pytest.raises(TooLarge):
        tt.carried_multicurves(t, 1)


def test_relabeling_invariance(data_dir):
    rng = np.random.default_rng(2)
    for name in VALID:
        t = load(data_dir, name)
        slots = [x for b in t.branches for x in b]
        rename = {x: f"r{k}" for k, x in enumerate(rng.permutation(slots))}
        order = list(rng.permutation(len(t.switches)))
        border = list(rng.permutation(len(t.branches)))
        u = t.relabel(rename, order, border)
        assert tt.problems(u) == []
        assert tt.is_maximal(u) == tt.is_maximal(t)
        assert sorted((r.cusps, r.punctures) for r in tt.regions(u)) == \
            sorted((r.cusps, r.punctures) for r in tt.regions(t))
        assert len(tt.vertex_cycles(u)) == len(tt.vertex_cycles(t))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(0, 4))
def test_random_tracks_euler_identity(seed, switches, extra):
    t = tt.random_track(np.random.default_rng(seed), switches, extra)
    if t is None:
        return
    tt.validate(t)
    regs = tt.regions(t)
    assert sum(r.index for r in regs) == euler_char(t.surface)
    literal = all((r.cusps, r.punctures) in {(3, 0), (1, 1)} for r in regs)
    assert tt.is_maximal(t) == literal


def test_square_region_is_not_maximal():
    rng = np.random.default_rng(9)
    while True:
        t = tt.random_track(rng, 4, 2)
        if t is not None and any(r.cusps == 4 for r in tt.regions(t)):
            break
    assert not tt.is_maximal(t)
