import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvequot.errors import (
    CapExceeded,
    DisconnectedInput,
    GraphInvalid,
    NotAutomorphism,
    UnknownVertex,
)
from curvequot.graphcore import (
    Cone,
    Graph,
    HalfDistance,
    SubsetFamily,
    VertexMap,
    count_parallel_translates,
    delta_four_point,
    distance,
    electrify,
    nearest_point_projection,
    parse_graph,
    projection_diameter,
    quasiconvexity_constant,
    translation_growth,
    wpd_census,
)
from graphs import cycle, fam, path, random_tree, symmetric_graph
import oracles


def v(*ix):
    return {f"v{i}" for i in ix}


# electrify / distance


def test_path_fully_coned():
    eg = electrify(path(5), fam(range(5)))
    assert eg.distance("v0", "v4").half == 2


def test_empty_family_keeps_distances():
    g = cycle(7)
    eg = electrify(g, SubsetFamily([]))
    assert (eg.distance_matrix(g.vertices) == g.distance_matrix()).all()


def test_c8_two_members():
    g = cycle(8)
    eg = electrify(g, fam([0, 1, 2], [4, 5, 6]))
    assert eg.distance("v0", "v4").half == 6
    G = oracles.nx_graph(g.vertices, g.edges, [v(0, 1, 2), v(4, 5, 6)])
    assert oracles.half_distances(G, ["v0"])["v0"]["v4"] == 6


def test_distance_basics():
    g = path(5)
    assert distance(g, "v2", "v2").half == 0
    assert distance(g, "v0", "v4").half == 8
    assert distance(g, "v0", "v4").length == 4


def test_unknown_vertex():
    with pytest.raises(UnknownVertex):
        distance(path(3), "v0", "nope")
    with pytest.raises(UnknownVertex):
        electrify(path(3), SubsetFamily([["v0", "zz"]]))


def test_unreachable_and_cap_are_distinct():
    g = Graph(["a", "b", "c"], [("a", "b")])
    assert distance(g, "a", "c").status == HalfDistance.UNREACHABLE
    assert distance(path(5), "v0", "v4", radius_cap=4).status == HalfDistance.CAP_EXCEEDED
    assert distance(path(5), "v0", "v4", radius_cap=8).half == 8


def test_graph_invariants_enforced():
    with pytest.raises(GraphInvalid):
        Graph(["a"], [("a", "a")])
    with pytest.raises(GraphInvalid):
        Graph(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(GraphInvalid):
        SubsetFamily([[]])


def test_cones_are_new_vertices():
    eg = electrify(cycle(5), fam([0, 1], [0, 1]))
    assert eg.cones == (Cone(0, None), Cone(1, None))
    assert set(eg.base.vertices).isdisjoint(eg.cones)
    assert eg.base.edges == cycle(5).edges


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_electrified_distances_match_networkx(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 25))
    vs = list(range(n))
    edges = {(int(a), int(b)) for a, b in rng.integers(0, n, size=(2 * n, 2)) if a < b}
    members = [set(int(x) for x in rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False))
               for _ in range(int(rng.integers(0, 4)))]
    g = Graph(vs, sorted(edges))
    eg = electrify(g, SubsetFamily(members))
    want = oracles.half_distances(oracles.nx_graph(vs, edges, members), vs)
    D = eg.distance_matrix(vs)
    for i in vs:
        for j in vs:
            assert D[i, j] == want[i].get(j, -1)


def test_base_distances_even():
    rng = np.random.default_rng(3)
    g = random_tree(rng, 20)
    D = g.distance_matrix()
    assert (D % 2 == 0).all()


# four point


def test_tree_delta_zero():
    rng = np.random.default_rng(0)
    for _ in range(10):
        assert delta_four_point(random_tree(rng, int(rng.integers(4, 25)))) == 0


def test_c4_delta_brute_force():
    g = cycle(4)
    D = g.distance_matrix()
    Dd = {a: {b: int(D[i, j]) for j, b in enumerate(g.vertices)} for i, a in enumerate(g.vertices)}
    assert delta_four_point(g) == oracles.four_point_brute(Dd, g.vertices) == 2


@pytest.mark.parametrize("n", [5, 6, 9, 12])
def test_cycle_delta_brute_force(n):
    g = cycle(n)
    D = g.distance_matrix()
    Dd = {a: {b: int(D[i, j]) for j, b in enumerate(g.vertices)} for i, a in enumerate(g.vertices)}
    assert delta_four_point(g) == oracles.four_point_brute(Dd, g.vertices)


def test_explicit_quadruples_and_sampling_are_deterministic():
    g = cycle(80)
    quads = [("v0", "v20", "v40", "v60")]
    assert delta_four_point(g, quads) == 40
    a = delta_four_point(g, samples=500, seed=4)
    assert a == delta_four_point(g, samples=500, seed=4)
    assert 0 <= a <= 40


def test_delta_disconnected():
    with pytest.raises(DisconnectedInput):
        delta_four_point(Graph(["a", "b", "c", "d"], [("a", "b")]))


def test_delta_returns_fraction():
    assert isinstance(delta_four_point(cycle(6)), Fraction)


# quasiconvexity and projections


def test_geodesic_in_path_is_quasiconvex():
    assert quasiconvexity_constant(path(6), ["v1", "v2", "v3", "v4"]) == 0


def test_c8_antipodes():
    assert quasiconvexity_constant(cycle(8), ["v0", "v4"]) == 4


@pytest.mark.parametrize("subset", [["v0", "v3"], ["v0", "v4", "v6"], ["v1", "v5"]])
def test_quasiconvexity_against_path_listing(subset):
    g = cycle(10)
    G = oracles.nx_graph(g.vertices, g.edges)
    assert quasiconvexity_constant(g, subset) == oracles.all_geodesics_max_gap(G, subset)


def test_quasiconvexity_cap():
    with pytest.raises(CapExceeded):
        quasiconvexity_constant(path(6), ["v0", "v5"], radius_cap=4)


def test_projection_examples():
    assert nearest_point_projection(path(5), v(0, 1, 2, 3, 4), {"v3"}) == v(3)
    assert nearest_point_projection(cycle(6), v(0, 1), v(0)) == v(0)
    # brute-force distance table: v0 and v2 are both at distance 3 from v5, v1 at 4
    assert nearest_point_projection(cycle(8), v(0, 1, 2), v(5)) == v(0, 2)


def test_projection_diameter_examples():
    g = cycle(8)
    assert projection_diameter(g, v(0, 1, 2, 3), v(6)).half == 0
    assert projection_diameter(g, v(0, 1, 2, 3), v(5, 7)).half == 6
    assert projection_diameter(path(4), v(0, 1), v(3)).half == 0


def test_projection_disconnected():
    g = Graph(["a", "b", "c"], [("a", "b")])
    with pytest.raises(DisconnectedInput):
        nearest_point_projection(g, {"a"}, {"c"})


# maps and WPD


def rotation(n, s=1):
    return VertexMap({f"v{i}": f"v{(i + s) % n}" for i in range(n)}, label=f"rot{s}")


def test_rotation_is_automorphism_and_bad_map_is_not():
    rotation(8).validate(cycle(8))
    swap = VertexMap({"v0": "v1", "v1": "v0", "v2": "v2", "v3": "v3", "v4": "v4"})
    with pytest.raises(NotAutomorphism):
        swap.validate(cycle(5))


def test_identity_census():
    g = cycle(8)
    ident = VertexMap.identity(g)
    assert wpd_census(g, [ident], rotation(8), "v0", 2, 3).count == 1
    assert wpd_census(g, [ident], rotation(8), "v0", 0, 3).count == 0


def test_census_monotone_in_r():
    g = cycle(12)
    maps = [rotation(12, s) for s in range(12)]
    counts = [wpd_census(g, maps, rotation(12), "v0", r, 2).count for r in range(0, 14, 2)]
    assert counts == sorted(counts)
    assert counts[:3] == [0, 1, 3]


def test_parallel_translates():
    g = cycle(8)
    assert count_parallel_translates(g, SubsetFamily([]), "v0", "v4", 4) == 0
    twice = SubsetFamily([["v2"], ["v2"]])
    assert count_parallel_translates(g, twice, "v0", "v4", 5) == 1
    four = fam([0, 1], [2, 3], [4, 5], [6, 7])
    # brute force: a member counts when some vertex is closer than 2 half-units to v0 and some to v4
    assert count_parallel_translates(g, four, "v0", "v4", 2) == 0
    assert count_parallel_translates(g, four, "v0", "v4", 3) == 0
    assert count_parallel_translates(g, four, "v0", "v4", 5) == 2


def test_translation_growth():
    g = cycle(8)
    assert translation_growth(g, VertexMap.identity(g), "v0", 3) == [(1, 0), (2, 0), (3, 0)]
    seq = [d for _, d in translation_growth(g, rotation(8), "v0", 12)]
    assert max(seq) == 8


def test_automorphisms_are_isometries_on_electrification():
    rng = np.random.default_rng(11)
    g, f = symmetric_graph(rng, 4, 5)
    phi = VertexMap.from_function(g, f)
    phi.validate(g)
    base = {(0, 0), (1, 2)}
    fam_ = SubsetFamily([{(o, (i + s) % 5) for o, i in base} for s in range(5)])
    eg = electrify(g, fam_)
    psi = phi.on_electrification(eg)
    psi.validate(eg)
    D = eg.distance_matrix()
    img = [eg.index(psi(u)) for u in eg.vertices]
    assert (D == D[np.ix_(img, img)]).all()


def test_non_equivariant_family_rejected():
    g = cycle(6)
    eg = electrify(g, fam([0, 1]))
    with pytest.raises(NotAutomorphism):
        rotation(6).on_electrification(eg)


# io


def test_parse_roundtrip():
    text = json.dumps({"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]],
                       "families": [{"label": "Y", "members": ["a", "c"]}]})
    g, f = parse_graph(text)
    assert g.distance("a", "c").half == 4
    assert f.labels == ("Y",)


def test_parse_errors_carry_lines():
    text = '{\n "vertices": ["a", "b"],\n "edges": [\n  ["a", "zz"]\n ]\n}'
    with pytest.raises(GraphInvalid, match=r"g.json:4:"):
        parse_graph(text, "g.json")
    with pytest.raises(GraphInvalid, match=r"g.json:2:"):
        parse_graph('{"vertices": [],\n "edges": [}', "g.json")
