import math
from fractions import Fraction

import pytest

from hexdom import generators as gen
from hexdom.generators import CylinderSpec
from hexdom.marginal import next_layer
from hexdom.pipeline import (
    CaseContradiction,
    Frame,
    InvalidInput,
    PipelineOptions,
    find_c0,
    grow_cylinder,
    hexagon_radius,
    label_cylinder,
    layer_beside,
    quarter_dominating_set,
)
from hexdom.plane_graph import bfs
from hexdom.steiner import deficiency_set
from oracles import dominates


@pytest.fixture(scope="module")
def cyl6_60():
    return gen.cylinder_sphere(CylinderSpec(6, 60, 0))


def middle_vertex(spec):
    return spec.vertex(0, spec.ell // 2)


def test_frame_walk_closes_around_a_hexagon(gs4):
    x = max(range(gs4.n), key=lambda v: bfs(gs4, deficiency_set(gs4)).dist[v])
    f = Frame(x, 0)
    ring = []
    cur = f.step(gs4, 0)
    for j in (2, 3, 4, 5, 0, 1):
        ring.append(cur.vertex)
        cur = cur.step(gs4, j)
    assert sorted(ring) == sorted(gs4.rotations[x])
    assert cur == f.step(gs4, 0)


def test_hexagon_radius_degree5_neighbor():
    # the wheel around x is still a hexagon; the degree-5 neighbor spoils the next ball
    g = gen.geodesic_sphere(3)
    apex = min(deficiency_set(g))
    x = g.rotations[apex][0]
    hx = hexagon_radius(g, x)
    assert hx.radius == 2 and "degree 5" in hx.reason
    assert hexagon_radius(g, apex).radius == 1


def test_hexagon_radius_bounded_by_distance_to_apices():
    g = gen.geodesic_sphere(8)
    U = deficiency_set(g)
    d = bfs(g, U).dist
    for x in sorted(range(g.n), key=lambda v: -d[v])[:5]:
        hx = hexagon_radius(g, x)
        assert 1 <= hx.radius <= d[x] + 1
        # every charted point within the hexagon is a distinct vertex
        inner = [hx.chart[p].vertex for p in hx.chart if max(abs(p[0]), abs(p[1]), abs(p[0] - p[1])) < hx.radius]
        assert len(inner) == len(set(inner))


def test_hexagon_radius_on_cylinder(cyl6_60):
    hx = hexagon_radius(cyl6_60, middle_vertex(CylinderSpec(6, 60, 0)))
    assert hx.radius == 3


def test_c0_untwisted(cyl6_60):
    spec = CylinderSpec(6, 60, 0)
    c0 = find_c0(cyl6_60, hexagon_radius(cyl6_60, middle_vertex(spec)))
    assert len(c0.cycle) == 6 and c0.turns == (0, 0) and c0.case == 3
    rows = {spec.label(v)[1] for v in c0.cycle}
    assert len(rows) == 1


@pytest.mark.parametrize("w, ell, k", [(6, 60, 3), (5, 30, 2), (4, 40, 1)])
def test_c0_twisted_has_turn_pair(w, ell, k):
    spec = CylinderSpec(w, ell, k)
    g = gen.cylinder_sphere(spec)
    c0 = find_c0(g, hexagon_radius(g, middle_vertex(spec)))
    assert len(c0.cycle) == w and c0.turns == (1, 1)


def test_c0_contradiction_on_geodesic():
    g = gen.geodesic_sphere(3)
    d = bfs(g, deficiency_set(g)).dist
    x = max(range(g.n), key=lambda v: d[v])
    with pytest.raises(CaseContradiction):
        find_c0(g, hexagon_radius(g, x))


@pytest.mark.parametrize("w, k", [(5, 0), (6, 2), (4, 3)])
def test_layer_beside_matches_next_layer(w, k):
    spec = CylinderSpec(w, 12, k)
    g = gen.cylinder_sphere(spec)
    ring = [spec.vertex(a, 5) for a in range(w)]
    for right in (True, False):
        seq = layer_beside(g, ring, right)
        assert seq is not None
        # next_layer wants the face on the far side of the layer
        probe = ring if right else ring[::-1]
        outer = g.face_of_dart[(probe[1], probe[0])]
        nl = next_layer(g, probe, outer)
        assert set(seq) == nl.layer.layer


def test_grow_and_label_recover_spec():
    for w, ell, k in ((6, 30, 0), (5, 30, 2), (6, 40, 5)):
        spec = CylinderSpec(w, ell, k)
        g = gen.cylinder_sphere(spec)
        c0 = find_c0(g, hexagon_radius(g, middle_vertex(spec)))
        grown = grow_cylinder(g, c0.cycle)
        found, zmap = label_cylinder(g, grown)
        # read from the other end, twist k shows up as w - k
        assert found.w == w and found.k in (k, (w - k) % w)
        assert found.ell >= ell - 2
        for e in found.edges():
            x, y = (zmap[found.label(v)] for v in e)
            assert g.has_edge(x, y)


def test_branch1_on_geodesic5():
    g = gen.geodesic_sphere(5)
    res, rep = quarter_dominating_set(g, PipelineOptions(force_branch=1))
    assert rep.branch1 is not None
    assert dominates(g, rep.branch1.vertices)
    assert rep.branch1.size <= Fraction(g.n, 7) + Fraction(8 * rep.tree_size, 7) - Fraction(2, 7)
    assert dominates(g, res.vertices)


def test_branch2_forced_on_cylinder(cyl6_60):
    res, rep = quarter_dominating_set(cyl6_60, PipelineOptions(force_branch=2))
    assert rep.branch == "cylinder"
    w, ell, k = rep.cylinder
    assert w == 6 and k == 0
    assert 2 * rep.hexagon_radius in (w, w + 1)
    assert dominates(cyl6_60, res.vertices)
    assert res.size <= math.ceil(ell / 7) * (w + 2) + cyl6_60.n - w * (ell - 1)


def test_octahedron_falls_back():
    res, rep = quarter_dominating_set(gen.octahedron())
    assert rep.branch == "fallback" and res.size == 2 and res.valid


def test_geodesic3_contradiction_leads_to_fallback():
    g = gen.geodesic_sphere(3)
    res, rep = quarter_dominating_set(g, PipelineOptions(force_branch=2))
    assert rep.branch == "fallback"
    assert rep.branch2_error and "CaseContradiction" in rep.branch2_error
    assert dominates(g, res.vertices)


def test_rejects_bad_input():
    with pytest.raises(InvalidInput):
        quarter_dominating_set(gen.triangle())
    with pytest.raises(InvalidInput):
        quarter_dominating_set(gen.mt_family(3))


def test_report_json_is_plain(cyl6_60):
    import json

    _, rep = quarter_dominating_set(cyl6_60, PipelineOptions(force_branch=2))
    text = json.dumps(rep.to_json(), sort_keys=True)
    assert json.loads(text)["branch"] == "cylinder"
