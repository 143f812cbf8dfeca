import pytest
from hypothesis import given, settings, strategies as st

from hexdom import generators as gen
from hexdom.generators import CylinderSpec, NonManifoldFaces, SpecOutOfRange, from_faces
from hexdom.marginal import OrientedWalk
from hexdom.plane_graph import faces, is_sphere_triangulation


def deficiency(g):
    return sum(6 - g.degree(v) for v in range(g.n))


def test_octahedron():
    g = gen.octahedron()
    assert (g.n, g.edge_count(), len(faces(g))) == (6, 12, 8)
    assert g.degree_histogram() == {4: 6}


def test_geodesic_small():
    g1 = gen.geodesic_sphere(1)
    assert g1.n == 12 and g1.degree_histogram() == {5: 12}
    g2 = gen.geodesic_sphere(2)
    assert g2.n == 42 and g2.degree_histogram() == {5: 12, 6: 30}


@pytest.mark.parametrize("m", range(1, 7))
def test_geodesic_counts(m):
    g = gen.geodesic_sphere(m)
    assert g.n == 10 * m * m + 2
    assert is_sphere_triangulation(g)
    assert deficiency(g) == 12


def test_band1_is_octahedron():
    g = gen.band_graph(1)
    assert g.n == 6 and g.degree_histogram() == {4: 6}
    # the only 4-regular graph on 6 vertices: complement is a perfect matching
    non_edges = [(u, v) for u in range(6) for v in range(u + 1, 6) if not g.has_edge(u, v)]
    assert len(non_edges) == 3 and len({x for e in non_edges for x in e}) == 6


@pytest.mark.parametrize("k", range(1, 7))
def test_band_structure(k):
    g = gen.band_graph(k)
    assert g.n == 6 * k
    assert is_sphere_triangulation(g)
    hist = g.degree_histogram()
    assert hist.get(4) == 6 and set(hist) <= {4, 6}


def test_band3_histogram():
    assert gen.band_graph(3).degree_histogram() == {4: 6, 6: 12}


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_mt_family(m):
    g = gen.mt_family(m)
    assert g.n == 4 * m
    assert is_sphere_triangulation(g)
    for t in range(m):
        inner = 4 * t + 3
        assert g.degree(inner) == 3
        assert set(g.rotations[inner]) == {4 * t, 4 * t + 1, 4 * t + 2}


def test_hex_patch_sizes():
    assert gen.hex_patch(0).n == 1
    g1 = gen.hex_patch(1)
    assert g1.n == 7 and g1.degree(0) == 6
    g3 = gen.hex_patch(3)
    assert g3.n == 37
    assert max(len(f) for f in faces(g3)) == 18


def test_hex_patch_coordinates_are_lattice_ball():
    from hexdom.lattice import ball

    assert sorted(gen.hex_patch_coords(3)) == sorted(ball(3))


def ring_census(g, spec, b):
    ring = [spec.vertex(a, b) for a in range(spec.w)]
    return OrientedWalk(g, tuple(ring), True).turn_census()


def test_untwisted_cylinder_rings_have_no_turns():
    spec = CylinderSpec(5, 9, 0)
    g = gen.cylinder_patch(spec)
    assert g.n == 50
    for b in range(1, spec.ell):
        assert ring_census(g, spec, b) == (0, 0)


def test_twisted_cylinder_rings_have_a_turn_pair():
    spec = CylinderSpec(6, 9, 2)
    g = gen.cylinder_patch(spec)
    for b in range(1, spec.ell):
        assert ring_census(g, spec, b) == (1, 1)


def test_cylinder_sphere_counts():
    g = gen.cylinder_sphere(CylinderSpec(6, 20, 0))
    assert g.n == 6 * 21 + 2
    assert deficiency(g) == 12
    assert is_sphere_triangulation(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 6), st.integers(1, 25), st.data())
def test_cylinder_sphere_always_valid(w, ell, data):
    k = data.draw(st.integers(0, w - 1))
    g = gen.cylinder_sphere(CylinderSpec(w, ell, k))
    assert g.n == w * (ell + 1) + 2
    assert is_sphere_triangulation(g)
    assert g.max_degree() <= 6
    interior = [CylinderSpec(w, ell, k).vertex(a, b) for a in range(w) for b in range(1, ell)]
    assert all(g.degree(v) == 6 for v in interior)


def test_spec_ranges():
    with pytest.raises(SpecOutOfRange):
        CylinderSpec(2, 5, 0)
    with pytest.raises(SpecOutOfRange):
        CylinderSpec(5, 5, 5)
    with pytest.raises(SpecOutOfRange):
        gen.cylinder_sphere(CylinderSpec(7, 5, 0))


def test_from_faces_rejects_nonmanifold():
    # three triangles on one edge
    with pytest.raises(NonManifoldFaces):
        from_faces(5, [(0, 1, 2), (0, 1, 3), (0, 1, 4)])
