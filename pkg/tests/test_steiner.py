import random

import pytest
from hypothesis import given, settings, strategies as st

from hexdom import generators as gen
from hexdom.plane_graph import build
from hexdom.steiner import (
    DegreeTooHigh,
    DisconnectedTerminals,
    SteinerTree,
    TooManyTerminals,
    approx_steiner_tree,
    clean_paths,
    deficiency_set,
    longest_clean_path,
    min_steiner_tree,
)
from oracles import adjacency_sets, brute_steiner_size, floyd_warshall, induced_connected


def path_tree(vs, terminals):
    edges = frozenset((min(a, b), max(a, b)) for a, b in zip(vs, vs[1:]))
    return SteinerTree(frozenset(vs), edges, frozenset(terminals))


def test_deficiency_sets():
    assert deficiency_set(gen.octahedron()) == frozenset(range(6))
    g = gen.geodesic_sphere(3)
    U = deficiency_set(g)
    assert len(U) == 12 and all(g.degree(v) == 5 for v in U)
    b = gen.band_graph(4)
    assert {b.degree(v) for v in deficiency_set(b)} == {4} and len(deficiency_set(b)) == 6


def test_deficiency_rejects_high_degree():
    with pytest.raises(DegreeTooHigh):
        deficiency_set(gen.mt_family(3))


def test_two_terminals_give_shortest_path():
    g = gen.geodesic_sphere(3)
    fw = floyd_warshall(g)
    rng = random.Random(5)
    for _ in range(10):
        a, b = rng.sample(range(g.n), 2)
        t = min_steiner_tree(g, [a, b])
        assert t.size == fw[a][b] + 1 and t.is_tree()
        assert t.leaves() == sorted([a, b])


def test_three_apices_match_median_formula(gs4):
    # with three terminals an optimal tree is three geodesics meeting at one vertex
    fw = floyd_warshall(gs4)
    U = sorted(deficiency_set(gs4))
    a = U[0]
    b = max(U, key=lambda v: fw[a][v])
    c = max(U, key=lambda v: min(fw[a][v], fw[b][v]))
    best = min(fw[a][v] + fw[b][v] + fw[c][v] for v in range(gs4.n)) + 1
    assert min_steiner_tree(gs4, [a, b, c]).size == best


@pytest.mark.parametrize("name", ["octahedron", "icosahedron", "hex2", "band3"])
def test_matches_brute_force(name):
    g = {"octahedron": gen.octahedron(), "icosahedron": gen.icosahedron(), "hex2": gen.hex_patch(2), "band3": gen.band_graph(3)}[name]
    rng = random.Random(11)
    for _ in range(12):
        U = rng.sample(range(g.n), rng.randint(2, min(5, g.n)))
        t = min_steiner_tree(g, U)
        assert t.is_tree() and set(U) <= t.vertices
        assert t.size == brute_steiner_size(g, U, max_extra=8)


def test_connected_terminals_span_themselves():
    g = gen.hex_patch(2)
    U = [0, *g.rotations[0][:3]]
    assert induced_connected(adjacency_sets(g), set(U))
    assert min_steiner_tree(g, U).vertices == frozenset(U)


def test_deficiency_tree_on_geodesic_is_tree():
    for m in (2, 3, 4):
        g = gen.geodesic_sphere(m)
        t = min_steiner_tree(g, deficiency_set(g))
        assert t.is_tree() and t.exact and deficiency_set(g) <= t.vertices
        assert all(t.degree(v) >= 1 for v in t.vertices)
        # leaves are always terminals in a minimum tree
        assert set(t.leaves()) <= deficiency_set(g)


def test_too_many_terminals():
    g = gen.hex_patch(3)
    with pytest.raises(TooManyTerminals):
        min_steiner_tree(g, range(13))
    t = min_steiner_tree(g, range(13), allow_approx=True)
    assert not t.exact and t.is_tree()


def test_disconnected():
    g = build(4, [[1], [0], [3], [2]])
    with pytest.raises(DisconnectedTerminals):
        min_steiner_tree(g, [0, 2])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 6))
def test_approx_within_factor_two(seed, k):
    g = gen.geodesic_sphere(2)
    U = random.Random(seed).sample(range(g.n), k)
    exact = min_steiner_tree(g, U)
    approx = approx_steiner_tree(g, U)
    assert approx.is_tree() and set(U) <= approx.vertices
    assert exact.size <= approx.size <= 2 * exact.size


def test_clean_path_of_a_path():
    t = path_tree([4, 7, 2, 9, 5], [4, 5])
    cp = longest_clean_path(t)
    assert cp.path == (4, 7, 2, 9, 5) and cp.middle == 2 and cp.length == 4


def test_clean_path_of_a_star():
    # branches of lengths 2, 3 and 5 from centre 0
    arms = [[0, 1, 2], [0, 3, 4, 5], [0, 6, 7, 8, 9, 10]]
    edges = frozenset((min(a, b), max(a, b)) for arm in arms for a, b in zip(arm, arm[1:]))
    verts = frozenset(v for arm in arms for v in arm)
    t = SteinerTree(verts, edges, frozenset([2, 5, 10]))
    assert sorted(len(p) - 1 for p in clean_paths(t)) == [2, 3, 5]
    cp = longest_clean_path(t)
    assert set(cp.path) == {0, 6, 7, 8, 9, 10} and cp.length == 5


def test_clean_path_of_an_edge():
    cp = longest_clean_path(path_tree([3, 8], [3, 8]))
    assert cp.length == 1 and cp.middle in (3, 8)


def test_clean_paths_partition_edges():
    for m in (3, 4):
        g = gen.geodesic_sphere(m)
        t = min_steiner_tree(g, deficiency_set(g))
        ps = clean_paths(t)
        used = [frozenset(e) for p in ps for e in zip(p, p[1:])]
        assert len(used) == len(set(used)) == len(t.edges)
        cp = longest_clean_path(t)
        assert t.size <= 21 * cp.length + 1
