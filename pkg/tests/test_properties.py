"""Randomised comparisons against the brute-force oracles."""
import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from oracles import (
    adjacency,
    all_shortest_paths,
    all_simplices,
    bfs,
    naive_closure,
    naive_clique_simplices,
    naive_geodesically_convex,
    naive_link,
    naive_star,
    naive_witness,
)
from systolic_kit.complex import SimplicialComplex, clique_complex, closure, is_flag, link, star
from systolic_kit.disc import (
    TriangulatedDisc,
    TriangulatedSphere,
    embed_in_hex_plane,
    gauss_bonnet,
    is_flat,
)
from systolic_kit.gen import hex_hexagon, hex_triangle, random_disc, random_sphere, seven_systolic_disc
from systolic_kit.helly import ConvexFamily, find_witness
from systolic_kit.metric import Subcomplex, convex_hull, distance, interval, is_convex, is_geodesically_convex

FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
POOL = [hex_triangle(3).complex, hex_hexagon(2).complex, seven_systolic_disc(7, 2).complex]


@st.composite
def small_complexes(draw):
    n = draw(st.integers(3, 8))
    count = draw(st.integers(1, 7))
    faces = [
        draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=4, unique=True))
        for _ in range(count)
    ]
    used = sorted({v for f in faces for v in f})
    relabel = {v: i for i, v in enumerate(used)}
    return SimplicialComplex.from_simplices([[relabel[v] for v in f] for f in faces])


@FAST
@given(small_complexes(), st.data())
def test_star_closure_link_match_naive(X, data):
    simp = sorted(X.simplices)
    S = data.draw(st.lists(st.sampled_from(simp), min_size=1, max_size=3, unique=True))
    full = all_simplices(X.maximal_simplices)
    assert set(X.simplices) == full
    assert set(closure(X, S)) == naive_closure(S)
    assert set(star(X, S)) == naive_star(full, S)
    assert set(link(X, S)) == naive_link(full, S)


@FAST
@given(small_complexes())
def test_flag_iff_equal_to_clique_complex(X):
    cliques = naive_clique_simplices(X.simplices, X.vertex_count)
    assert is_flag(X) == (set(X.simplices) == cliques)
    assert set(clique_complex(X).simplices) == cliques


@FAST
@given(st.integers(6, 40), st.integers(0, 10**6))
def test_gauss_bonnet_on_random_discs(triangles, seed):
    D = TriangulatedDisc.from_complex(random_disc(triangles, interior_defect=(-3, 3), seed=seed).complex)
    total, six_chi = gauss_bonnet(D)
    assert total == six_chi == 6


@FAST
@given(st.integers(6, 30), st.integers(0, 10**6))
def test_gauss_bonnet_on_random_spheres(triangles, seed):
    S = TriangulatedSphere.from_complex(random_sphere(triangles, seed=seed).complex)
    assert gauss_bonnet(S) == (12, 12)


@FAST
@given(st.integers(4, 30), st.integers(0, 10**6), st.sampled_from([(0, 0), (-1, 0), (-2, 1)]))
def test_flat_iff_embeds(triangles, seed, band):
    D = TriangulatedDisc.from_complex(random_disc(triangles, interior_defect=band, seed=seed).complex)
    assert is_flat(D) == (embed_in_hex_plane(D) is not None)


@FAST
@given(st.sampled_from(range(len(POOL))), st.data())
def test_interval_matches_dfs(i, data):
    X = POOL[i]
    u = data.draw(st.integers(0, X.vertex_count - 1))
    v = data.draw(st.integers(0, X.vertex_count - 1))
    adj = adjacency(X.simplices, X.vertex_count)
    paths = all_shortest_paths(adj, u, v)
    dag = interval(X, u, v)
    assert distance(X, u, v) == bfs(adj, u)[v] == dag.length
    assert dag.count() == len(paths)
    assert sorted(tuple(g) for g in dag.geodesics()) == sorted(paths)


@FAST
@given(st.sampled_from(range(len(POOL))), st.data())
def test_convexity_matches_geodesic_closure(i, data):
    X = POOL[i]
    verts = data.draw(st.lists(st.integers(0, X.vertex_count - 1), min_size=1, max_size=6, unique=True))
    A = Subcomplex.induced(X, verts)
    adj = adjacency(X.simplices, X.vertex_count)
    expected = naive_geodesically_convex(adj, verts)
    assert is_geodesically_convex(A) == expected
    if A.is_connected():
        assert is_convex(A) == expected
    hull = convex_hull(X, verts).vertices
    assert set(verts) <= set(hull) and naive_geodesically_convex(adj, hull)


@FAST
@given(st.sampled_from(range(len(POOL))), st.data())
def test_witness_matches_naive(i, data):
    X = POOL[i]
    k = data.draw(st.integers(2, 4))
    members = []
    for _ in range(k):
        seed = data.draw(st.lists(st.integers(0, X.vertex_count - 1), min_size=1, max_size=3, unique=True))
        members.append(convex_hull(X, seed).vertices)
    fam = ConvexFamily.from_vertex_sets(X, members)
    w = find_witness(fam)
    assert (None if w is None else w.simplex) == naive_witness(X.simplices, members)
    if w is not None:
        assert all(set(w.simplex) & set(m) for m in members)
    pairwise = all(set(a) & set(b) for a, b in itertools.combinations(members, 2))
    if not pairwise:
        assert w is None or len(w.simplex) > 1
