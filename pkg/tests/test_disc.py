import itertools

import pytest

from oracles import incident_triangles
from systolic_kit.complex import SimplicialComplex
from systolic_kit.disc import (
    TriangulatedDisc,
    TriangulatedSphere,
    defects,
    embed_in_hex_plane,
    gauss_bonnet,
    is_flat,
    lattice_distance,
)
from systolic_kit.errors import InvalidInput
from systolic_kit.gen import (
    hex_disc,
    hex_hexagon,
    hex_triangle,
    octahedron,
    random_disc,
    seven_systolic_disc,
    tetrahedron_boundary,
)
from systolic_kit.metric import distance_matrix

# two boundary vertices 0 and 1, adjacent, each in four triangles
DOUBLE_FAN = SimplicialComplex.from_simplices(
    [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (1, 2, 6), (1, 6, 7), (1, 7, 8)]
)


def disc(inst):
    return TriangulatedDisc.from_complex(inst.complex)


def test_single_triangle():
    D = disc(hex_triangle(1))
    assert defects(D).defect == (2, 2, 2)
    assert gauss_bonnet(D) == (6, 6)
    assert embed_in_hex_plane(D) == {0: (0, 0), 1: (1, 0), 2: (0, 1)}


def test_wheel_defects():
    inst = hex_hexagon(1)
    dv = defects(disc(inst)).defect
    centre = inst.coordinates.index((0, 0))
    assert dv[centre] == 0
    assert all(dv[v] == 1 for v in range(7) if v != centre)


def test_hex3_defects():
    inst = hex_triangle(3)
    D = disc(inst)
    dv = defects(D).defect
    chi = incident_triangles(inst.complex.maximal_simplices, 10)
    assert defects(D).triangle_count == tuple(chi)
    corners = {0, 3, 9}
    assert D.interior_vertices == {5}
    for v in range(10):
        assert dv[v] == (2 if v in corners else 0)


def test_tetrahedron_sphere():
    S = TriangulatedSphere.from_complex(tetrahedron_boundary().complex)
    assert defects(S).defect == (3, 3, 3, 3)
    assert gauss_bonnet(S) == (12, 12)


def test_octahedron_sphere():
    S = TriangulatedSphere.from_complex(octahedron().complex)
    assert gauss_bonnet(S) == (12, 12)


def test_defects_reject_non_disc():
    with pytest.raises(InvalidInput):
        defects(octahedron().complex)
    with pytest.raises(InvalidInput):
        TriangulatedDisc.from_complex(octahedron().complex)


@pytest.mark.parametrize("seed", range(10))
def test_gauss_bonnet_on_random_discs(seed):
    D = disc(random_disc(25, interior_defect=(-3, 3), seed=seed))
    lhs, rhs = gauss_bonnet(D)
    assert lhs == rhs == 6


@pytest.mark.parametrize(
    "inst",
    [hex_triangle(2), hex_triangle(4), hex_hexagon(2), hex_disc("parallelogram", a=3, b=2)],
)
def test_hex_regions_are_flat(inst):
    D = disc(inst)
    assert is_flat(D)
    assert embed_in_hex_plane(D) is not None


def test_degree_seven_interior_is_not_flat():
    D = disc(seven_systolic_disc(7, 1))
    assert not is_flat(D)
    assert embed_in_hex_plane(D) is None


def test_adjacent_negative_boundary_vertices_not_flat():
    D = TriangulatedDisc.from_complex(DOUBLE_FAN)
    dv = defects(D).defect
    assert dv[0] == dv[1] == -1
    assert not D.interior_vertices
    assert not is_flat(D)
    assert embed_in_hex_plane(D) is None


def test_hex2_embedding_is_identity():
    inst = hex_triangle(2)
    pos = embed_in_hex_plane(disc(inst))
    assert [pos[v] for v in range(6)] == inst.coordinates


def test_embedding_is_isometric():
    for inst in (hex_triangle(3), hex_hexagon(2)):
        X = inst.complex
        pos = embed_in_hex_plane(disc(inst))
        D = distance_matrix(X)
        for u, v in itertools.combinations(range(X.vertex_count), 2):
            assert lattice_distance(pos[u], pos[v]) == D[u, v]


def test_flat_random_discs_embed():
    # interior defects pinned to zero: every sample is flat in the interior
    for seed in range(5):
        inst = random_disc(12, interior_defect=(0, 0), boundary_defect_min=-1, seed=seed)
        D = disc(inst)
        assert all(defects(D).defect[v] == 0 for v in D.interior_vertices)
        assert is_flat(D) == (embed_in_hex_plane(D) is not None)
