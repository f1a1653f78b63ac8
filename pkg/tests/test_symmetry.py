import itertools
import math

import pytest

from conftest import segment_instance
from delforge import (
    automorphisms,
    construct_cross_polytope,
    construct_half_cube,
    distance_matrix,
    group_order,
)
from delforge.exactlin import matrix


def test_distance_matrix_two_points(segment):
    assert distance_matrix(segment) == matrix([[0, 1], [1, 0]])


@pytest.mark.parametrize("n,expected", [(6, 2), (8, 3)])
def test_distance_apex_to_middle_layer(n, expected, pipeline_cache):
    inst = pipeline_cache(n)["instance"]
    d = distance_matrix(inst)
    for j in range(1, 1 + 2 ** (n - 2)):
        assert d[0][j] == expected


def test_two_points_group(segment):
    report = automorphisms(segment)
    assert report.group_order == 2
    assert report.orbit_count == 1
    assert report.orbits == ((0, 1),)


def test_group_order_examples():
    assert group_order([(1, 0)], 2) == 2
    assert group_order([(1, 0, 2, 3), (1, 2, 3, 0)], 4) == 24
    assert group_order([(0, 1, 2)], 3) == 1
    assert group_order([], 5) == 1


def test_group_order_rejects_malformed_permutations():
    with pytest.raises(ValueError, match="malformed"):
        group_order([(0, 0)], 2)
    with pytest.raises(ValueError, match="malformed"):
        group_order([(1, 2)], 2)
    with pytest.raises(ValueError, match="malformed"):
        group_order([(0, 1, 2)], 2)


def test_group_order_symmetric_group_from_transposition_chain():
    gens = [tuple(range(7))[:i] + (i + 1, i) + tuple(range(7))[i + 2 :] for i in range(6)]
    assert group_order(gens, 7) == math.factorial(7)


def test_half_cube_4_matches_exhaustive_oracle():
    inst = construct_half_cube(4)
    d = distance_matrix(inst)
    m = len(inst.vertices)
    exhaustive = sum(
        1
        for p in itertools.permutations(range(m))
        if all(d[p[u]][p[v]] == d[u][v] for u in range(m) for v in range(u + 1, m))
    )
    report = automorphisms(inst)
    assert report.group_order == exhaustive
    # The 4-dimensional half-cube is congruent to a cross-polytope, so its
    # group is the full hyperoctahedral 2^4 4!, larger than the m! 2^{m-1}
    # pattern that starts at m = 5.
    assert report.group_order == 384


def test_half_cube_5_order_pinned():
    report = automorphisms(construct_half_cube(5))
    assert report.group_order == math.factorial(5) * 2**4 == 1920
    assert report.orbit_count == 1


@pytest.mark.parametrize(
    "n,expected_order,expected_orbits",
    [(6, 51840, 1), (8, math.factorial(7) * 2**6, 3)],
)
def test_pn_symmetry(n, expected_order, expected_orbits, pipeline_cache):
    report = pipeline_cache(n)["symmetry"]
    assert report.group_order == expected_order
    assert report.orbit_count == expected_orbits


def test_p8_orbit_sizes_are_the_layers(pipeline_cache):
    report = pipeline_cache(8)["symmetry"]
    assert sorted(len(o) for o in report.orbits) == [1, 14, 64]
    flat = sorted(i for orbit in report.orbits for i in orbit)
    assert flat == list(range(79))


@pytest.mark.parametrize("maker", [
    lambda: construct_half_cube(4),
    lambda: construct_half_cube(5),
    lambda: construct_cross_polytope(3),
    segment_instance,
])
def test_generators_preserve_distances(maker):
    inst = maker()
    d = distance_matrix(inst)
    report = automorphisms(inst)
    m = len(inst.vertices)
    for g in report.generators:
        assert sorted(g) == list(range(m))
        for u in range(m):
            for v in range(u + 1, m):
                assert d[g[u]][g[v]] == d[u][v]


def test_p6_generators_preserve_distances(pipeline_cache):
    inst = pipeline_cache(6)["instance"]
    report = pipeline_cache(6)["symmetry"]
    d = distance_matrix(inst)
    for g in report.generators:
        for u in range(27):
            for v in range(u + 1, 27):
                assert d[g[u]][g[v]] == d[u][v]


def test_automorphisms_requires_affine_span():
    from delforge import DelaunayInstance, Lattice
    from delforge.exactlin import identity_matrix

    z2 = Lattice(2, [[1, 0], [0, 1]])
    flat = DelaunayInstance("diag", 2, identity_matrix(2), z2, [(0, 0), (1, 1)])
    with pytest.raises(ValueError, match="affinely spanning"):
        automorphisms(flat)


def test_cross_polytope_group_is_hyperoctahedral():
    report = automorphisms(construct_cross_polytope(3))
    assert report.group_order == 2**3 * math.factorial(3)
    assert report.orbit_count == 1
