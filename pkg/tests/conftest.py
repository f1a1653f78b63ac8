from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from delforge import (
    BallQuery,
    DelaunayInstance,
    Lattice,
    automorphisms,
    certify_extreme,
    construct_cross_polytope,
    construct_half_cube,
    construct_pn,
    verify_delaunay,
)
from delforge.exactlin import matrix, rank


def segment_instance() -> DelaunayInstance:
    return DelaunayInstance(
        label="segment",
        dim=1,
        form=[[1]],
        lattice=Lattice(1, [[1]]),
        vertices=[(0,), (1,)],
    )


@pytest.fixture(scope="session")
def segment():
    return segment_instance()


@pytest.fixture(scope="session")
def pipeline_cache():
    """Lazily computed full pipelines, shared across the whole test run.

    Wall-clock times are recorded at first computation so the acceptance
    tests can assert runtime budgets even when other tests warmed the cache.
    """
    cache: dict[int, dict] = {}

    def get(n: int) -> dict:
        if n not in cache:
            entry: dict = {}
            t0 = time.monotonic()
            inst = construct_pn(n)
            sphere = verify_delaunay(inst)
            ext = certify_extreme(inst, sphere=sphere)
            sym = automorphisms(inst)
            entry["elapsed"] = time.monotonic() - t0
            entry["instance"] = inst
            entry["sphere"] = sphere
            entry["extremality"] = ext
            entry["symmetry"] = sym
            cache[n] = entry
        return cache[n]

    return get


@pytest.fixture(scope="session")
def p6(pipeline_cache):
    return pipeline_cache(6)["instance"]


@pytest.fixture(scope="session")
def p8(pipeline_cache):
    return pipeline_cache(8)["instance"]


@pytest.fixture(scope="session")
def half_cube_5():
    return construct_half_cube(5)


@pytest.fixture(scope="session")
def cross_4():
    return construct_cross_polytope(4)


def random_enum_case(rng: random.Random) -> tuple[Lattice, BallQuery]:
    """One random full-rank lattice with a random definite ball."""
    dim = rng.randint(1, 4)
    while True:
        basis = [[Fraction(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(dim)]
        if rank(matrix(basis)) == dim:
            break
    lat = Lattice(dim, basis)
    # random positive definite form: A^T A plus a positive diagonal bump
    a = [[Fraction(rng.randint(-1, 1)) for _ in range(dim)] for _ in range(dim)]
    form = [
        [
            sum(a[k][i] * a[k][j] for k in range(dim))
            + (Fraction(rng.randint(1, 2)) if i == j else 0)
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    center = [Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3])) for _ in range(dim)]
    radius_sq = Fraction(rng.randint(-1, 8), rng.choice([1, 2]))
    return lat, BallQuery(form, center, radius_sq)


def sufficient_box(lat: Lattice, query: BallQuery) -> int:
    """Coefficient box certified to contain every ball point.

    A point with coefficients x satisfies (x - y)^T G (x - y) <= r^2 for
    G the Gram matrix of the basis under the form and y the coefficients of
    the center, so |x_i - y_i|^2 <= r^2 (G^{-1})_{ii} (the axis-aligned
    bounding box of the ellipsoid).  Everything is computed exactly; the
    square root is over-approximated upward.
    """
    from delforge.exactlin import dot, invert, isqrt_floor, vec_mat
    from delforge.lattice import coordinates

    if query.radius_sq < 0:
        return 1
    basis = lat.basis
    bq = [vec_mat(row, query.form) for row in basis]
    gram = matrix([[dot(bq[i], basis[j]) for j in range(lat.dim)] for i in range(lat.dim)])
    inv = invert(gram)
    y = coordinates(lat, query.center)
    box = 0
    for i in range(lat.dim):
        dev_sq = query.radius_sq * inv[i][i]
        dev = isqrt_floor(int(dev_sq)) + 2
        box = max(box, int(abs(y[i])) + dev + 1)
    return box
