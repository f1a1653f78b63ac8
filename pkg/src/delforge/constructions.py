"""Builders for the concrete objects the toolkit certifies.

Covers the checkerboard lattice D_m with its two classical Delaunay families
(half-cube and cross-polytope, used as controls), and the three-layer vertex
family pn over its half-integral lattice L_n together with the metric
diag(1, ..., 1, (n-3)/4).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactlin import Matrix, Vector, ZERO, identity_matrix, is_symmetric, matrix, vector
from .lattice import Lattice, membership

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DelaunayInstance:
    """A vertex family with its ambient lattice and metric.

    Construction only checks shape (consistent dimensions, symmetric form,
    distinct vertices).  The mathematical claims, lattice membership, affine
    span, and the empty-sphere property, are the verifiers' job, so that
    tampered or hand-written instances load fine and get refuted rather than
    rejected.
    """

    label: str
    dim: int
    form: Matrix
    lattice: Lattice
    vertices: tuple[Vector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "form", matrix(self.form))
        object.__setattr__(self, "vertices", tuple(vector(v) for v in self.vertices))
        if self.dim < 1:
            raise ValueError("instance dimension must be positive")
        if len(self.form) != self.dim or any(len(r) != self.dim for r in self.form):
            raise ValueError("form must be a dim x dim matrix")
        if not is_symmetric(self.form):
            raise ValueError("form must be symmetric")
        if self.lattice.dim != self.dim:
            raise ValueError("lattice dimension does not match instance dimension")
        if not self.vertices:
            raise ValueError("instance needs at least one vertex")
        if any(len(v) != self.dim for v in self.vertices):
            raise ValueError("vertex dimension does not match instance dimension")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertices")


def _unit(m: int, j: int) -> Vector:
    return tuple(Fraction(1) if i == j else ZERO for i in range(m))


def standard_d_lattice(m: int) -> Lattice:
    """The integer vectors with even coordinate sum, index 2 in Z^m.

    Basis: e_1 + e_2 followed by e_i - e_{i+1} for i = 1..m-1 (determinant 2,
    fixed once for reproducible certificates).
    """
    if m < 2:
        raise ValueError("the even-sum lattice needs dimension at least 2")
    rows = [tuple(Fraction(int(i in (0, 1))) for i in range(m))]
    for i in range(m - 1):
        row = [ZERO] * m
        row[i] = Fraction(1)
        row[i + 1] = Fraction(-1)
        rows.append(tuple(row))
    return Lattice(m, tuple(rows))


def l_n_lattice(n: int) -> Lattice:
    """Lattice generated by D_{n-1} x {0} and the half-integral generator
    g = (1/2, ..., 1/2, 1)."""
    if n < 3:
        raise ValueError("the layered lattice needs dimension at least 3")
    d_basis = standard_d_lattice(n - 1).basis
    rows = [row + (ZERO,) for row in d_basis]
    rows.append((HALF,) * (n - 1) + (Fraction(1),))
    return Lattice(n, tuple(rows))


def half_cube_vertices(m: int) -> tuple[Vector, ...]:
    """Even-weight 0/1 vectors in lexicographic order (2^{m-1} of them)."""
    return tuple(
        tuple(Fraction(b) for b in bits)
        for bits in itertools.product(range(2), repeat=m)
        if sum(bits) % 2 == 0
    )


def construct_half_cube(m: int) -> DelaunayInstance:
    """Half-cube over the even-sum lattice with the identity form."""
    if m < 2:
        raise ValueError("half-cube needs dimension at least 2")
    return DelaunayInstance(
        label=f"half-cube-{m}",
        dim=m,
        form=identity_matrix(m),
        lattice=standard_d_lattice(m),
        vertices=half_cube_vertices(m),
    )


def construct_cross_polytope(m: int) -> DelaunayInstance:
    """Cross-polytope e_1 +/- e_i over the even-sum lattice (2m vertices;
    i = 1 contributes the origin and 2 e_1)."""
    if m < 2:
        raise ValueError("cross-polytope needs dimension at least 2")
    e1 = _unit(m, 0)
    verts = []
    for i in range(m):
        ei = _unit(m, i)
        verts.append(tuple(a + b for a, b in zip(e1, ei)))
        verts.append(tuple(a - b for a, b in zip(e1, ei)))
    return DelaunayInstance(
        label=f"cross-polytope-{m}",
        dim=m,
        form=identity_matrix(m),
        lattice=standard_d_lattice(m),
        vertices=tuple(verts),
    )


def pn_form(n: int) -> Matrix:
    """diag(1, ..., 1, (n-3)/4)."""
    entries = [Fraction(1)] * (n - 1) + [Fraction(n - 3, 4)]
    return tuple(
        tuple(entries[i] if i == j else ZERO for j in range(n)) for i in range(n)
    )


def pn_apex(n: int) -> Vector:
    return (HALF,) * (n - 1) + (Fraction(1),)


def pn_third_layer(n: int) -> tuple[Vector, ...]:
    """The 2(n-1) points (1/2, ..., 1/2, -1) +/- e_j, ordered by j with the
    plus sign first.  Built unconditionally so parity failures can be
    demonstrated on odd n."""
    base = [HALF] * (n - 1) + [Fraction(-1)]
    out = []
    for j in range(n - 1):
        for sign in (1, -1):
            p = list(base)
            p[j] += sign
            out.append(tuple(p))
    return tuple(out)


def construct_pn(n: int) -> DelaunayInstance:
    """Three-layer vertex family over the layered lattice: the apex
    (1/2, ..., 1/2, 1), the 2^{n-2} even-weight 0/1 points in the hyperplane
    x_n = 0, and the 2(n-1) shifted points (1/2, ..., 1/2, -1) +/- e_j.

    Total vertex count 1 + 2^{n-2} + 2(n-1).  Requires even n >= 6: for odd
    n the shifted layer is not contained in the lattice, which this
    constructor detects by an actual membership test.
    """
    if n < 6:
        raise ValueError("the three-layer family needs dimension at least 6")
    lat = l_n_lattice(n)
    third = pn_third_layer(n)
    bad = next((p for p in third if not membership(lat, p)), None)
    if bad is not None:
        raise ValueError(
            f"dimension {n} fails the parity gate: shifted-layer point "
            f"{tuple(str(c) for c in bad)} is not a lattice point; the shifted "
            f"layer lies in the lattice exactly when n is even"
        )
    apex = pn_apex(n)
    middle = tuple(v + (ZERO,) for v in half_cube_vertices(n - 1))
    return DelaunayInstance(
        label=f"pn-{n}",
        dim=n,
        form=pn_form(n),
        lattice=lat,
        vertices=(apex,) + middle + third,
    )
