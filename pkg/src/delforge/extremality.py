"""Extremality certificates via the space of quadrics through a vertex set.

A sphere condition q(v - c) = r^2 linearizes to v^T Q v + b^T v + s = 0 in
the unknowns (Q, b, s).  The dimension of the solution space over all
vertices decides extremality: dimension 1 means the admissible metrics form
a single ray, so the only vertex-preserving deformations are homotheties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .constructions import DelaunayInstance
from .delaunay import SphereCertificate, affine_rank, verify_delaunay
from .exactlin import (
    Matrix,
    Rational,
    Vector,
    ZERO,
    apply_form,
    dot,
    is_positive_definite,
    kernel,
    matrix,
    vector,
)


class NotDelaunayError(ValueError):
    """certify_extreme needs a verified empty-sphere certificate first."""


@dataclass(frozen=True)
class QuadricTriple:
    """One quadric v^T q v + b^T v + s vanishing on every vertex."""

    q: Matrix
    b: Vector
    s: Rational


@dataclass(frozen=True)
class ExtremalityCertificate:
    kernel_dim: int
    kernel_basis: tuple[QuadricTriple, ...]
    recovered_form: Matrix | None
    is_extreme: bool


def condition_matrix(vertices, dim: int) -> Matrix:
    """One row per vertex, one column per unknown of (Q, b, s).

    Column order: upper triangle of Q row-major (the off-diagonal column for
    (i, j) carries coefficient 2 v_i v_j), then the n entries of b, then the
    constant s.  Refuses vertex sets that do not affinely span, since those
    inflate the kernel with quadrics vanishing on a whole hyperplane.
    """
    pts = [vector(v) for v in vertices]
    if any(len(p) != dim for p in pts):
        raise ValueError("vertex dimension does not match dim")
    if affine_rank(pts) != dim + 1:
        raise ValueError("vertex set must affinely span (affine rank dim + 1)")
    rows = []
    for v in pts:
        row: list[Rational] = []
        for i in range(dim):
            row.append(v[i] * v[i])
            for j in range(i + 1, dim):
                row.append(2 * v[i] * v[j])
        row.extend(v)
        row.append(Fraction(1))
        rows.append(row)
    return matrix(rows)


def _triple_from_flat(flat: Vector, dim: int) -> QuadricTriple:
    q = [[ZERO] * dim for _ in range(dim)]
    idx = 0
    for i in range(dim):
        for j in range(i, dim):
            q[i][j] = flat[idx]
            q[j][i] = flat[idx]
            idx += 1
    b = flat[idx : idx + dim]
    s = flat[idx + dim]
    return QuadricTriple(matrix(q), vector(b), s)


def evaluate_quadric(triple: QuadricTriple, v: Vector) -> Rational:
    return apply_form(triple.q, v) + dot(triple.b, v) + triple.s


def _kernel_of_condition_matrix(cond: Matrix) -> list[Vector]:
    """Null space of the condition matrix via its integer Gram matrix.

    Rows are scaled to primitive integers (kernel unchanged), then the
    elimination runs on the cols x cols matrix A^T A instead of one row per
    vertex: over the rationals A^T A x = 0 forces |Ax|^2 = 0, hence Ax = 0,
    so the null spaces agree and so do the reduced echelon bases.
    """
    ncols = len(cond[0])
    int_rows = []
    for row in cond:
        scale = math.lcm(*(x.denominator for x in row))
        ints = [int(x * scale) for x in row]
        g = math.gcd(*ints)
        if g > 1:
            ints = [x // g for x in ints]
        int_rows.append(ints)
    gram = [[0] * ncols for _ in range(ncols)]
    for row in int_rows:
        nz = [(i, x) for i, x in enumerate(row) if x]
        for a, (i, xi) in enumerate(nz):
            gi = gram[i]
            for j, xj in nz[a:]:
                gi[j] += xi * xj
    for i in range(ncols):
        for j in range(i + 1, ncols):
            gram[j][i] = gram[i][j]
    return kernel(matrix(gram))


def certify_extreme(
    inst: DelaunayInstance,
    sphere: SphereCertificate | None = None,
    max_nodes: int | None = None,
) -> ExtremalityCertificate:
    """Decide extremality of a verified Delaunay instance.

    Runs verify_delaunay first unless a certificate is supplied; refuses
    refuted instances.  The certificate carries the full kernel basis (so a
    non-extreme instance exhibits at least two independent quadrics), and for
    kernel dimension 1 the quadratic part normalized to leading entry 1,
    which must reproduce a positive definite metric.
    """
    if sphere is None:
        sphere = verify_delaunay(inst, max_nodes=max_nodes)
    if not sphere.verified:
        raise NotDelaunayError(
            "instance failed the empty-sphere check; extremality is undefined "
            "for non-Delaunay vertex sets"
        )
    cond = condition_matrix(inst.vertices, inst.dim)
    flats = _kernel_of_condition_matrix(cond)
    triples = tuple(_triple_from_flat(f, inst.dim) for f in flats)
    kernel_dim = len(triples)
    recovered: Matrix | None = None
    if kernel_dim == 1:
        q = triples[0].q
        lead = q[0][0]
        if lead == 0:
            raise RuntimeError("internal error: rank-1 kernel with zero leading entry")
        recovered = tuple(tuple(x / lead for x in row) for row in q)
        if not is_positive_definite(recovered):
            raise RuntimeError("internal error: recovered form is not positive definite")
    return ExtremalityCertificate(
        kernel_dim=kernel_dim,
        kernel_basis=triples,
        recovered_form=recovered,
        is_extreme=kernel_dim == 1,
    )


def kernel_dim_oracle(vertices, dim: int) -> int:
    """Recount the quadric-kernel dimension with a separately written
    elimination: columns processed right to left, pivot row chosen bottom up,
    plain Fraction arithmetic on the raw condition matrix.  Meant as an
    independent cross-check on small instances (dim <= 6)."""
    cond = [list(row) for row in condition_matrix(vertices, dim)]
    nrows = len(cond)
    ncols = len(cond[0])
    used = [False] * nrows
    rank_count = 0
    for c in reversed(range(ncols)):
        piv = next(
            (i for i in reversed(range(nrows)) if not used[i] and cond[i][c] != 0),
            None,
        )
        if piv is None:
            continue
        used[piv] = True
        rank_count += 1
        piv_row = cond[piv]
        piv_val = piv_row[c]
        for i in range(nrows):
            if i != piv and cond[i][c] != 0:
                f = cond[i][c] / piv_val
                cond[i] = [a - f * b for a, b in zip(cond[i], piv_row)]
    return ncols - rank_count
