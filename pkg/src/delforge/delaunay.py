"""Exact circumsphere solving and the empty-sphere verifier.

verify_delaunay certifies the strong form of the claim: the closed
circumscribed ball intersected with the lattice is exactly the declared
vertex set.  That simultaneously proves there is no interior lattice point
and that the vertex list is complete.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import DelaunayInstance
from .exactlin import (
    Matrix,
    Rational,
    Vector,
    ZERO,
    apply_form,
    dot,
    is_symmetric,
    mat_vec,
    matrix,
    rank,
    solve,
    vec_add,
    vec_scale,
    vec_sub,
    vector,
)
from .lattice import BallQuery, enumerate_in_ball, membership


class DegenerateVertexSetError(ValueError):
    """Vertex set does not affinely span, so there is no unique circumcenter."""


class NotCosphericalError(ValueError):
    """Vertices admit no common sphere."""


@dataclass(frozen=True)
class SphereCertificate:
    """Outcome of an empty-sphere check.

    verified means every lattice point of the closed ball around center lies
    on the sphere and is a declared vertex.  A refutation carries the first
    offending point in deterministic order as witness (an interior lattice
    point, an undeclared on-sphere point, an off-sphere vertex, or a vertex
    outside the lattice); witness is None only for a verified certificate or
    when the vertex set fails to affinely span.
    """

    center: Vector
    radius_sq: Rational
    on_sphere_count: int
    verified: bool
    witness: Vector | None


def affine_rank(points: tuple[Vector, ...] | list[Vector]) -> int:
    """Rank of the difference vectors v_i - v_0, plus one."""
    pts = [vector(p) for p in points]
    if not pts:
        raise ValueError("affine rank of an empty point set")
    if len(pts) == 1:
        return 1
    diffs = matrix([vec_sub(p, pts[0]) for p in pts[1:]])
    return rank(diffs) + 1


def _independent_differences(pts: list[Vector]) -> list[Vector]:
    """Greedy maximal set of linearly independent v_i - v_0, in vertex order."""
    chosen: list[Vector] = []
    echelon: list[list[Rational]] = []
    for p in pts[1:]:
        row = list(vec_sub(p, pts[0]))
        work = row[:]
        for lead_row in echelon:
            lead_col = next(i for i, x in enumerate(lead_row) if x != 0)
            if work[lead_col] != 0:
                f = work[lead_col] / lead_row[lead_col]
                work = [a - f * b for a, b in zip(work, lead_row)]
        if any(x != 0 for x in work):
            echelon.append(work)
            chosen.append(tuple(row))
    return chosen


def _hull_circumcenter(
    pts: list[Vector], form: Matrix
) -> tuple[Vector, Rational, Vector | None]:
    """Equidistant point within the affine hull of the vertices.

    Returns (center, radius_sq, off) where off is the first vertex not at
    radius_sq from the center, or None when all vertices are cospherical.
    For an affinely spanning set this center is the unique circumcenter in
    the whole space.
    """
    v0 = pts[0]
    span = _independent_differences(pts)
    if not span:
        return v0, ZERO, None
    qw = [mat_vec(form, w) for w in span]
    # equation 2(v - v0)^T Q c = q(v) - q(v0) restricted to c = v0 + sum t_j w_j
    # reduces to sum_j t_j 2 w_i^T Q w_j = q(w_i)
    rows = matrix([[2 * dot(w, qwj) for qwj in qw] for w in span])
    rhs = vector([dot(w, qwi) for w, qwi in zip(span, qw)])
    t = solve(rows, rhs)
    if t is None:
        raise ValueError(
            "no equidistant point in the vertex span; the form is degenerate or indefinite"
        )
    center = v0
    for coeff, w in zip(t, span):
        center = vec_add(center, vec_scale(w, coeff))
    radius_sq = apply_form(form, vec_sub(v0, center))
    off = next(
        (p for p in pts if apply_form(form, vec_sub(p, center)) != radius_sq), None
    )
    return center, radius_sq, off


def circumcenter(
    vertices: tuple[Vector, ...] | list[Vector], form: Matrix
) -> tuple[Vector, Rational]:
    """Unique exact (center, radius_sq) with q(v - c) = r^2 for all vertices.

    Requires the vertices to affinely span (affine rank dim + 1); raises
    DegenerateVertexSetError otherwise and NotCosphericalError when no common
    sphere exists.
    """
    pts = [vector(p) for p in vertices]
    if not pts:
        raise ValueError("circumcenter of an empty vertex set")
    dim = len(pts[0])
    form = matrix(form)
    if not is_symmetric(form) or len(form) != dim:
        raise ValueError("form must be a symmetric dim x dim matrix")
    if affine_rank(pts) != dim + 1:
        raise DegenerateVertexSetError(
            "vertex set does not affinely span: no unique circumcenter"
        )
    center, radius_sq, off = _hull_circumcenter(pts, form)
    if off is not None:
        raise NotCosphericalError(
            f"vertex {tuple(str(c) for c in off)} is not equidistant from the center"
        )
    return center, radius_sq


def verify_delaunay(
    inst: DelaunayInstance, max_nodes: int | None = None
) -> SphereCertificate:
    """Certify that the instance's vertices are exactly the lattice points of
    their closed circumscribed ball, and that they affinely span.

    Refutations report the first failure in a fixed order: an off-sphere
    vertex, a vertex outside the lattice, then the first offending enumerated
    point (interior, or on-sphere but undeclared) in lexicographic order.
    """
    pts = list(inst.vertices)
    center, radius_sq, off = _hull_circumcenter(pts, inst.form)
    if off is not None:
        return SphereCertificate(center, radius_sq, 0, False, off)
    non_member = next((v for v in pts if not membership(inst.lattice, v)), None)
    if non_member is not None:
        return SphereCertificate(center, radius_sq, 0, False, non_member)
    ball = enumerate_in_ball(
        inst.lattice, BallQuery(inst.form, center, radius_sq), max_nodes=max_nodes
    )
    vertex_set = set(pts)
    on_sphere = sum(1 for _, value in ball if value == radius_sq)
    for point, value in ball:
        if value < radius_sq or point not in vertex_set:
            return SphereCertificate(center, radius_sq, on_sphere, False, point)
    if len(ball) != len(pts):  # cannot happen: vertices are members on the sphere
        raise RuntimeError("internal error: enumeration missed a declared vertex")
    if affine_rank(pts) != inst.dim + 1:
        return SphereCertificate(center, radius_sq, on_sphere, False, None)
    return SphereCertificate(center, radius_sq, len(pts), True, None)
