"""Point lattices, membership tests, and exact enumeration of lattice points
inside an ellipsoidal ball.

The enumerator is a rational Fincke-Pohst: it takes an exact LDL^T
decomposition of the basis Gram matrix under the metric and derives every
coordinate's integer range from integer square roots, so the returned point
list is provably complete.  No floating point, no epsilon anywhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .exactlin import (
    Matrix,
    Rational,
    Vector,
    ZERO,
    apply_form,
    invert,
    is_symmetric,
    matrix,
    rank,
    vec_mat,
    vec_sub,
    vector,
)

DEFAULT_MAX_ENUM = 10**8


class EnumerationLimitError(RuntimeError):
    """Raised when the enumeration tree exceeds the configured node budget."""


@dataclass(frozen=True)
class Lattice:
    """Full-rank point lattice given by rational basis rows."""

    dim: int
    basis: Matrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", matrix(self.basis))
        if self.dim < 1:
            raise ValueError("lattice dimension must be positive")
        if len(self.basis) != self.dim or any(len(r) != self.dim for r in self.basis):
            raise ValueError("basis must be a square dim x dim matrix")
        if rank(self.basis) != self.dim:
            raise ValueError("basis rows are linearly dependent")


@dataclass(frozen=True)
class BallQuery:
    """Closed ball {v : (v-center)^T form (v-center) <= radius_sq}.

    A negative radius_sq is allowed and denotes the empty ball.
    """

    form: Matrix
    center: Vector
    radius_sq: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "form", matrix(self.form))
        object.__setattr__(self, "center", vector(self.center))
        object.__setattr__(self, "radius_sq", Fraction(self.radius_sq))
        if not is_symmetric(self.form):
            raise ValueError("form must be symmetric")
        if len(self.center) != len(self.form):
            raise ValueError("center dimension does not match form")


@lru_cache(maxsize=None)
def _basis_inverse(lat: Lattice) -> Matrix:
    return invert(lat.basis)


def coordinates(lat: Lattice, v: Vector) -> Vector:
    """Exact coordinates x with v = x . basis (as rows)."""
    if len(v) != lat.dim:
        raise ValueError(f"vector has dimension {len(v)}, lattice has {lat.dim}")
    return vec_mat(vector(v), _basis_inverse(lat))


def membership(lat: Lattice, v: Iterable) -> bool:
    """Whether v is a lattice point, i.e. has integer basis coordinates."""
    return all(c.denominator == 1 for c in coordinates(lat, vector(v)))


def _ldlt(g: Matrix) -> tuple[list[list[Rational]], list[Rational]]:
    """G = L diag(d) L^T with unit lower-triangular L; G must be positive definite."""
    n = len(g)
    lower = [[ZERO] * n for _ in range(n)]
    diag: list[Rational] = []
    for j in range(n):
        lower[j][j] = Fraction(1)
        dj = g[j][j] - sum((lower[j][k] * lower[j][k] * diag[k] for k in range(j)), ZERO)
        if dj <= 0:
            raise ValueError("form is not positive definite")
        diag.append(dj)
        for i in range(j + 1, n):
            lower[i][j] = (
                g[i][j] - sum((lower[i][k] * lower[j][k] * diag[k] for k in range(j)), ZERO)
            ) / dj
    return lower, diag


def _int_range(a: Rational, rho: Rational) -> tuple[int, int]:
    """All integers x with (x-a)^2 <= rho, as the inclusive range [lo, hi].

    Uses floor((A + sqrt(N))/B) = (A + isqrt(N)) // B for integers A, B>0,
    N>=0: no integer can sit strictly between (A + isqrt(N))/B and
    (A + sqrt(N))/B, because B times it would be an integer strictly between
    two consecutive integers.
    """
    if rho < 0:
        return 0, -1
    an, ad = a.numerator, a.denominator
    pn, pd = rho.numerator, rho.denominator
    n_val = pn * pd * ad * ad
    s = math.isqrt(n_val)
    b = ad * pd
    a_scaled = an * pd
    hi = (a_scaled + s) // b
    lo = -((s - a_scaled) // b)
    return lo, hi


def _check_query(lat: Lattice, query: BallQuery) -> None:
    if len(query.center) != lat.dim:
        raise ValueError("query dimension does not match lattice dimension")


def enumerate_in_ball(
    lat: Lattice, query: BallQuery, max_nodes: int | None = None
) -> list[tuple[Vector, Rational]]:
    """All lattice points v with q(v - c) <= r^2, with their exact values.

    Output is sorted lexicographically by coordinates.  Completeness is
    certified by the bound derivation, not sampling: at tree level i the
    integer range for the i-th basis coordinate comes from an exact integer
    square root of the remaining budget.  Raises EnumerationLimitError once
    more than max_nodes tree nodes have been visited (default 10^8), so a
    truncated enumeration can never be mistaken for a complete one.
    """
    _check_query(lat, query)
    budget_cap = DEFAULT_MAX_ENUM if max_nodes is None else max_nodes
    basis = lat.basis
    gram = _gram(basis, query.form)
    lower, diag = _ldlt(gram)
    if query.radius_sq < 0:
        return []
    y = coordinates(lat, query.center)
    n = lat.dim
    xs = [0] * n
    found: list[tuple[Vector, Rational]] = []
    nodes = 0

    def descend(level: int, budget: Rational) -> None:
        nonlocal nodes
        if level < 0:
            point = tuple(
                sum((Fraction(xs[i]) * basis[i][j] for i in range(n)), ZERO)
                for j in range(n)
            )
            found.append((point, query.radius_sq - budget))
            return
        shift = sum(
            (lower[j][level] * (xs[j] - y[j]) for j in range(level + 1, n)), ZERO
        )
        center = y[level] - shift
        lo, hi = _int_range(center, budget / diag[level])
        for x in range(lo, hi + 1):
            nodes += 1
            if nodes > budget_cap:
                raise EnumerationLimitError(
                    f"enumeration exceeded the node budget of {budget_cap}"
                )
            xs[level] = x
            term = diag[level] * (Fraction(x) - center) ** 2
            descend(level - 1, budget - term)

    descend(n - 1, query.radius_sq)
    found.sort(key=lambda pv: pv[0])
    return found


def _gram(basis: Matrix, form: Matrix) -> Matrix:
    if len(form) != len(basis[0]):
        raise ValueError("form dimension does not match lattice dimension")
    n = len(basis)
    qb = [vec_mat(row, form) for row in basis]
    return tuple(
        tuple(sum((qb[i][k] * basis[j][k] for k in range(n)), ZERO) for j in range(n))
        for i in range(n)
    )


def enumerate_brute_force(
    lat: Lattice, query: BallQuery, box_bound: int
) -> list[tuple[Vector, Rational]]:
    """Test oracle: filter every coefficient vector in [-box_bound, box_bound]^dim.

    Only complete when the ball's coefficient ranges fit inside the box;
    intended for small dimensions as an independent check of
    enumerate_in_ball.
    """
    _check_query(lat, query)
    basis = lat.basis
    n = lat.dim
    found: list[tuple[Vector, Rational]] = []
    for coeffs in itertools.product(range(-box_bound, box_bound + 1), repeat=n):
        point = tuple(
            sum((Fraction(coeffs[i]) * basis[i][j] for i in range(n)), ZERO)
            for j in range(n)
        )
        value = apply_form(query.form, vec_sub(point, query.center))
        if value <= query.radius_sq:
            found.append((point, value))
    found.sort(key=lambda pv: pv[0])
    return found
