"""Exact rational linear algebra: vectors, dense matrices, rank/kernel/solve.

Every scalar is a `fractions.Fraction`; nothing in this module ever touches a
float.  Vectors and matrices are plain tuples, so all values are immutable,
hashable, and safe to share between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

Rational = Fraction
Vector = tuple[Rational, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(value: int | str | Rational) -> Rational:
    """Coerce an int, Fraction, or "p/q" string to an exact rational."""
    if isinstance(value, float):
        raise TypeError(f"refusing to convert float {value!r} to an exact rational")
    return Fraction(value)


def vector(values: Iterable) -> Vector:
    return tuple(rational(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("matrix rows have unequal lengths")
    return out


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def n_cols(m: Matrix) -> int:
    return len(m[0]) if m else 0


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def dot(u: Vector, v: Vector) -> Rational:
    if len(u) != len(v):
        raise ValueError("dimension mismatch in dot product")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u: Vector, c: Rational) -> Vector:
    return tuple(a * c for a in u)


def mat_vec(m: Matrix, v: Vector) -> Vector:
    """m applied to a column vector v."""
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Vector, m: Matrix) -> Vector:
    """Row vector v times m."""
    if len(v) != len(m):
        raise ValueError("dimension mismatch in vector-matrix product")
    n = n_cols(m)
    return tuple(sum((v[i] * m[i][j] for i in range(len(v))), ZERO) for j in range(n))


def apply_form(q: Matrix, v: Vector) -> Rational:
    """Quadratic form value v^T q v."""
    return dot(v, mat_vec(q, v))


def is_symmetric(m: Matrix) -> bool:
    n = len(m)
    if n_cols(m) != n:
        return False
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def _rref(rows: list[list[Rational]]) -> list[int]:
    """Reduce to reduced row echelon form in place; return pivot columns.

    Pivot rule: scan columns left to right and take the first row with a
    nonzero entry.  With exact arithmetic the choice only fixes which of the
    equivalent echelon forms comes out, so the rule is a determinism knob.
    """
    if not rows:
        return []
    nr, nc = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        sel = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        lead = rows[r]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], lead)]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: Matrix) -> int:
    """Exact row rank."""
    return len(_rref([list(r) for r in m]))


def primitive(v: Iterable[Rational]) -> Vector:
    """Scale to coprime integer entries with the first nonzero entry positive."""
    vals = list(v)
    scale = math.lcm(*(x.denominator for x in vals)) if vals else 1
    ints = [int(x * scale) for x in vals]
    g = math.gcd(*ints) if any(ints) else 1
    if g == 0:
        g = 1
    ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def kernel(m: Matrix) -> list[Vector]:
    """Basis of the right null space.

    Each basis vector is scaled to primitive integer form with its first
    nonzero entry positive, which makes kernel-based certificates
    byte-for-byte reproducible.
    """
    nc = n_cols(m)
    rows = [list(r) for r in m]
    pivots = _rref(rows)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(nc):
        if free in pivot_set:
            continue
        v = [ZERO] * nc
        v[free] = ONE
        for r_idx, pc in enumerate(pivots):
            v[pc] = -rows[r_idx][free]
        basis.append(primitive(v))
    return basis


def solve(m: Matrix, rhs: Vector) -> Vector | None:
    """One exact solution of m x = rhs, or None when the system is inconsistent.

    Underdetermined systems get the solution with every free variable set to
    zero.
    """
    if len(rhs) != len(m):
        raise ValueError("right-hand side length does not match row count")
    nc = n_cols(m)
    rows = [list(r) + [b] for r, b in zip(m, rhs)]
    pivots = _rref(rows)
    if pivots and pivots[-1] == nc:
        return None
    x = [ZERO] * nc
    for r_idx, pc in enumerate(pivots):
        x[pc] = rows[r_idx][nc]
    return tuple(x)


def determinant(m: Matrix) -> Rational:
    n = len(m)
    if n_cols(m) != n:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in m]
    det = ONE
    for c in range(n):
        sel = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if sel is None:
            return ZERO
        if sel != c:
            rows[c], rows[sel] = rows[sel], rows[c]
            det = -det
        det *= rows[c][c]
        inv = ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def invert(m: Matrix) -> Matrix:
    n = len(m)
    if n_cols(m) != n:
        raise ValueError("inverse of a non-square matrix")
    rows = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m)]
    pivots = _rref(rows)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def is_positive_definite(q: Matrix) -> bool:
    """Sylvester test: every leading principal minor must be positive."""
    if not is_symmetric(q):
        raise ValueError("positive definiteness is only defined for symmetric matrices")
    for k in range(1, len(q) + 1):
        lead = tuple(r[:k] for r in q[:k])
        if determinant(lead) <= 0:
            return False
    return True


def isqrt_floor(x: int) -> int:
    """Exact floor of the square root of a nonnegative integer."""
    if x < 0:
        raise ValueError("isqrt_floor of a negative number")
    return math.isqrt(x)
