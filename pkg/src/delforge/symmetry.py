"""Isometry groups of finite vertex sets via distance-matrix automorphisms.

For an affinely spanning vertex set, permutations preserving the squared
distance matrix D[u][v] = q(u - v) are exactly the restrictions of ambient
isometries fixing the set.  The search individualizes a small base of
vertices whose distance profiles pin down every other vertex, so an
assignment of base images extends in at most one way; every completed
permutation is verified against the full distance matrix before being
accepted.  The group order is recomputed independently by a deterministic
Schreier-Sims stabilizer chain over the returned generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constructions import DelaunayInstance
from .delaunay import affine_rank
from .exactlin import Matrix, dot, mat_vec


@dataclass(frozen=True)
class SymmetryReport:
    """Generators (one-line arrays over vertex indices), exact group order,
    and the orbit partition of the vertex indices."""

    generators: tuple[tuple[int, ...], ...]
    group_order: int
    orbit_count: int
    orbits: tuple[tuple[int, ...], ...]


def distance_matrix(inst: DelaunayInstance) -> Matrix:
    """Exact squared distances D[u][v] = q(u - v) between instance vertices."""
    verts = inst.vertices
    qv = [mat_vec(inst.form, v) for v in verts]
    norms = [dot(v, w) for v, w in zip(verts, qv)]
    m = len(verts)
    rows = []
    for i in range(m):
        row = [
            norms[i] + norms[j] - 2 * dot(verts[i], qv[j]) for j in range(m)
        ]
        rows.append(tuple(row))
    return tuple(rows)


def _interned_distances(inst: DelaunayInstance) -> np.ndarray:
    """Distance matrix with values interned to small integer ids.

    Distances are computed on integer-rescaled copies of the vertices and the
    form (rescaling multiplies all squared distances by one positive
    constant, so automorphisms are unchanged).  Plain Python integers do the
    exact arithmetic; ids go into a compact numpy array for the search.
    """
    verts = inst.vertices
    m = len(verts)
    n = inst.dim
    vden = math.lcm(*(c.denominator for v in verts for c in v))
    fden = math.lcm(*(c.denominator for row in inst.form for c in row))
    u_int = [[int(c * vden) for c in v] for v in verts]
    f_int = [[int(c * fden) for c in row] for row in inst.form]
    u_max = max((abs(x) for row in u_int for x in row), default=0)
    f_max = max((abs(x) for row in f_int for x in row), default=0)
    bound = 4 * n * n * u_max * u_max * f_max
    if bound < 2**62:
        u_arr = np.array(u_int, dtype=np.int64)
        f_arr = np.array(f_int, dtype=np.int64)
        prod = u_arr @ f_arr @ u_arr.T
        diag = np.diagonal(prod)
        dists = diag[:, None] + diag[None, :] - 2 * prod
    else:  # exact fallback for extreme coordinates
        exact = distance_matrix(inst)
        values = sorted({x for row in exact for x in row})
        lut = {x: i for i, x in enumerate(values)}
        return np.array([[lut[x] for x in row] for row in exact], dtype=np.int32)
    _, inverse = np.unique(dists, return_inverse=True)
    return inverse.reshape(m, m).astype(np.int32)


def _initial_colors(ids: np.ndarray) -> np.ndarray:
    """Color each vertex by the multiset of its distance row.

    Any distance-preserving permutation maps a vertex to one with the same
    row multiset, so colors restrict the candidate images; the search itself
    closes the rest of the gap by full verification.
    """
    rows_sorted = np.sort(ids, axis=1)
    _, colors = np.unique(rows_sorted, axis=0, return_inverse=True)
    return colors.astype(np.int64)


def _select_base(ids: np.ndarray, colors: np.ndarray) -> list[int]:
    """Greedy base whose distance profiles separate all vertices."""
    m = ids.shape[0]
    keys: list[tuple[int, ...]] = [(int(colors[w]),) for w in range(m)]
    base: list[int] = []
    while True:
        buckets: dict[tuple[int, ...], list[int]] = {}
        for w in range(m):
            buckets.setdefault(keys[w], []).append(w)
        ambiguous = [vs for vs in buckets.values() if len(vs) > 1]
        if not ambiguous:
            return base
        pick = min(ambiguous, key=lambda vs: (-len(vs), vs[0]))
        b = pick[0]
        base.append(b)
        col = ids[:, b]
        keys = [keys[w] + (int(col[w]),) for w in range(m)]


def _orbit_closure(seed: set[int], gens: list[np.ndarray]) -> set[int]:
    orbit = set(seed)
    frontier = list(seed)
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = int(g[p])
            if q not in orbit:
                orbit.add(q)
                frontier.append(q)
    return orbit


class _AutomorphismSearch:
    def __init__(self, ids: np.ndarray, colors: np.ndarray, base: list[int]):
        self.ids = ids
        self.colors = colors
        self.base = base
        self.m = ids.shape[0]
        self.k = len(base)
        base_arr = np.array(base, dtype=np.intp)
        self.src_profile = ids[:, base_arr] if self.k else np.zeros((self.m, 0), np.int32)
        self.class_of: dict[int, np.ndarray] = {
            int(c): np.flatnonzero(colors == c) for c in np.unique(colors)
        }
        # required distances from base[t] to base[:t]
        self.required = [ids[base[t], base_arr[:t]] for t in range(self.k)]
        # For each prefix length t, the lexicographically sorted rows of
        # (color, distances to base[:t]); an assignment of t images is only
        # extendable if its row multiset matches, which prunes dead branches
        # at their first node instead of deep in the tree.
        self.colors32 = colors.astype(np.int32)
        self.src_sorted = [self._sorted_rows(base[:t]) for t in range(self.k + 1)]

    def _sorted_rows(self, points: list[int]) -> np.ndarray:
        rows = np.empty((self.m, len(points) + 1), dtype=np.int32)
        rows[:, 0] = self.colors32
        if points:
            rows[:, 1:] = self.ids[:, np.array(points, dtype=np.intp)]
        order = np.lexsort(rows.T[::-1])
        return rows[order]

    def _multiset_ok(self, imgs: list[int]) -> bool:
        return np.array_equal(self._sorted_rows(imgs), self.src_sorted[len(imgs)])

    def complete(self, imgs: list[int]) -> np.ndarray | None:
        """Extend full base images to the unique candidate permutation, or None."""
        ids = self.ids
        colors = self.colors
        tgt = ids[:, np.array(imgs, dtype=np.intp)]
        table: dict[bytes, int] = {}
        for u in range(self.m):
            key = int(colors[u]).to_bytes(8, "little", signed=False) + tgt[u].tobytes()
            if key in table:
                return None
            table[key] = u
        perm = np.empty(self.m, dtype=np.intp)
        src = self.src_profile
        for w in range(self.m):
            key = int(colors[w]).to_bytes(8, "little", signed=False) + src[w].tobytes()
            u = table.get(key)
            if u is None:
                return None
            perm[w] = u
        if not np.array_equal(ids[np.ix_(perm, perm)], ids):
            return None
        return perm

    def find_extension(self, level: int, candidate: int) -> np.ndarray | None:
        """First automorphism fixing base[:level] with base[level] -> candidate."""
        imgs = list(self.base[:level]) + [candidate]
        if not self._multiset_ok(imgs):
            return None

        def rec(t: int) -> np.ndarray | None:
            if t == self.k:
                return self.complete(imgs)
            bt = self.base[t]
            pool = self.class_of[int(self.colors[bt])]
            img_arr = np.array(imgs, dtype=np.intp)
            mask = (self.ids[np.ix_(pool, img_arr)] == self.required[t]).all(axis=1)
            for u in pool[mask]:
                imgs.append(int(u))
                if self._multiset_ok(imgs):
                    result = rec(t + 1)
                    if result is not None:
                        return result
                imgs.pop()
            return None

        return rec(level + 1)


def automorphisms(inst: DelaunayInstance) -> SymmetryReport:
    """Search the full group of distance-matrix automorphisms.

    Processes the base points as a stabilizer chain: at level i it finds, for
    every candidate image of base[i] under the stabilizer of the earlier base
    points, one automorphism realizing it (or proves there is none), pruning
    candidates already reachable by the generators found at this level.  The
    product of the per-level orbit sizes is the group order; it is checked
    against an independent Schreier-Sims run over the returned generators.
    """
    if affine_rank(inst.vertices) != inst.dim + 1:
        raise ValueError("symmetry search requires an affinely spanning vertex set")
    m = len(inst.vertices)
    if m == 1:
        return SymmetryReport(generators=(), group_order=1, orbit_count=1, orbits=((0,),))
    ids = _interned_distances(inst)
    colors = _initial_colors(ids)
    base = _select_base(ids, colors)
    search = _AutomorphismSearch(ids, colors, base)
    generators: list[np.ndarray] = []
    chain_order = 1
    for level in range(len(base)):
        b = base[level]
        pool = search.class_of[int(colors[b])]
        if level:
            prefix = np.array(base[:level], dtype=np.intp)
            mask = (ids[np.ix_(pool, prefix)] == search.required[level]).all(axis=1)
            candidates = [int(c) for c in pool[mask]]
        else:
            candidates = [int(c) for c in pool]
        level_gens: list[np.ndarray] = []
        orbit = {b}
        for c in candidates:
            if c == b or c in orbit:
                continue
            g = search.find_extension(level, c)
            if g is not None:
                generators.append(g)
                level_gens.append(g)
                orbit = _orbit_closure(orbit | {c}, level_gens)
        chain_order *= len(orbit)
    gen_tuples = tuple(tuple(int(x) for x in g) for g in generators)
    order = group_order(gen_tuples, m)
    if order != chain_order:
        raise RuntimeError(
            f"internal error: search chain order {chain_order} disagrees with "
            f"stabilizer-chain order {order}"
        )
    orbits = _orbit_partition(generators, m)
    return SymmetryReport(
        generators=gen_tuples,
        group_order=order,
        orbit_count=len(orbits),
        orbits=orbits,
    )


def _orbit_partition(gens: list[np.ndarray], m: int) -> tuple[tuple[int, ...], ...]:
    seen: set[int] = set()
    orbits = []
    for v in range(m):
        if v in seen:
            continue
        orbit = _orbit_closure({v}, gens)
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return tuple(orbits)


def group_order(generators, degree: int) -> int:
    """Exact order of the permutation group generated by one-line arrays on
    {0, ..., degree-1}, via a deterministic Schreier-Sims stabilizer chain."""
    if degree < 1:
        raise ValueError("degree must be positive")
    identity = np.arange(degree, dtype=np.intp)
    perms: list[np.ndarray] = []
    for g in generators:
        arr = np.asarray(tuple(g), dtype=np.intp)
        if arr.shape != (degree,) or not np.array_equal(np.sort(arr), identity):
            raise ValueError(f"malformed permutation {tuple(g)!r}")
        if (arr != identity).any():
            perms.append(arr)
    if not perms:
        return 1

    base: list[int] = []
    strong: list[np.ndarray] = list(perms)
    transversals: list[dict[int, np.ndarray]] = []

    def moved_point(g: np.ndarray) -> int:
        return int(np.flatnonzero(g != identity)[0])

    def fixes_prefix(g: np.ndarray, upto: int) -> bool:
        return all(int(g[b]) == b for b in base[:upto])

    for g in strong:
        if fixes_prefix(g, len(base)):
            base.append(moved_point(g))
            transversals.append({})

    def rebuild(level: int) -> None:
        b = base[level]
        gens = [g for g in strong if fixes_prefix(g, level)]
        trans = {b: identity}
        frontier = [b]
        while frontier:
            nxt = []
            for p in frontier:
                tp = trans[p]
                for s in gens:
                    q = int(s[p])
                    if q not in trans:
                        trans[q] = s[tp]
                        nxt.append(q)
            frontier = nxt
        transversals[level] = trans

    def sift(g: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for i in range(start, len(base)):
            p = int(g[base[i]])
            t = transversals[i].get(p)
            if t is None:
                return g, i
            t_inv = np.empty_like(t)
            t_inv[t] = identity
            g = t_inv[g]
        return g, len(base)

    # Verify levels from the deepest up; a non-stripping Schreier residue is
    # installed at the level where sifting stopped, and verification restarts
    # there.  Each restart strictly grows that level's orbit, so the loop
    # terminates with every transversal complete and every Schreier generator
    # stripping to the identity, which is exactly the stabilizer-chain
    # condition the order formula needs.
    level = len(base) - 1
    while level >= 0:
        rebuild(level)
        trans = transversals[level]
        gens = [g for g in strong if fixes_prefix(g, level)]
        restart = False
        for p in sorted(trans):
            tp = trans[p]
            for s in gens:
                st = s[tp]
                tq = trans[int(st[base[level]])]
                tq_inv = np.empty_like(tq)
                tq_inv[tq] = identity
                schreier = tq_inv[st]
                if (schreier == identity).all():
                    continue
                residue, drop = sift(schreier, level + 1)
                if (residue == identity).all():
                    continue
                strong.append(residue)
                if drop == len(base):
                    base.append(moved_point(residue))
                    transversals.append({})
                level = drop
                restart = True
                break
            if restart:
                break
        if restart:
            continue
        level -= 1

    return math.prod(len(t) for t in transversals)
