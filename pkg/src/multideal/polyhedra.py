"""Exact Newton regions ``conv(points) + R^n_{>=0}``.

A region is stored in facet form ``{p : <w, p> >= h}`` with primitive integer
normals ``w >= 0`` together with its vertex set.  All arithmetic is over the
integers or :class:`fractions.Fraction`; nothing here touches floating point.

Facets are found by a monotone-chain hull in the plane and by the double
description method in higher dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError, UnsupportedDimension

INF = math.inf

#: largest ambient dimension with exact facet enumeration
MAX_FACET_DIM = 4
#: largest ambient dimension with exact covolume
MAX_COVOLUME_DIM = 3


def as_rat(x) -> Fraction:
    """Coerce ``x`` (int, Fraction or a ``"p/q"`` string) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {x!r}") from None
    raise InputError(f"not a rational number: {x!r} (floats are not accepted)")


def rat_str(x) -> str:
    return "inf" if x == INF else str(as_rat(x))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def _gcd_all(xs: Iterable[int]) -> int:
    return reduce(math.gcd, xs, 0)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def pareto_minimal(points: Iterable[tuple]) -> list[tuple]:
    """Componentwise-minimal elements of ``points``, sorted lexicographically."""
    pts = sorted(set(points))
    if pts and len(pts[0]) == 2:
        kept = []
        for p in pts:
            # sorted by x, so p is minimal iff its y beats every kept y
            if not kept or p[1] < kept[-1][1]:
                kept.append(p)
        return kept
    kept = []
    for p in pts:
        if not any(all(qi <= pi for qi, pi in zip(q, p)) for q in kept):
            kept.append(p)
    return kept


def _integerize(points: Sequence[Sequence]) -> tuple[list[tuple[int, ...]], int]:
    """Scale rational points to integer points; return them with the scale."""
    den = 1
    for p in points:
        for x in p:
            if isinstance(x, Fraction):
                den = _lcm(den, x.denominator)
    if den == 1:
        return [tuple(int(x) for x in p) for p in points], 1
    return [tuple(int(x * den) for x in p) for p in points], den


# ---------------------------------------------------------------------------
# facet enumeration on integer points


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _lower_chain(pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Vertices of a planar Newton region, from a sorted antichain."""
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def _facets_2d(hull: list[tuple[int, int]]) -> list[tuple[tuple[int, ...], int]]:
    facets = [((1, 0), hull[0][0]), ((0, 1), hull[-1][1])]
    for a, b in zip(hull, hull[1:]):
        w0, w1 = a[1] - b[1], b[0] - a[0]
        g = math.gcd(w0, w1)
        w = (w0 // g, w1 // g)
        facets.append((w, w[0] * a[0] + w[1] * a[1]))
    return facets


def _facets_dd(pts: list[tuple[int, ...]], n: int) -> list[tuple[tuple[int, ...], int]]:
    """Double description on the cone {(w, t) : w >= 0, <v, w> + t >= 0}.

    Its extreme rays with w != 0 are exactly the facets <w, p> >= -t of the
    region; the ray (0, ..., 0, 1) is the face at infinity and is dropped.
    """
    rows = [tuple(int(i == j) for j in range(n + 1)) for i in range(n)]
    rows += [tuple(v) + (1,) for v in pts]
    v0 = pts[0]
    rays = []
    for i in range(n):
        r = [0] * (n + 1)
        r[i] = 1
        r[n] = -v0[i]
        rays.append(tuple(r))
    rays.append((0,) * n + (1,))

    def tight_mask(r, upto):
        m = 0
        for j in range(upto):
            if dot(rows[j], r) == 0:
                m |= 1 << j
        return m

    masks = [tight_mask(r, n + 1) for r in rays]
    for j in range(n + 1, len(rows)):
        row = rows[j]
        vals = [dot(row, r) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        new_rays = []
        new_masks = []
        for i, s in enumerate(vals):
            if s > 0:
                new_rays.append(rays[i])
                new_masks.append(masks[i])
            elif s == 0:
                new_rays.append(rays[i])
                new_masks.append(masks[i] | (1 << j))
        for p in pos:
            for q in neg:
                common = masks[p] & masks[q]
                if common.bit_count() < n - 1:
                    continue
                if any(
                    o != p and o != q and (masks[o] & common) == common
                    for o in range(len(rays))
                ):
                    continue
                sp, sq = vals[p], vals[q]
                r = [sp * b - sq * a for a, b in zip(rays[p], rays[q])]
                g = _gcd_all(abs(x) for x in r)
                new_rays.append(tuple(x // g for x in r))
                new_masks.append(common | (1 << j))
        rays, masks = new_rays, new_masks

    facets = []
    for r in rays:
        w = r[:n]
        if not any(w):
            continue
        g = _gcd_all(w)
        facets.append((tuple(x // g for x in w), -r[n] // g))
    return facets


def _rank(vectors: list[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def integer_facets(points: Sequence[tuple[int, ...]], n: int):
    """Facets and vertices of the region of integer ``points``.

    Returns ``(facets, vertices)`` with facets as ``(normal, offset)`` pairs
    sorted by normal, and vertices sorted lexicographically.
    """
    pts = pareto_minimal(points)
    if n == 1:
        return [((1,), pts[0][0])], pts
    if n == 2:
        hull = _lower_chain(pts)
        return sorted(_facets_2d(hull)), hull
    facets = sorted(set(_facets_dd(pts, n)))
    vertices = []
    for p in pts:
        normals = [w for w, h in facets if dot(w, p) == h]
        if len(normals) >= n and _rank(normals) == n:
            vertices.append(p)
    return facets, vertices


# ---------------------------------------------------------------------------
# the public region type


@dataclass(frozen=True)
class NewtonRegion:
    """``conv(vertices) + R^n_{>=0}`` with its irredundant facet list."""

    dim: int
    facets: tuple[tuple[tuple[int, ...], Fraction], ...]
    vertices: tuple[tuple, ...]

    @property
    def normals(self) -> list[tuple[int, ...]]:
        return [w for w, _ in self.facets]

    def offset(self, w: Sequence[int]) -> Fraction | None:
        for normal, h in self.facets:
            if normal == tuple(w):
                return h
        return None

    def compact_facets(self):
        """Facets whose normal is strictly positive (bounded faces)."""
        return [(w, h) for w, h in self.facets if min(w) > 0]

    def to_json(self) -> dict:
        return {
            "vars": self.dim,
            "facets": [{"normal": list(w), "offset": rat_str(h)} for w, h in self.facets],
            "vertices": [[rat_str(x) for x in v] for v in self.vertices],
        }


def newton_region(gens: Iterable[Sequence], dim: int) -> NewtonRegion:
    """Irredundant facet description of ``conv(gens) + R^n_{>=0}``.

    ``gens`` may hold integers or rationals.
    """
    if dim < 1:
        raise InputError("vars must be a positive integer")
    if dim > MAX_FACET_DIM:
        raise UnsupportedDimension(f"facet enumeration supports vars <= {MAX_FACET_DIM}, got {dim}")
    pts = [tuple(as_rat(x) if not isinstance(x, int) else x for x in g) for g in gens]
    if not pts:
        raise InputError("gens must be nonempty")
    for p in pts:
        if len(p) != dim:
            raise InputError(f"point {p} does not have {dim} coordinates")
        if any(x < 0 for x in p):
            raise InputError(f"point {p} has a negative coordinate")
    ipts, scale = _integerize(pts)
    facets, vertices = integer_facets(ipts, dim)
    if scale == 1:
        return NewtonRegion(
            dim,
            tuple((w, Fraction(h)) for w, h in facets),
            tuple(vertices),
        )
    return NewtonRegion(
        dim,
        tuple((w, Fraction(h, scale)) for w, h in facets),
        tuple(tuple(Fraction(x, scale) for x in v) for v in vertices),
    )


def _check_covector(R: NewtonRegion, w: Sequence) -> None:
    if len(w) != R.dim:
        raise InputError(f"covector {tuple(w)} does not have {R.dim} entries")
    if any(x < 0 for x in w):
        raise InputError(f"covector {tuple(w)} has a negative entry")
    if not any(w):
        raise InputError("covector must be nonzero")


def support_value(R: NewtonRegion, w: Sequence) -> Fraction:
    """``min <w, p>`` over the region; attained at a vertex."""
    _check_covector(R, w)
    return Fraction(min(dot(w, v) for v in R.vertices))


def strict_contains(R: NewtonRegion, p: Sequence, c=1) -> bool:
    """Whether ``p`` lies in the interior of ``c * R``."""
    c = as_rat(c)
    if c <= 0:
        raise InputError("c must be positive")
    if len(p) != R.dim:
        raise InputError(f"point {tuple(p)} does not have {R.dim} coordinates")
    p = [as_rat(x) for x in p]
    return all(dot(w, p) > c * h for w, h in R.facets)


# ---------------------------------------------------------------------------
# covolume


def _polygon_area(points: list[tuple]) -> Fraction:
    pts = sorted(set(points))
    if len(pts) < 3:
        return Fraction(0)

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    ring = lower[:-1] + upper[:-1]
    twice = sum(
        a[0] * b[1] - a[1] * b[0] for a, b in zip(ring, ring[1:] + ring[:1])
    )
    return abs(Fraction(twice)) / 2


def is_bounded_complement(R: NewtonRegion) -> bool:
    """True iff every coordinate axis meets the region."""
    n = R.dim
    return all(
        any(all(v[j] == 0 for j in range(n) if j != i) for v in R.vertices)
        for i in range(n)
    )


def covolume(R: NewtonRegion):
    """Exact volume of ``R^n_{>=0} minus R``, or ``math.inf``.

    The complement is the union of the cones from the origin over the
    bounded facets; each cone has volume ``h * area_proj / (n * w_n)``, with
    ``area_proj`` the area of the facet projected along the last axis.
    """
    n = R.dim
    if n > MAX_COVOLUME_DIM:
        raise UnsupportedDimension(f"covolume supports vars <= {MAX_COVOLUME_DIM}, got {n}")
    if not is_bounded_complement(R):
        return INF
    total = Fraction(0)
    for w, h in R.compact_facets():
        face = [v for v in R.vertices if dot(w, v) == h]
        if n == 1:
            area = Fraction(1)
        elif n == 2:
            xs = [v[0] for v in face]
            area = Fraction(max(xs) - min(xs))
        else:
            area = _polygon_area([(v[0], v[1]) for v in face])
        total += h * area / (n * w[-1])
    return total


# ---------------------------------------------------------------------------
# regions given by inequalities


def _solve(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system, or None if singular."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col] / M[col][col]
                M[i] = [a - f * c for a, c in zip(M[i], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def region_from_inequalities(normals: Sequence[Sequence[int]], offsets: Sequence, dim: int) -> NewtonRegion:
    """Region ``{u >= 0 : <a_r, u> >= b_r}`` for normals ``a_r >= 0``.

    Vertices are enumerated by solving every square subsystem of the active
    constraints; the region is then rebuilt from them, so the result is in
    canonical form even if some inequalities are redundant.
    """
    if len(normals) != len(offsets):
        raise InputError("normals and offsets differ in length")
    rows = [list(a) for a in normals]
    rhs = [as_rat(b) for b in offsets]
    for a in rows:
        if len(a) != dim:
            raise InputError(f"normal {a} does not have {dim} entries")
        if any(x < 0 for x in a) or not any(a):
            raise InputError(f"normal {a} must be nonzero with non-negative entries")
    cons = rows + [[int(i == j) for j in range(dim)] for i in range(dim)]
    cons_rhs = rhs + [Fraction(0)] * dim
    vertices = set()
    for idx in combinations(range(len(cons)), dim):
        sol = _solve([cons[i] for i in idx], [cons_rhs[i] for i in idx])
        if sol is None:
            continue
        if all(x >= 0 for x in sol) and all(dot(a, sol) >= b for a, b in zip(rows, rhs)):
            vertices.add(tuple(sol))
    return newton_region(sorted(vertices), dim)
