"""Multiplier ideals of monomial data.

The main route is the Newton-region criterion: ``x^v`` lies in ``J(c * a)``
iff ``v + (1, ..., 1)`` is in the interior of ``c * Newt(a)``, i.e.

    <w, v + 1> > c * h_w    for every facet (w, h_w) of Newt(a).

For integer left sides this is ``<w, v> >= floor(c * h_w) - |w| + 1``.

The plane also has an independent route, :func:`mi_from_resolution_2d`,
which pushes forward ``K_{X'/X} - [c E]`` from an explicit smooth toric
resolution ray by ray.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError, InvalidResolution, UnsupportedDimension
from .ideals import MonomialIdeal, lattice_upset, power, product, region
from .polyhedra import INF, _lcm, as_rat, dot, integer_facets, rat_str


def _positive(c, name="c") -> Fraction:
    c = as_rat(c)
    if c <= 0:
        raise InputError(f"{name} must be positive, got {c}")
    return c


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------------------------
# SNC divisors


@dataclass(frozen=True)
class SncDivisor:
    """``sum a_i {x_i = 0}``, optionally plus ``weight * div(x^u)``."""

    coeffs: tuple[Fraction, ...]
    principal: tuple[tuple[int, ...], Fraction] | None = None

    def __post_init__(self):
        coeffs = tuple(as_rat(a) for a in self.coeffs)
        if not coeffs:
            raise InputError("coeffs must be nonempty")
        if any(a < 0 for a in coeffs):
            raise InputError("coeffs must be non-negative (effective divisor)")
        object.__setattr__(self, "coeffs", coeffs)
        if self.principal is not None:
            u, weight = self.principal
            u = tuple(u)
            weight = as_rat(weight)
            if len(u) != len(coeffs) or any(not isinstance(x, int) or x < 0 for x in u):
                raise InputError("principal.exp must be a non-negative integer vector of length vars")
            if weight < 0:
                raise InputError("principal.weight must be non-negative")
            object.__setattr__(self, "principal", (u, weight))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def total(self) -> tuple[Fraction, ...]:
        """Coefficient of each coordinate hyperplane, principal part included."""
        if self.principal is None:
            return self.coeffs
        u, weight = self.principal
        return tuple(a + weight * x for a, x in zip(self.coeffs, u))

    @classmethod
    def from_json(cls, data) -> "SncDivisor":
        if not isinstance(data, dict) or "coeffs" not in data:
            raise InputError("divisor must be a JSON object with field 'coeffs'")
        coeffs = data["coeffs"]
        if not isinstance(coeffs, list):
            raise InputError("coeffs must be a list of rationals")
        if "vars" in data and data["vars"] != len(coeffs):
            raise InputError("vars does not match the length of coeffs")
        principal = data.get("principal")
        if principal is not None:
            if not isinstance(principal, dict) or "exp" not in principal:
                raise InputError("principal must be an object with 'exp' and 'weight'")
            principal = (tuple(principal["exp"]), principal.get("weight", 1))
        return cls(tuple(coeffs), principal)

    def to_json(self) -> dict:
        out = {"vars": self.dim, "coeffs": [rat_str(a) for a in self.coeffs]}
        if self.principal is not None:
            out["principal"] = {"exp": list(self.principal[0]), "weight": rat_str(self.principal[1])}
        return out


def mi_snc(D: SncDivisor) -> MonomialIdeal:
    """``J(D) = O(-[D])``: the identity already resolves SNC support."""
    return MonomialIdeal(D.dim, (tuple(math.floor(a) for a in D.total()),))


# ---------------------------------------------------------------------------
# the facet criterion


def _criterion_ideal(dim, facets, scale, box) -> MonomialIdeal:
    # facets of scale * (weighted region), integer offsets H:
    # <w, v + 1> > H / scale  <=>  <w, v> >= H // scale - |w| + 1
    constraints = [(w, H // scale - sum(w) + 1) for w, H in facets]
    return lattice_upset(dim, constraints, box)


@lru_cache(maxsize=65536)
def mi_ideal(a: MonomialIdeal, c=1) -> MonomialIdeal:
    """Multiplier ideal ``J(c * a)`` of a monomial ideal."""
    c = _positive(c)
    R = region(a)
    p, q = c.numerator, c.denominator
    # c * h = p*h/q, and h is an integer for integer generators
    constraints = [(w, (p * int(h)) // q - sum(w) + 1) for w, h in R.facets]
    box = [_ceil(c * max(g[i] for g in a.gens)) for i in range(a.dim)]
    return lattice_upset(a.dim, constraints, box)


def mi_weighted(terms: Sequence[tuple[MonomialIdeal, Fraction]]) -> MonomialIdeal:
    """``J(prod (c_i * a_i))`` via the Minkowski sum of ``c_i * Newt(a_i)``.

    The criterion has to hold for every ``w >= 0``; because the left side is
    linear and the right side is the support function of the Minkowski sum, it
    is enough to test the facet normals of that sum.
    """
    if not terms:
        raise InputError("need at least one (ideal, weight) term")
    dim = terms[0][0].dim
    weights = []
    for a, c in terms:
        if a.dim != dim:
            raise InputError(f"dimension mismatch: {a.dim} vs {dim} vars")
        weights.append(_positive(c))
    scale = 1
    for c in weights:
        scale = _lcm(scale, c.denominator)
    points = {(0,) * dim}
    for (a, _), c in zip(terms, weights):
        k = int(c * scale)
        verts = region(a).vertices
        points = {tuple(x + k * y for x, y in zip(p, v)) for p in points for v in verts}
    facets, _ = integer_facets(points, dim)
    box = [
        _ceil(sum(c * max(g[i] for g in a.gens) for (a, _), c in zip(terms, weights)))
        for i in range(dim)
    ]
    return _criterion_ideal(dim, facets, scale, box)


def mi_mixed(a: MonomialIdeal, c, b: MonomialIdeal, d) -> MonomialIdeal:
    """Mixed multiplier ideal ``J((c * a) * (d * b))``."""
    return mi_weighted([(a, as_rat(c)), (b, as_rat(d))])


def mi_linear_series(sections: Iterable[Sequence[int]], dim: int, c=1) -> MonomialIdeal:
    """``J(c * |V|)`` for a monomial linear series, through its base ideal."""
    return mi_ideal(MonomialIdeal(dim, tuple(tuple(s) for s in sections)), as_rat(c))


def lct(a: MonomialIdeal):
    """Log canonical threshold, ``min |w| / h_w`` over facets with ``h_w > 0``."""
    values = [Fraction(sum(w)) / h for w, h in region(a).facets if h > 0]
    return min(values) if values else INF


# ---------------------------------------------------------------------------
# plane resolutions


def _angle_key(r: tuple[int, int]) -> Fraction:
    return Fraction(r[1], r[0] + r[1])


def _primitive(r: Sequence[int]) -> tuple[int, int]:
    if len(r) != 2 or any(x < 0 for x in r) or not any(r):
        raise InputError(f"ray {tuple(r)} must be a nonzero non-negative pair")
    g = math.gcd(*r)
    return (r[0] // g, r[1] // g)


def _det(r, s) -> int:
    return r[0] * s[1] - r[1] * s[0]


@dataclass(frozen=True)
class Fan2D:
    """Complete fan of the first quadrant, rays ordered from (1,0) to (0,1)."""

    rays: tuple[tuple[int, int], ...]

    def __post_init__(self):
        rays = tuple(tuple(r) for r in self.rays)
        if len(rays) < 2 or rays[0] != (1, 0) or rays[-1] != (0, 1):
            raise InvalidResolution("fan must start at (1, 0) and end at (0, 1)")
        for r in rays:
            if _primitive(r) != r:
                raise InvalidResolution(f"ray {r} is not primitive")
        for r, s in zip(rays, rays[1:]):
            if _det(r, s) < 1:
                raise InvalidResolution(f"rays {r}, {s} are not in counterclockwise order")
        object.__setattr__(self, "rays", rays)

    def determinants(self) -> list[int]:
        return [_det(r, s) for r, s in zip(self.rays, self.rays[1:])]

    def is_smooth(self) -> bool:
        return all(d == 1 for d in self.determinants())


def _next_ray(r: tuple[int, int], s: tuple[int, int]) -> tuple[int, int]:
    """First lattice ray after ``r`` in cone(r, s): ``det(r, u) = 1``.

    ``u = (s + k r) / d`` with ``d = det(r, s)``; then ``det(u, s) = k < d``.
    """
    d = _det(r, s)
    for k in range(1, d):
        x, y = s[0] + k * r[0], s[1] + k * r[1]
        if x % d == 0 and y % d == 0:
            return (x // d, y // d)
    raise AssertionError("no lattice point found in a cone of determinant > 1")


def smooth_fan(rays: Iterable[Sequence[int]]) -> Fan2D:
    """Smallest smooth fan containing the given rays plus (1,0) and (0,1)."""
    rs = {(1, 0), (0, 1)} | {_primitive(r) for r in rays}
    ordered = sorted(rs, key=_angle_key)
    out = [ordered[0]]
    for s in ordered[1:]:
        while _det(out[-1], s) > 1:
            out.append(_next_ray(out[-1], s))
        out.append(s)
    return Fan2D(tuple(out))


def refine_fan_2d(data, extra_rays: Iterable[Sequence[int]] = ()) -> Fan2D:
    """Smooth fan refining the normal fan of ``data`` (ideal or SNC divisor)."""
    if data.dim != 2:
        raise UnsupportedDimension(f"plane resolutions need vars = 2, got {data.dim}")
    rays = list(extra_rays)
    if isinstance(data, MonomialIdeal):
        rays += region(data).normals
    return smooth_fan(rays)


def _order(gens, w) -> int:
    return min(w[0] * g[0] + w[1] * g[1] for g in gens)


def check_resolution(a: MonomialIdeal, fan: Fan2D) -> None:
    """Raise unless ``fan`` is smooth and ``a`` is principal on every chart."""
    if a.dim != 2:
        raise UnsupportedDimension(f"plane resolutions need vars = 2, got {a.dim}")
    if not fan.is_smooth():
        raise InvalidResolution(f"fan is not smooth: determinants {fan.determinants()}")
    for r, s in zip(fan.rays, fan.rays[1:]):
        o_r, o_s = _order(a.gens, r), _order(a.gens, s)
        if not any(dot(r, g) == o_r and dot(s, g) == o_s for g in a.gens):
            raise InvalidResolution(f"{a} is not principal on the chart of cone({r}, {s})")


def mi_from_resolution_2d(a: MonomialIdeal, c, fan: Fan2D) -> MonomialIdeal:
    """``mu_* O(K_{X'/X} - [c E])`` on the toric resolution given by ``fan``.

    ``x^v`` survives iff along every ray ``w``
    ``<w, v> + (w_1 + w_2 - 1) - floor(c * ord_w(a)) >= 0``.
    """
    c = _positive(c)
    check_resolution(a, fan)
    need = [(w, math.floor(c * _order(a.gens, w)) - (w[0] + w[1] - 1)) for w in fan.rays]
    bound = _ceil(c * max(max(g) for g in a.gens)) + 1

    def is_section(v):
        return all(w[0] * v[0] + w[1] * v[1] >= t for w, t in need)

    gens = []
    for x in range(bound + 1):
        y = 0
        while y <= bound and not is_section((x, y)):
            y += 1
        if y <= bound:
            gens.append((x, y))
    if not gens:
        raise InputError("search box contains no section")
    return MonomialIdeal(2, tuple(gens))
