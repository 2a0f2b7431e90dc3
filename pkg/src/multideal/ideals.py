"""Monomial ideals in canonical form.

An ideal is a nonempty antichain of exponent vectors, sorted
lexicographically, so equality of ideals is equality of values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Sequence

from .errors import InputError, RestrictionVanishes
from .polyhedra import INF, NewtonRegion, newton_region, pareto_minimal

Exponent = tuple[int, ...]


def _check_exponent(v, dim: int) -> Exponent:
    try:
        v = tuple(v)
    except TypeError:
        raise InputError(f"exponent {v!r} is not a sequence") from None
    if len(v) != dim:
        raise InputError(f"exponent {list(v)} does not have {dim} entries")
    for x in v:
        if isinstance(x, bool) or not isinstance(x, int):
            raise InputError(f"exponent {list(v)} has a non-integer entry")
        if x < 0:
            raise InputError(f"exponent {list(v)} has a negative entry")
    return v


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal of ``k[x_1..x_dim]`` given by its minimal generators."""

    dim: int
    gens: tuple[Exponent, ...]

    def __post_init__(self):
        if isinstance(self.dim, bool) or not isinstance(self.dim, int) or self.dim < 1:
            raise InputError("vars must be a positive integer")
        gens = [_check_exponent(g, self.dim) for g in self.gens]
        if not gens:
            raise InputError("gens must be nonempty")
        object.__setattr__(self, "gens", tuple(pareto_minimal(gens)))

    @classmethod
    def _trusted(cls, dim: int, gens: Iterable[Exponent]) -> "MonomialIdeal":
        # gens already validated integer tuples; only minimization is needed
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "gens", tuple(pareto_minimal(gens)))
        return obj

    @classmethod
    def unit(cls, dim: int) -> "MonomialIdeal":
        return cls(dim, ((0,) * dim,))

    @classmethod
    def maximal(cls, dim: int) -> "MonomialIdeal":
        return cls(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    # -- predicates ---------------------------------------------------------

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    def contains(self, v: Sequence[int]) -> bool:
        """Whether the monomial ``x^v`` lies in the ideal."""
        return any(all(gi <= vi for gi, vi in zip(g, v)) for g in self.gens)

    def witness_outside(self, other: "MonomialIdeal") -> Exponent | None:
        """A generator of ``self`` not in ``other``, or None if ``self <= other``."""
        _same_dim(self, other)
        for g in self.gens:
            if not other.contains(g):
                return g
        return None

    def issubset(self, other: "MonomialIdeal") -> bool:
        return self.witness_outside(other) is None

    __le__ = issubset

    def is_primary(self) -> bool:
        """Primary to the maximal monomial ideal: a pure power of every variable."""
        return all(pure_power(self, i) is not None for i in range(self.dim))

    # -- arithmetic ---------------------------------------------------------

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __pow__(self, k: int) -> "MonomialIdeal":
        return power(self, k)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"vars": self.dim, "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data) -> "MonomialIdeal":
        if not isinstance(data, dict):
            raise InputError("ideal must be a JSON object with 'vars' and 'gens'")
        if "gens" not in data:
            raise InputError("ideal is missing field 'gens'")
        gens = data["gens"]
        if not isinstance(gens, list):
            raise InputError("gens must be a list of exponent arrays")
        if not gens:
            raise InputError("gens must be nonempty")
        dim = data.get("vars", len(gens[0]) if isinstance(gens[0], list) else None)
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise InputError("vars must be a positive integer")
        return cls(dim, tuple(gens))

    def __str__(self) -> str:
        return "(" + ", ".join(monomial_str(g) for g in self.gens) + ")"


def monomial_str(v: Sequence[int]) -> str:
    if not any(v):
        return "1"
    parts = []
    for i, e in enumerate(v):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def _same_dim(a: MonomialIdeal, b: MonomialIdeal) -> None:
    if a.dim != b.dim:
        raise InputError(f"dimension mismatch: {a.dim} vs {b.dim} vars")


def pure_power(a: MonomialIdeal, i: int) -> int | None:
    """Smallest ``e`` with ``x_i^e`` in ``a``, or None."""
    best = None
    for g in a.gens:
        if all(g[j] == 0 for j in range(a.dim) if j != i):
            best = g[i] if best is None else min(best, g[i])
    return best


def minimize(gens: Iterable[Sequence[int]], dim: int) -> MonomialIdeal:
    return MonomialIdeal(dim, tuple(tuple(g) for g in gens))


def product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _same_dim(a, b)
    return MonomialIdeal._trusted(
        a.dim,
        {tuple(x + y for x, y in zip(u, v)) for u in a.gens for v in b.gens},
    )


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _same_dim(a, b)
    return MonomialIdeal._trusted(a.dim, a.gens + b.gens)


def power(a: MonomialIdeal, k: int) -> MonomialIdeal:
    """``a^k`` by repeated squaring; ``a^0`` is the unit ideal."""
    if k < 0:
        raise InputError("power must be non-negative")
    result = MonomialIdeal.unit(a.dim)
    base = a
    while k:
        if k & 1:
            result = product(result, base)
        k >>= 1
        if k:
            base = product(base, base)
    return result


def external_product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """``p1^{-1}(a) * p2^{-1}(b)`` on the product space, variables ``(x, y)``."""
    return MonomialIdeal._trusted(a.dim + b.dim, {u + v for u in a.gens for v in b.gens})


def lift_first(a: MonomialIdeal, m: int) -> MonomialIdeal:
    """Pull ``a`` back along the projection onto the first factor."""
    return external_product(a, MonomialIdeal.unit(m))


def lift_second(b: MonomialIdeal, n: int) -> MonomialIdeal:
    return external_product(MonomialIdeal.unit(n), b)


def restrict(a: MonomialIdeal, I: Iterable[int]) -> MonomialIdeal:
    """``a * O_Y`` for ``Y = {x_i = 0 : i in I}``, in the remaining variables."""
    I = sorted(set(I))
    for i in I:
        if not 0 <= i < a.dim:
            raise InputError(f"coordinate index {i} out of range for {a.dim} vars")
    keep = [j for j in range(a.dim) if j not in I]
    if not keep:
        raise InputError("cannot restrict to the origin: keep at least one variable")
    gens = [tuple(g[j] for j in keep) for g in a.gens if all(g[i] == 0 for i in I)]
    if not gens:
        raise RestrictionVanishes(f"every generator of {a} vanishes on the subspace x_i = 0, i in {I}")
    return MonomialIdeal._trusted(len(keep), gens)


def diagonal_restrict(q: MonomialIdeal) -> MonomialIdeal:
    """Substitute ``y_i -> x_i`` in an ideal on ``(x, y)`` with equal blocks."""
    if q.dim % 2:
        raise InputError(f"diagonal restriction needs an even number of vars, got {q.dim}")
    n = q.dim // 2
    return MonomialIdeal._trusted(n, {tuple(g[i] + g[n + i] for i in range(n)) for g in q.gens})


def colength(a: MonomialIdeal):
    """Number of standard monomials, or ``math.inf`` if not primary.

    Counts column by column over the box spanned by the pure powers: for each
    point of the first ``n - 1`` coordinates, the standard monomials above it
    are those with last exponent below the least last exponent of a dividing
    generator.
    """
    box = [pure_power(a, i) for i in range(a.dim)]
    if any(e is None for e in box):
        return INF
    n = a.dim
    if n == 1:
        return box[0]
    gens = a.gens
    total = 0
    for head in cartesian(*(range(e) for e in box[:-1])):
        top = box[-1]
        for g in gens:
            if g[-1] < top and all(gi <= hi for gi, hi in zip(g, head)):
                top = g[-1]
        total += top
    return total


def lattice_upset(dim: int, constraints, box: Sequence[int]) -> MonomialIdeal:
    """Ideal of all ``v >= 0`` with ``<w, v> >= t`` for each ``(w, t)``.

    Every ``w`` must be non-negative, so the set is closed upward.  ``box``
    bounds the minimal generators coordinatewise; callers are responsible for
    that bound.  The last coordinate is solved for directly, so only the first
    ``dim - 1`` coordinates are enumerated.
    """
    last = [(w[:-1], w[-1], t) for w, t in constraints if w[-1] > 0]
    flat = [(w[:-1], t) for w, t in constraints if w[-1] == 0]
    height = {}
    for head in cartesian(*(range(b + 1) for b in box[:-1])):
        if any(sum(x * y for x, y in zip(w, head)) < t for w, t in flat):
            continue
        need = 0
        for w, wn, t in last:
            rest = t - sum(x * y for x, y in zip(w, head))
            if rest > 0:
                need = max(need, -(-rest // wn))
        height[head] = need
    gens = []
    for head, h in height.items():
        minimal = True
        for j, x in enumerate(head):
            if x:
                below = height.get(head[:j] + (x - 1,) + head[j + 1:])
                if below is not None and below <= h:
                    minimal = False
                    break
        if minimal:
            gens.append(head + (h,))
    if not gens:
        raise InputError("search box contains no point of the upward-closed set")
    return MonomialIdeal._trusted(dim, gens)


@lru_cache(maxsize=65536)
def region(a: MonomialIdeal) -> NewtonRegion:
    """Newton region of ``a`` (cached; ideals are immutable)."""
    return newton_region(a.gens, a.dim)
