"""Graded families of monomial ideals and asymptotic multiplier ideals.

Three kinds of family are supported:

``powers``
    ``a_k = a^k``.
``polytope``
    ``a_k`` is spanned by the lattice points of ``k * Q``, where
    ``Q = {u >= 0 : A u >= b}`` with ``A >= 0``.
``table``
    explicit ``a_1, ..., a_r``; with ``extension="products"`` later members
    are ``a_k = sum_{i+j=k} a_i a_j``, with ``"none"`` they do not exist.

Every family carries a ``stride`` ``s`` so that ``F.veronese(m)`` (the family
``k -> a_{mk}``) is again a family value.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import ChainPropertyViolation, InputError, StabilizationNotCertified
from .ideals import MonomialIdeal, ideal_sum, lattice_upset, power, product, region
from .multiplier import mi_ideal
from .polyhedra import NewtonRegion, as_rat, newton_region, rat_str, region_from_inequalities
from .reports import INCONCLUSIVE, Trial, inclusion_trial

KINDS = ("powers", "polytope", "table")
DEFAULT_K = 24
MULTIPLICATIVITY_RANGE = 12


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class GradedFamily:
    dim: int
    kind: str
    base: MonomialIdeal | None = None
    normals: tuple[tuple[int, ...], ...] = ()
    offsets: tuple[Fraction, ...] = ()
    members: tuple[MonomialIdeal, ...] = ()
    extension: str = "products"
    stride: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"kind must be one of {', '.join(KINDS)}, got {self.kind!r}")
        if not isinstance(self.stride, int) or self.stride < 1:
            raise InputError("stride must be a positive integer")
        if self.kind == "powers":
            if self.base is None or self.base.dim != self.dim:
                raise InputError(f"powers family needs an ideal in {self.dim} vars")
        elif self.kind == "polytope":
            if not self.normals or len(self.normals) != len(self.offsets):
                raise InputError("polytope family needs matching nonempty inequalities")
            for a in self.normals:
                if len(a) != self.dim or any(x < 0 for x in a) or not any(a):
                    raise InputError(f"inequality normal {list(a)} must be nonzero, non-negative, length {self.dim}")
            object.__setattr__(self, "normals", tuple(tuple(a) for a in self.normals))
            object.__setattr__(self, "offsets", tuple(as_rat(b) for b in self.offsets))
        else:
            if not self.members:
                raise InputError("table family needs at least one member")
            if any(m.dim != self.dim for m in self.members):
                raise InputError(f"table members must all have {self.dim} vars")
            if self.extension not in ("products", "none"):
                raise InputError("extension must be 'products' or 'none'")
            r = len(self.members)
            for k in range(1, r + 1):
                for l in range(k, r + 1 - k):
                    if not product(self.members[k - 1], self.members[l - 1]).issubset(self.members[k + l - 1]):
                        raise InputError(f"table is not graded: a_{k} * a_{l} is not inside a_{k + l}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def powers(cls, a: MonomialIdeal) -> "GradedFamily":
        return cls(a.dim, "powers", base=a)

    @classmethod
    def polytope(cls, normals, offsets, dim: int) -> "GradedFamily":
        return cls(dim, "polytope", normals=tuple(tuple(a) for a in normals), offsets=tuple(offsets))

    @classmethod
    def table(cls, members: Sequence[MonomialIdeal], extension: str = "products") -> "GradedFamily":
        return cls(members[0].dim, "table", members=tuple(members), extension=extension)

    def veronese(self, m: int) -> "GradedFamily":
        """The family ``k -> a_{mk}``."""
        if not isinstance(m, int) or m < 1:
            raise InputError("m must be a positive integer")
        return replace(self, stride=self.stride * m)

    # -- access -------------------------------------------------------------

    def member(self, k: int) -> MonomialIdeal:
        if not isinstance(k, int) or k < 1:
            raise InputError(f"family index must be a positive integer, got {k!r}")
        return _level(self, self.stride * k)

    @property
    def max_level(self) -> int | None:
        """Largest index with a member, or None when the family is infinite."""
        if self.kind == "table" and self.extension == "none":
            return len(self.members) // self.stride
        return None

    def limit_region(self) -> NewtonRegion | None:
        """``lim Newt(a_k) / k`` when it has a closed form, else None."""
        s = self.stride
        if self.kind == "powers":
            return newton_region([tuple(s * x for x in v) for v in region(self.base).vertices], self.dim)
        if self.kind == "polytope":
            return region_from_inequalities(self.normals, [s * b for b in self.offsets], self.dim)
        if self.extension == "none":
            return None
        # the graded algebra is generated in degrees <= r, so the limit is the
        # convex hull of the rescaled members
        pts = {
            tuple(Fraction(s * x, i) for x in v)
            for i, m in enumerate(self.members, start=1)
            for v in region(m).vertices
        }
        return newton_region(pts, self.dim)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out = {"vars": self.dim, "kind": self.kind}
        if self.kind == "powers":
            out["ideal"] = self.base.to_json()
        elif self.kind == "polytope":
            out["inequalities"] = [
                {"normal": list(a), "offset": rat_str(b)} for a, b in zip(self.normals, self.offsets)
            ]
        else:
            out["members"] = [m.to_json() for m in self.members]
            out["extension"] = self.extension
        if self.stride != 1:
            out["stride"] = self.stride
        return out

    @classmethod
    def from_json(cls, data) -> "GradedFamily":
        if not isinstance(data, dict):
            raise InputError("family must be a JSON object")
        for key in ("vars", "kind"):
            if key not in data:
                raise InputError(f"family is missing field '{key}'")
        dim, kind = data["vars"], data["kind"]
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise InputError("vars must be a positive integer")
        stride = data.get("stride", 1)
        if kind == "powers":
            if "ideal" not in data:
                raise InputError("powers family is missing field 'ideal'")
            return cls(dim, kind, base=_ideal_field(data["ideal"], dim), stride=stride)
        if kind == "polytope":
            ineqs = data.get("inequalities")
            if not isinstance(ineqs, list) or not ineqs:
                raise InputError("polytope family needs a nonempty 'inequalities' list")
            normals, offsets = [], []
            for q in ineqs:
                if not isinstance(q, dict) or "normal" not in q or "offset" not in q:
                    raise InputError("each inequality needs 'normal' and 'offset'")
                normals.append(tuple(q["normal"]))
                offsets.append(q["offset"])
            return cls(dim, kind, normals=tuple(normals), offsets=tuple(offsets), stride=stride)
        if kind == "table":
            members = data.get("members")
            if not isinstance(members, list) or not members:
                raise InputError("table family needs a nonempty 'members' list")
            return cls(
                dim,
                kind,
                members=tuple(_ideal_field(m, dim) for m in members),
                extension=data.get("extension", "products"),
                stride=stride,
            )
        raise InputError(f"kind must be one of {', '.join(KINDS)}, got {kind!r}")


def _ideal_field(data, dim: int) -> MonomialIdeal:
    if isinstance(data, list):
        data = {"vars": dim, "gens": data}
    a = MonomialIdeal.from_json(data)
    if a.dim != dim:
        raise InputError(f"member ideal has {a.dim} vars, family has {dim}")
    return a


@lru_cache(maxsize=8192)
def _level(F: GradedFamily, k: int) -> MonomialIdeal:
    if F.kind == "powers":
        return power(F.base, k)
    if F.kind == "polytope":
        constraints = [(a, _ceil(k * b)) for a, b in zip(F.normals, F.offsets)]
        box = [
            max([_ceil(k * b / a[i]) for a, b in zip(F.normals, F.offsets) if a[i] > 0] or [0])
            for i in range(F.dim)
        ]
        return lattice_upset(F.dim, constraints, [max(x, 0) for x in box])
    r = len(F.members)
    if k <= r:
        return F.members[k - 1]
    if F.extension == "none":
        raise InputError(f"table family has no member a_{k} (only {r} entries, extension 'none')")
    out = product(_level(F, 1), _level(F, k - 1))
    for i in range(2, k // 2 + 1):
        out = ideal_sum(out, product(_level(F, i), _level(F, k - i)))
    return out


def family_member(F: GradedFamily, k: int) -> MonomialIdeal:
    return F.member(k)


def multiplicativity_violations(F: GradedFamily, up_to: int = MULTIPLICATIVITY_RANGE) -> list[tuple[int, int]]:
    """Pairs ``(k, l)`` with ``k + l <= up_to`` where ``a_k a_l`` escapes ``a_{k+l}``."""
    bad = []
    for k in range(1, up_to):
        for l in range(k, up_to - k + 1):
            try:
                ok = product(F.member(k), F.member(l)).issubset(F.member(k + l))
            except InputError:
                continue
            if not ok:
                bad.append((k, l))
    return bad


# ---------------------------------------------------------------------------
# asymptotic multiplier ideals


@dataclass
class AsymptoticResult:
    ideal: MonomialIdeal
    k0: int | None
    certified: bool
    chain: list[tuple[int, MonomialIdeal]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal.to_json(),
            "k0": self.k0,
            "certified": self.certified,
            "chain": [{"k": k, "ideal": J.to_json()} for k, J in self.chain],
        }


def doubling_chain(K: int) -> list[int]:
    ks = [1]
    while 2 * ks[-1] <= K:
        ks.append(2 * ks[-1])
    return ks


def asymptotic_mi(F: GradedFamily, c, K: int = DEFAULT_K, strict: bool = True) -> AsymptoticResult:
    """``J(c * ||F||)`` from the chain ``J((c/k) a_k)``, ``k = 1, 2, 4, ...``.

    Consecutive members are checked for ``J_k <= J_2k``.  The chain is
    stabilized at ``k0`` when every later member equals ``J_{k0}``; that needs
    at least two equal members at the top.  Without it, ``strict`` raises
    :class:`StabilizationNotCertified` (the best ideal rides on the
    exception); otherwise a warning is issued and the result is flagged.
    """
    c = as_rat(c)
    if c <= 0:
        raise InputError(f"c must be positive, got {c}")
    if not isinstance(K, int) or K < 2:
        raise InputError("K must be an integer >= 2")
    if F.max_level is not None:
        # a finite table only has members up to its length
        K = min(K, F.max_level)
        if K < 2:
            raise InputError("finite table has fewer than two members; no chain to certify")
    chain = []
    for k in doubling_chain(K):
        J = mi_ideal(F.member(k), c / k)
        if chain and not chain[-1][1].issubset(J):
            raise ChainPropertyViolation(f"J at k={chain[-1][0]} is not inside J at k={k}")
        chain.append((k, J))
    top = chain[-1][1]
    k0 = chain[-1][0]
    for k, J in reversed(chain):
        if J != top:
            break
        k0 = k
    certified = k0 < chain[-1][0]
    result = AsymptoticResult(top, k0 if certified else None, certified, chain)
    if not certified:
        msg = f"chain did not stabilize for k <= {K}"
        if strict:
            raise StabilizationNotCertified(msg, best=result)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    return result


def verify_asymptotic_subadditivity(F: GradedFamily, m: int, K: int = DEFAULT_K) -> Trial:
    """``J(m * ||F||) <= J(||F||)^m``; an uncertified chain is inconclusive."""
    inputs = {"family": F.to_json(), "m": m, "K": K}
    try:
        lhs = asymptotic_mi(F, m, K).ideal
        rhs = power(asymptotic_mi(F, 1, K).ideal, m)
    except StabilizationNotCertified as exc:
        return Trial("asym-subadd", inputs, INCONCLUSIVE, details={"reason": str(exc)})
    return inclusion_trial("asym-subadd", inputs, lhs, rhs)
