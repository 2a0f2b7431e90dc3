"""Volumes and multiplicities of graded families in the local monomial model.

Sections of ``kL`` become standard monomials of ``a_k`` and ``h^0`` becomes
colength, so the volume of a family is ``lim n! colength(a_k) / k^n``.  The
moving self-intersection ``(kL)^[n]`` becomes the Samuel multiplicity
``e(a_k) = n! covol(Newt(a_k))``.  This is a modeling transposition; the two
routes (lattice counting and covolume) are computed independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .asymptotic import DEFAULT_K, GradedFamily, asymptotic_mi
from .errors import ApproximationNotReached, InfiniteVolume, InputError, StabilizationNotCertified
from .ideals import MonomialIdeal, colength, power, region
from .polyhedra import INF, as_rat, covolume, rat_str
from .reports import OK, VIOLATION, Trial


def multiplicity(a: MonomialIdeal):
    """``e(a) = n! * covolume``; ``math.inf`` unless ``a`` is primary."""
    v = covolume(region(a))
    return INF if v == INF else math.factorial(a.dim) * v


def _primary_member(F: GradedFamily, k: int) -> MonomialIdeal:
    a = F.member(k)
    if not a.is_primary():
        raise InfiniteVolume(f"a_{k} = {a} is not primary to the maximal ideal")
    return a


@dataclass
class VolumeEstimate:
    dim: int
    entries: list[tuple[int, int, Fraction]]
    exact_limit: Fraction | None
    lower: Fraction
    upper: Fraction
    multiplicities: list[tuple[int, Fraction]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "vars": self.dim,
            "sequence": [
                {"k": k, "colength": col, "normalized": rat_str(x)} for k, col, x in self.entries
            ],
            "multiplicities": [{"k": k, "normalized": rat_str(x)} for k, x in self.multiplicities],
            "exact_limit": None if self.exact_limit is None else rat_str(self.exact_limit),
            "lower": rat_str(self.lower),
            "upper": rat_str(self.upper),
        }

    def table(self) -> str:
        lines = [f"{'k':>4}  {'colength':>10}  {'n!col/k^n':>14}  {'e(a_k)/k^n':>14}"]
        mult = dict(self.multiplicities)
        for k, col, x in self.entries:
            lines.append(f"{k:>4}  {col:>10}  {float(x):>14.6f}  {float(mult[k]):>14.6f}")
        limit = "unknown" if self.exact_limit is None else str(self.exact_limit)
        lines.append(f"exact limit: {limit}   bracket: [{self.lower}, {self.upper}]")
        return "\n".join(lines)


def moving_sequence(F: GradedFamily, k_max: int) -> list[tuple[int, Fraction]]:
    """``(k, e(a_k) / k^n)`` for ``k = 1..k_max``."""
    n = F.dim
    return [(k, multiplicity(_primary_member(F, k)) / k**n) for k in range(1, k_max + 1)]


def exact_volume(F: GradedFamily) -> Fraction | None:
    R = F.limit_region()
    if R is None:
        return None
    return math.factorial(F.dim) * covolume(R)


def volume(F: GradedFamily, k_max: int) -> VolumeEstimate:
    """Normalized colength sequence with brackets for the volume.

    Each normalized colength dominates ``e(a_k)/k^n``, which dominates the
    volume, so ``upper`` is the least multiplicity ratio seen.  ``lower`` is
    the exact limit when the family has a closed-form limit region, else 0.
    """
    n = F.dim
    fact = math.factorial(n)
    entries = []
    for k in range(1, k_max + 1):
        col = colength(_primary_member(F, k))
        entries.append((k, col, Fraction(fact * col, k**n)))
    mult = moving_sequence(F, k_max)
    limit = exact_volume(F)
    upper = min(x for _, x in mult)
    lower = limit if limit is not None else Fraction(0)
    return VolumeEstimate(n, entries, limit, lower, upper, mult)


# ---------------------------------------------------------------------------
# Fujita-type approximation


@dataclass
class FujitaCertificate:
    p: int
    family: dict
    truncated: MonomialIdeal
    achieved: Fraction
    target: Fraction
    target_kind: str
    epsilon: Fraction
    asymptotic: MonomialIdeal | None = None
    base_in_asymptotic: bool | None = None
    asymptotic_in_power: bool | None = None

    @property
    def gap(self) -> Fraction:
        return self.achieved - self.target

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "family": self.family,
            "truncated": {"generator": self.truncated.to_json(), "description": f"powers of a_{self.p}"},
            "achieved": rat_str(self.achieved),
            "target": rat_str(self.target),
            "target_kind": self.target_kind,
            "epsilon": rat_str(self.epsilon),
            "gap": rat_str(self.gap),
            "asymptotic_ideal": None if self.asymptotic is None else self.asymptotic.to_json(),
            "base_in_asymptotic": self.base_in_asymptotic,
            "asymptotic_in_power": self.asymptotic_in_power,
        }


def _certificate(F, p, achieved, target, kind, eps, K) -> FujitaCertificate:
    a_p = F.member(p)
    cert = FujitaCertificate(p, F.to_json(), a_p, achieved, target, kind, eps)
    try:
        J1 = asymptotic_mi(F, 1, K).ideal
        Jp = asymptotic_mi(F, p, K).ideal
    except (StabilizationNotCertified, InputError):
        return cert
    cert.asymptotic = J1
    cert.base_in_asymptotic = a_p.issubset(Jp)
    cert.asymptotic_in_power = Jp.issubset(power(J1, p))
    return cert


def fujita_approximation(F: GradedFamily, eps, k_max: int = 16, K: int = DEFAULT_K) -> FujitaCertificate:
    """Smallest ``p <= k_max`` with ``e(a_p)/p^n - target <= eps``.

    The target is the exact volume when known; otherwise the least
    ``e(a_k)/k^n`` over ``k <= k_max``.  In this model the approximant sits
    above the volume: ideals shrink where section spaces grow.
    """
    eps = as_rat(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    seq = moving_sequence(F, k_max)
    limit = exact_volume(F)
    if limit is not None:
        target, kind = limit, "exact"
    else:
        target, kind = min(x for _, x in seq), "inf-multiplicity"
    for p, x in seq:
        if x - target <= eps:
            return _certificate(F, p, x, target, kind, eps, K)
    p, x = min(seq, key=lambda t: (t[1], t[0]))
    best = _certificate(F, p, x, target, kind, eps, K)
    raise ApproximationNotReached(f"no p <= {k_max} within {eps} of {target}", best=best)


def verify_certificate(cert: FujitaCertificate) -> bool:
    """Recompute the certificate from its family description."""
    F = GradedFamily.from_json(cert.family)
    a_p = F.member(cert.p)
    achieved = multiplicity(a_p) / cert.p**F.dim
    checks = [
        a_p == cert.truncated,
        achieved == cert.achieved,
        cert.achieved - cert.target <= cert.epsilon,
        cert.achieved >= cert.target,
    ]
    if cert.target_kind == "exact":
        checks.append(exact_volume(F) == cert.target)
    if cert.base_in_asymptotic is not None:
        checks += [cert.base_in_asymptotic, cert.asymptotic_in_power]
    return all(checks)


def check_volume_consistency(a: MonomialIdeal, m: int = 40):
    """``|n! colength(a^m)/m^n - e(a)| <= e(a)/10``, plus ``covol <= colength``."""
    n = a.dim
    e = multiplicity(a)
    normalized = Fraction(math.factorial(n) * colength(power(a, m)), m**n)
    ok = abs(normalized - e) <= e / 10 and normalized >= e
    return Trial(
        "volume-consistency",
        {"a": a.to_json(), "m": m},
        OK if ok else VIOLATION,
        details={"multiplicity": rat_str(e), "normalized_colength": rat_str(normalized)},
    )
