"""Executable checks of subadditivity, the product formula, restriction and
the diagonal argument, plus randomized and exhaustive campaigns over them.

Each check takes ideals and weights and returns a :class:`Trial`.  A campaign
draws instances from ``random.Random(f"{seed}:{index}")``, so a report does
not depend on how trials are scheduled across workers.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .asymptotic import DEFAULT_K, GradedFamily, verify_asymptotic_subadditivity
from .errors import InputError, RestrictionVanishes
from .ideals import (
    MonomialIdeal,
    diagonal_restrict,
    external_product,
    lift_first,
    lift_second,
    product,
    restrict,
)
from .multiplier import mi_from_resolution_2d, mi_ideal, mi_mixed, refine_fan_2d, smooth_fan
from .polyhedra import as_rat, rat_str
from .reports import OK, VACUOUS, VIOLATION, Trial, VerificationReport, equality_trial, inclusion_trial
from .volume import check_volume_consistency

WEIGHT_MENU = tuple(Fraction(x) for x in ("1/3", "1/2", "2/3", "1", "3/2", "2"))
GRID_WEIGHTS = tuple(Fraction(x) for x in ("1/2", "1", "3/2"))
STRATA = ("general", "primary", "principal", "non-primary", "unit")


def _pair_inputs(a, c, b, d) -> dict:
    return {"a": a.to_json(), "c": rat_str(c), "b": b.to_json(), "d": rat_str(d)}


# ---------------------------------------------------------------------------
# single checks


def verify_subadditivity(a: MonomialIdeal, b: MonomialIdeal, c=1, d=1) -> Trial:
    """``J((c a)(d b)) <= J(c a) J(d b)``."""
    c, d = as_rat(c), as_rat(d)
    lhs = mi_mixed(a, c, b, d)
    rhs = product(mi_ideal(a, c), mi_ideal(b, d))
    return inclusion_trial("subadd", _pair_inputs(a, c, b, d), lhs, rhs)


def verify_product_formula(a: MonomialIdeal, b: MonomialIdeal, c=1, d=1) -> Trial:
    """Equality ``J((c p1^-1 a)(d p2^-1 b)) = p1^-1 J(c a) * p2^-1 J(d b)``."""
    c, d = as_rat(c), as_rat(d)
    lhs = mi_mixed(lift_first(a, b.dim), c, lift_second(b, a.dim), d)
    rhs = external_product(mi_ideal(a, c), mi_ideal(b, d))
    return equality_trial("product", _pair_inputs(a, c, b, d), lhs, rhs)


def verify_restriction(a: MonomialIdeal, c, I) -> Trial:
    """``J(c * a|_Y) <= J(c * a)|_Y`` for ``Y = {x_i = 0 : i in I}``."""
    c = as_rat(c)
    I = sorted(set(I))
    inputs = {"a": a.to_json(), "c": rat_str(c), "subset": I}
    try:
        restricted = restrict(a, I)
    except RestrictionVanishes as exc:
        return Trial("restrict", inputs, VACUOUS, details={"reason": str(exc)})
    lhs = mi_ideal(restricted, c)
    rhs = restrict(mi_ideal(a, c), I)
    return inclusion_trial("restrict", inputs, lhs, rhs)


def verify_diagonal_pipeline(a: MonomialIdeal, b: MonomialIdeal, c=1, d=1) -> Trial:
    """The diagonal argument run as computations on ``X x X``.

    1. product formula: ``J_XxX = p1^-1 J(c a) * p2^-1 J(d b)``;
    2. restriction to the diagonal: ``J((c a)(d b)) <= J_XxX|_diag``;
    3. ``J_XxX|_diag = J(c a) J(d b)``, hence subadditivity.
    """
    c, d = as_rat(c), as_rat(d)
    n = a.dim
    if b.dim != n:
        raise InputError(f"dimension mismatch: {a.dim} vs {b.dim} vars")
    pa, pb = mi_ideal(a, c), mi_ideal(b, d)
    on_product = mi_mixed(lift_first(a, n), c, lift_second(b, n), d)
    step1 = on_product == external_product(pa, pb)
    # the pulled-back pair restricts to the original pair on the diagonal
    step0 = diagonal_restrict(lift_first(a, n)) == a and diagonal_restrict(lift_second(b, n)) == b
    lhs = mi_mixed(a, c, b, d)
    restricted = diagonal_restrict(on_product)
    step2 = lhs.issubset(restricted)
    rhs = product(pa, pb)
    step3 = step2 and restricted.issubset(rhs) and lhs.issubset(rhs)
    direct = verify_subadditivity(a, b, c, d).outcome == OK
    steps = {
        "pair_restricts": step0,
        "product_formula": step1,
        "diagonal_inclusion": step2,
        "subadditivity": step3,
        "matches_direct": step3 == direct,
    }
    ok = all(steps.values())
    witness = lhs.witness_outside(restricted) or lhs.witness_outside(rhs)
    return Trial("diagonal", _pair_inputs(a, c, b, d), OK if ok else VIOLATION, lhs, rhs, witness, steps)


def verify_resolution_oracle(a: MonomialIdeal, c) -> Trial:
    """Facet criterion against the plane resolution, exact equality."""
    c = as_rat(c)
    fan = refine_fan_2d(a)
    return equality_trial(
        "oracle",
        {"a": a.to_json(), "c": rat_str(c)},
        mi_ideal(a, c),
        mi_from_resolution_2d(a, c, fan),
        fan=[list(r) for r in fan.rays],
    )


def verify_resolution_independence(a: MonomialIdeal, c, extra_rays) -> Trial:
    """Adding rays (and re-smoothing) leaves the pushed-forward ideal alone."""
    c = as_rat(c)
    base = refine_fan_2d(a)
    finer = smooth_fan(list(base.rays) + [tuple(r) for r in extra_rays])
    return equality_trial(
        "resolution",
        {"a": a.to_json(), "c": rat_str(c), "extra": [list(r) for r in extra_rays]},
        mi_from_resolution_2d(a, c, base),
        mi_from_resolution_2d(a, c, finer),
        rays=len(finer.rays),
    )


# ---------------------------------------------------------------------------
# sampling


def random_ideal(rng: random.Random, n: int, max_exp: int, max_gens: int = 5, stratum: str = "general") -> MonomialIdeal:
    """A random monomial ideal from one of the sampling strata."""
    if stratum == "unit":
        return MonomialIdeal.unit(n)

    def point():
        return tuple(rng.randint(0, max_exp) for _ in range(n))

    if stratum == "principal":
        return MonomialIdeal(n, (point(),))
    count = rng.randint(1, max_gens)
    gens = [point() for _ in range(count)]
    if stratum == "primary":
        pures = [tuple(rng.randint(1, max(1, max_exp)) if i == j else 0 for j in range(n)) for i in range(n)]
        gens = pures + gens[: max(0, max_gens - n)]
    elif stratum == "non-primary":
        # a common factor x_1 rules out pure powers of the other variables
        gens = [(max(g[0], 1),) + g[1:] for g in gens]
    return MonomialIdeal(n, tuple(gens))


def _rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def _stratum(index: int) -> str:
    return STRATA[index % len(STRATA)]


def _gen_pair(rng, index, p):
    s = _stratum(index)
    n, e, g = p["vars"], p["max_exp"], p["max_gens"]
    a = random_ideal(rng, n, e, g, "general" if s == "unit" else s)
    b = random_ideal(rng, n, e, g, s if s == "unit" else "general")
    return _pair_inputs(a, rng.choice(WEIGHT_MENU), b, rng.choice(WEIGHT_MENU))


def _gen_product(rng, index, p):
    s = _stratum(index)
    n, e, g = p["vars"], p["max_exp"], p["max_gens"]
    m = p.get("vars2", n)
    a = random_ideal(rng, n, e, g, "general" if s == "unit" else s)
    b = random_ideal(rng, m, e, g, s if s == "unit" else "general")
    return _pair_inputs(a, rng.choice(WEIGHT_MENU), b, rng.choice(WEIGHT_MENU))


def _gen_restrict(rng, index, p):
    n = p["vars"]
    a = random_ideal(rng, n, p["max_exp"], p["max_gens"], _stratum(index))
    size = rng.randint(1, n - 1)
    subset = sorted(rng.sample(range(n), size))
    if index % 2 == 0:
        # keep one generator off the subspace so most trials are not vacuous
        gens = list(a.gens)
        j = rng.randrange(len(gens))
        gens[j] = tuple(0 if i in subset else x for i, x in enumerate(gens[j]))
        a = MonomialIdeal(n, tuple(gens))
    return {"a": a.to_json(), "c": rat_str(rng.choice(WEIGHT_MENU)), "subset": subset}


def _gen_oracle(rng, index, p):
    a = random_ideal(rng, 2, p["max_exp"], p["max_gens"], _stratum(index))
    return {"a": a.to_json()}


def _gen_resolution(rng, index, p):
    a = random_ideal(rng, 2, p["max_exp"], p["max_gens"], _stratum(index))
    extra = []
    while len(extra) < p.get("extra_rays", 5):
        r = (rng.randint(0, 12), rng.randint(0, 12))
        if any(r):
            extra.append(list(r))
    return {"a": a.to_json(), "c": rat_str(rng.choice(WEIGHT_MENU)), "extra": extra}


def random_family(rng: random.Random, n: int, max_exp: int, index: int = 0) -> GradedFamily:
    """A primary graded family: powers, polytope or two-term table."""
    kind = ("powers", "polytope", "table")[index % 3]
    if kind == "powers":
        return GradedFamily.powers(random_ideal(rng, n, max_exp, 4, "primary"))
    if kind == "polytope":
        rows = rng.randint(1, 2)
        normals = [tuple(rng.randint(1, 3) for _ in range(n)) for _ in range(rows)]
        offsets = [rng.randint(1, max_exp) for _ in range(rows)]
        return GradedFamily.polytope(normals, offsets, n)
    a1 = random_ideal(rng, n, max_exp, 3, "primary")
    extra = random_ideal(rng, n, 2 * max_exp, 2, "general")
    return GradedFamily.table([a1, product(a1, a1) + extra])


def _gen_asym(rng, index, p):
    F = random_family(rng, p["vars"], p["max_exp"], index)
    return {"family": F.to_json(), "m": rng.randint(1, p.get("max_m", 4)), "K": p.get("K", DEFAULT_K)}


def _gen_volume(rng, index, p):
    return {"a": random_ideal(rng, 2, p["max_exp"], p["max_gens"], "primary").to_json(), "m": p.get("m", 40)}


# ---------------------------------------------------------------------------
# evaluation of serialized instances


def _ideal(d) -> MonomialIdeal:
    return MonomialIdeal.from_json(d)


def _eval_oracle(x):
    # one trial per ideal covers the whole weight menu
    a = _ideal(x["a"])
    trials = [verify_resolution_oracle(a, c) for c in WEIGHT_MENU]
    bad = [t for t in trials if t.outcome != OK]
    if bad:
        t = bad[0]
        t.inputs = dict(x, c=t.inputs["c"])
        return t
    return Trial("oracle", x, OK)


EVALUATORS: dict[str, Callable[[dict], Trial]] = {
    "subadd": lambda x: verify_subadditivity(_ideal(x["a"]), _ideal(x["b"]), x["c"], x["d"]),
    "product": lambda x: verify_product_formula(_ideal(x["a"]), _ideal(x["b"]), x["c"], x["d"]),
    "restrict": lambda x: verify_restriction(_ideal(x["a"]), x["c"], x["subset"]),
    "diagonal": lambda x: verify_diagonal_pipeline(_ideal(x["a"]), _ideal(x["b"]), x["c"], x["d"]),
    "asym-subadd": lambda x: verify_asymptotic_subadditivity(GradedFamily.from_json(x["family"]), x["m"], x["K"]),
    "volume-consistency": lambda x: check_volume_consistency(_ideal(x["a"]), x["m"]),
    "oracle": _eval_oracle,
    "resolution": lambda x: verify_resolution_independence(_ideal(x["a"]), x["c"], x["extra"]),
}

GENERATORS = {
    "subadd": _gen_pair,
    "product": _gen_product,
    "restrict": _gen_restrict,
    "diagonal": _gen_pair,
    "asym-subadd": _gen_asym,
    "volume-consistency": _gen_volume,
    "oracle": _gen_oracle,
    "resolution": _gen_resolution,
}

DEFAULT_PARAMS = {
    "subadd": {"vars": 2, "max_exp": 6, "max_gens": 5},
    "product": {"vars": 2, "vars2": 2, "max_exp": 6, "max_gens": 4},
    "restrict": {"vars": 3, "max_exp": 4, "max_gens": 5},
    "diagonal": {"vars": 2, "max_exp": 6, "max_gens": 4},
    "asym-subadd": {"vars": 2, "max_exp": 3, "max_m": 4, "K": DEFAULT_K},
    "volume-consistency": {"vars": 2, "max_exp": 6, "max_gens": 5, "m": 40},
    "oracle": {"vars": 2, "max_exp": 8, "max_gens": 5},
    "resolution": {"vars": 2, "max_exp": 8, "max_gens": 5, "extra_rays": 5},
}

CHECKS = tuple(EVALUATORS)


def evaluate(check: str, instance: dict) -> Trial:
    if check not in EVALUATORS:
        raise InputError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
    return EVALUATORS[check](instance)


def recheck(violation: dict) -> Trial:
    """Replay a violation record from a report."""
    return evaluate(violation["check"], violation["inputs"])


def _evaluate_packed(args):
    return evaluate(*args)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("MI_WORKERS", "1")))
    except ValueError:
        raise InputError("MI_WORKERS must be an integer") from None


def run_instances(check: str, instances: list[dict], seed=None, params=None, workers: int | None = None) -> VerificationReport:
    """Evaluate instances in order; results are independent of ``workers``."""
    workers = default_workers() if workers is None else workers
    start = time.perf_counter()
    if workers <= 1:
        trials = [evaluate(check, x) for x in instances]
    else:
        chunk = max(1, len(instances) // (8 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            trials = list(pool.map(_evaluate_packed, [(check, x) for x in instances], chunksize=chunk))
    return VerificationReport.from_trials(check, trials, seed, params or {}, time.perf_counter() - start)


def campaign_instances(check: str, trials: int, seed: int, params: dict) -> list[dict]:
    gen = GENERATORS[check]
    return [gen(_rng(seed, i), i, params) for i in range(trials)]


def resolve_params(check: str, **overrides) -> dict:
    if check not in DEFAULT_PARAMS:
        raise InputError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
    params = dict(DEFAULT_PARAMS[check])
    params.update({k: v for k, v in overrides.items() if v is not None})
    if params.get("vars", 1) < 1:
        raise InputError("vars must be a positive integer")
    if check == "restrict" and params["vars"] < 2:
        raise InputError("restrict needs vars >= 2")
    if check in ("oracle", "resolution", "volume-consistency") and params["vars"] != 2:
        raise InputError(f"{check} runs in vars = 2 only")
    if params.get("max_exp", 0) < 0:
        raise InputError("max-exp must be non-negative")
    return params


def run_campaign(check: str, trials: int, seed: int, workers: int | None = None, **overrides) -> VerificationReport:
    params = resolve_params(check, **overrides)
    instances = campaign_instances(check, trials, seed, params)
    return run_instances(check, instances, seed, params, workers)


@dataclass(frozen=True)
class CampaignConfig:
    """A reproducible campaign: check name, size, seed and parameter overrides."""

    check: str
    trials: int = 1000
    seed: int = 0
    workers: int | None = None
    overrides: dict = field(default_factory=dict)

    def params(self) -> dict:
        return resolve_params(self.check, **self.overrides)

    def run(self) -> VerificationReport:
        return run_campaign(self.check, self.trials, self.seed, self.workers, **self.overrides)


def ideal_grid(n: int, max_exp: int, max_gens: int) -> list[MonomialIdeal]:
    """Every ideal with at most ``max_gens`` generators of exponent <= ``max_exp``."""
    pts = list(itertools.product(range(max_exp + 1), repeat=n))
    found = set()
    for k in range(1, max_gens + 1):
        for gens in itertools.combinations(pts, k):
            a = MonomialIdeal._trusted(n, gens)
            if len(a.gens) == k:
                found.add(a)
    return sorted(found, key=lambda a: a.gens)


def subadditivity_grid(n: int = 2, max_exp: int = 4, max_gens: int = 3, weights=GRID_WEIGHTS) -> list[dict]:
    """Unordered pairs of weighted ideals; the mixed ideal is symmetric."""
    weighted = [(a, c) for a in ideal_grid(n, max_exp, max_gens) for c in weights]
    return [
        _pair_inputs(a, c, b, d)
        for i, (a, c) in enumerate(weighted)
        for (b, d) in weighted[i:]
    ]


def run_subadditivity_grid(n=2, max_exp=4, max_gens=3, workers=None) -> VerificationReport:
    params = {"vars": n, "max_exp": max_exp, "max_gens": max_gens, "weights": [rat_str(w) for w in GRID_WEIGHTS], "exhaustive": True}
    return run_instances("subadd", subadditivity_grid(n, max_exp, max_gens), None, params, workers)
