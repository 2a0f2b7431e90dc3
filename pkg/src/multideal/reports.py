"""Trial outcomes and campaign reports.

A failed check is data: the trial keeps its inputs, both sides and a witness
monomial, and can be replayed with :func:`multideal.verify.recheck`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

OK = "ok"
VIOLATION = "violation"
VACUOUS = "vacuous"
INCONCLUSIVE = "inconclusive"


def _json(x):
    return x.to_json() if hasattr(x, "to_json") else x


@dataclass
class Trial:
    check: str
    inputs: dict
    outcome: str
    lhs: Any = None
    rhs: Any = None
    witness: tuple | None = None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool | None:
        if self.outcome in (VACUOUS, INCONCLUSIVE):
            return None
        return self.outcome == OK

    def to_json(self) -> dict:
        out = {"check": self.check, "inputs": self.inputs, "outcome": self.outcome}
        if self.lhs is not None:
            out["lhs"] = _json(self.lhs)
        if self.rhs is not None:
            out["rhs"] = _json(self.rhs)
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.details:
            out["details"] = self.details
        return out


def inclusion_trial(check: str, inputs: dict, lhs, rhs, **details) -> Trial:
    """Trial for ``lhs <= rhs``; the witness is a generator of lhs outside rhs."""
    w = lhs.witness_outside(rhs)
    return Trial(check, inputs, OK if w is None else VIOLATION, lhs, rhs, w, details)


def equality_trial(check: str, inputs: dict, lhs, rhs, **details) -> Trial:
    w = lhs.witness_outside(rhs)
    if w is None:
        w = rhs.witness_outside(lhs)
    return Trial(check, inputs, OK if lhs == rhs else VIOLATION, lhs, rhs, w, details)


@dataclass
class VerificationReport:
    check: str
    trials: int
    violations: list[dict]
    seed: int | None
    params: dict = field(default_factory=dict)
    vacuous: int = 0
    inconclusive: int = 0
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "PASS" if not self.violations else "FAIL"

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "check": self.check,
            "trials": self.trials,
            "violations": self.violations,
            "seed": self.seed,
            "status": self.status,
            "params": self.params,
            "vacuous": self.vacuous,
            "inconclusive": self.inconclusive,
        }
        # wall time is excluded by default so reports are byte-reproducible
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    @classmethod
    def from_trials(cls, check, trials, seed, params, elapsed=0.0) -> "VerificationReport":
        return cls(
            check=check,
            trials=len(trials),
            violations=[t.to_json() for t in trials if t.outcome == VIOLATION],
            seed=seed,
            params=params,
            vacuous=sum(t.outcome == VACUOUS for t in trials),
            inconclusive=sum(t.outcome == INCONCLUSIVE for t in trials),
            elapsed=elapsed,
        )
