"""Command-line front end: ``mi <verb> ...``.

Every run prints one JSON document ``{"verb", "config", "result"}`` on
standard output (or a plain-text rendering with ``--text``).  Exit status is
0 on success, 1 when a verification campaign records a violation and 2 on
input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .asymptotic import DEFAULT_K, GradedFamily, asymptotic_mi
from .errors import ApproximationNotReached, InputError, StabilizationNotCertified
from .ideals import MonomialIdeal
from .multiplier import SncDivisor, lct, mi_ideal, mi_mixed, mi_snc
from .polyhedra import as_rat, rat_str
from .verify import CHECKS, resolve_params, run_campaign, run_subadditivity_grid
from .volume import fujita_approximation, volume

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path: str, what: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {what} file {path!r}: {exc.msg} (line {exc.lineno})") from None


def _positive_rat(text: str, name: str):
    c = as_rat(text)
    if c <= 0:
        raise InputError(f"--{name} must be positive, got {text}")
    return c


def _positive_int(value: int, name: str) -> int:
    if value < 1:
        raise InputError(f"--{name} must be a positive integer, got {value}")
    return value


def _workers(requested: int | None) -> int:
    cap = os.environ.get("MI_WORKERS")
    try:
        cap = int(cap) if cap is not None else None
    except ValueError:
        raise InputError("MI_WORKERS must be an integer") from None
    if requested is None:
        return max(1, cap or 1)
    return max(1, min(requested, cap) if cap else requested)


# ---------------------------------------------------------------------------
# verbs; each returns (config, result, text, exit code)


def _cmd_ideal(args):
    a = MonomialIdeal.from_json(_load(args.input, "ideal"))
    c = _positive_rat(args.c, "c")
    J = mi_ideal(a, c)
    config = {"input": args.input, "ideal": a.to_json(), "c": rat_str(c)}
    return config, J.to_json(), f"J({c} * {a}) = {J}", EXIT_OK


def _cmd_divisor(args):
    D = SncDivisor.from_json(_load(args.input, "divisor"))
    J = mi_snc(D)
    return {"input": args.input, "divisor": D.to_json()}, J.to_json(), f"J(D) = {J}", EXIT_OK


def _cmd_mixed(args):
    a = MonomialIdeal.from_json(_load(args.input, "ideal"))
    b = MonomialIdeal.from_json(_load(args.second, "ideal"))
    if a.dim != b.dim:
        raise InputError(f"dimension mismatch: {args.input} has {a.dim} vars, {args.second} has {b.dim}")
    c, d = _positive_rat(args.c, "c"), _positive_rat(args.d, "d")
    J = mi_mixed(a, c, b, d)
    config = {"input": args.input, "second": args.second, "a": a.to_json(), "b": b.to_json(), "c": rat_str(c), "d": rat_str(d)}
    return config, J.to_json(), f"J(({c} * {a}) ({d} * {b})) = {J}", EXIT_OK


def _cmd_lct(args):
    a = MonomialIdeal.from_json(_load(args.input, "ideal"))
    t = lct(a)
    return {"input": args.input, "ideal": a.to_json()}, {"lct": rat_str(t)}, f"lct{a} = {rat_str(t)}", EXIT_OK


def _family(args) -> GradedFamily:
    return GradedFamily.from_json(_load(args.input, "family"))


def _cmd_asym(args):
    F = _family(args)
    c = _positive_rat(args.c, "c")
    K = args.kmax if args.kmax is not None else DEFAULT_K
    if K < 2:
        raise InputError("--kmax must be at least 2 for the doubling chain")
    config = {"input": args.input, "family": F.to_json(), "c": rat_str(c), "kmax": K}
    try:
        res = asymptotic_mi(F, c, K)
    except StabilizationNotCertified as exc:
        print(f"warning: {exc}", file=sys.stderr)
        res = exc.best
    status = f"k0 = {res.k0}" if res.certified else "NOT certified"
    return config, res.to_json(), f"J({c} * ||F||) = {res.ideal}  ({status})", EXIT_OK


def _cmd_volume(args):
    F = _family(args)
    k_max = _positive_int(args.kmax if args.kmax is not None else 12, "kmax")
    est = volume(F, k_max)
    return {"input": args.input, "family": F.to_json(), "kmax": k_max}, est.to_json(), est.table(), EXIT_OK


def _cmd_fujita(args):
    F = _family(args)
    eps = _positive_rat(args.eps, "eps")
    k_max = _positive_int(args.kmax if args.kmax is not None else 16, "kmax")
    config = {"input": args.input, "family": F.to_json(), "eps": rat_str(eps), "kmax": k_max}
    try:
        cert = fujita_approximation(F, eps, k_max)
        reached = True
    except ApproximationNotReached as exc:
        print(f"warning: {exc}", file=sys.stderr)
        cert, reached = exc.best, False
    result = dict(cert.to_json(), reached=reached)
    text = (
        f"p = {cert.p}: e(a_p)/p^n = {cert.achieved}, target = {cert.target} ({cert.target_kind}),"
        f" gap = {cert.gap} {'<=' if reached else '>'} {eps}"
    )
    return config, result, text, EXIT_OK


def _cmd_verify(args):
    check = args.check
    workers = _workers(args.workers)
    trials = _positive_int(args.trials, "trials")
    if args.exhaustive:
        if check != "subadd":
            raise InputError("--exhaustive is only available for subadd")
        n = args.vars or 2
        if n != 2:
            raise InputError("--exhaustive runs in vars = 2 only")
        report = run_subadditivity_grid(n, args.max_exp if args.max_exp is not None else 4, args.max_gens or 3, workers)
    else:
        overrides = {"vars": args.vars, "max_exp": args.max_exp, "max_gens": args.max_gens}
        resolve_params(check, **overrides)
        report = run_campaign(check, trials, args.seed, workers, **overrides)
    print(f"{check}: {report.trials} trials in {report.elapsed:.2f} s on {workers} worker(s)", file=sys.stderr)
    config = {"check": check, "trials": trials, "seed": args.seed, "exhaustive": args.exhaustive, "params": report.params}
    text = (
        f"{report.check}: {report.status}  trials={report.trials}  violations={len(report.violations)}"
        f"  vacuous={report.vacuous}  inconclusive={report.inconclusive}"
    )
    return config, report.to_json(timing=args.timing), text, EXIT_OK if report.status == "PASS" else EXIT_VIOLATION


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mi", description="Multiplier ideals of monomial data, exactly.")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)
    sub.required = True

    def verb(name, help):
        q = sub.add_parser(name, help=help)
        q.add_argument("-i", "--input", required=True, help="JSON input file ('-' for stdin)")
        q.add_argument("--text", action="store_true", help="human-readable output")
        return q

    q = verb("ideal", "J(c * a) of a monomial ideal")
    q.add_argument("--c", default="1")
    verb("divisor", "J(D) of an SNC monomial divisor")
    q = verb("mixed", "J((c * a)(d * b))")
    q.add_argument("-j", "--second", required=True, help="JSON file with the second ideal")
    q.add_argument("--c", default="1")
    q.add_argument("--d", default="1")
    verb("lct", "log canonical threshold")
    q = verb("asym", "asymptotic multiplier ideal of a graded family")
    q.add_argument("--c", default="1")
    q.add_argument("--kmax", type=int, help=f"search bound K for the doubling chain (default {DEFAULT_K})")
    q = verb("volume", "volume of a graded family")
    q.add_argument("--kmax", type=int, help="last level k (default 12)")
    q = verb("fujita", "Fujita-type approximation certificate")
    q.add_argument("--eps", default="1/10")
    q.add_argument("--kmax", type=int, help="largest level p tried (default 16)")

    q = sub.add_parser("verify", help="run a verification campaign")
    q.add_argument("check", choices=CHECKS)
    q.add_argument("--vars", type=int)
    q.add_argument("--max-exp", type=int)
    q.add_argument("--max-gens", type=int)
    q.add_argument("--trials", type=int, default=1000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--workers", type=int, help="worker processes (capped by MI_WORKERS)")
    q.add_argument("--exhaustive", action="store_true", help="subadd only: the full grid instead of random trials")
    q.add_argument("--timing", action="store_true", help="include wall time in the report")
    q.add_argument("--text", action="store_true", help="human-readable output")
    return p


COMMANDS = {
    "ideal": _cmd_ideal,
    "divisor": _cmd_divisor,
    "mixed": _cmd_mixed,
    "lct": _cmd_lct,
    "asym": _cmd_asym,
    "volume": _cmd_volume,
    "fujita": _cmd_fujita,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config, result, text, code = COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.text:
        print(text)
    else:
        print(json.dumps({"verb": args.verb, "config": config, "result": result}))
    return code


if __name__ == "__main__":
    sys.exit(main())
