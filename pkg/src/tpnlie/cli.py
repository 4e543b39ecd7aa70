"""Command-line interface.

Exit codes: 0 affirmative, 1 mathematical negative, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import free_tp3
from .algebra_fd import (
    FdAlgebra,
    MissingProductError,
    Subspace,
    is_ideal,
    is_quasi_ideal,
    simplicity_probe,
    validate,
)
from .brackets import JacobianBracket, PolynomialModel, TableFormatError, WBracket
from .exact_poly import Derivation, PolynomialParseError, PolynomialRing
from .identities import (
    JACOBIAN_IDS,
    TRANSPOSED_POISSON_IDS,
    IdentityId,
    Sampler,
    parse_identity_list,
    verify_suite,
)

EXPECTED_RANK_C = 46
EXPECTED_RANK_C_PRIME = 47
DEFAULT_SEED = 42
SEED_ENV = "TPNLIE_SEED"


class UsageError(Exception):
    pass


def _emit(obj, fmt: str, text_lines):
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def cmd_free3(args) -> int:
    report = free_tp3.strong_membership_report(dedup=args.dedup)
    out = report.to_dict()
    counts = report.shape_counts
    member = report.strong_identity_member
    lines = [
        "free transposed Poisson 3-Lie algebra, degree-5 multilinear single-bracket component",
        f"monomials: {report.num_monomials} "
        + "(" + ", ".join(f"{k} {v}" for k, v in counts.items()) + ")",
        f"consequence rows: {report.raw_rows} raw, {report.dedup_rows} after dedup up to sign",
        f"rows in C: {report.matrix_rows}",
        f"rank(C)  = {report.rank_C}",
        f"rank(C') = {report.rank_C_prime}",
        "S row: " + ", ".join(f"{k}:{v}" for k, v in out["s_row"].items()),
        f"S in row space of C: {'yes' if member else 'no'}",
        f"strong condition: {'HOLDS' if member else 'FAILS'}",
    ]
    _emit(out, args.format, lines)
    ok = (
        report.rank_C == EXPECTED_RANK_C
        and report.rank_C_prime == EXPECTED_RANK_C_PRIME
        and not member
    )
    if not ok:
        print(
            f"unexpected result: rank_C={report.rank_C}, rank_C_prime={report.rank_C_prime}, "
            f"member={member}",
            file=sys.stderr,
        )
    return 0 if ok else 1


def _build_bracket(algebra: str, n: int, nvars):
    if n < 2:
        raise UsageError("--n must be at least 2")
    needed = n - 1 if algebra == "w" else n
    nvars = needed if nvars is None else nvars
    if nvars < needed:
        raise UsageError(f"the {algebra} bracket of arity {n} needs at least {needed} variables")
    ring = PolynomialRing.standard(nvars)
    model = PolynomialModel.coordinate(ring, needed)
    bracket = WBracket(model) if algebra == "w" else JacobianBracket(model)
    return ring, bracket


def cmd_verify(args) -> int:
    ring, bracket = _build_bracket(args.algebra, args.n, args.vars)
    universe = TRANSPOSED_POISSON_IDS if args.algebra == "w" else JACOBIAN_IDS
    try:
        ids = parse_identity_list(args.identities, universe)
        expect_fail = parse_identity_list(args.expect_fail or "", ())
    except ValueError as exc:
        raise UsageError(f"unknown identity: {exc}") from None
    if not ids:
        raise UsageError("no identities selected")
    for i in expect_fail:
        if i not in ids:
            ids.append(i)
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.max_degree < 0 or args.coeff_bound < 0:
        raise UsageError("--max-degree and --coeff-bound must be non-negative")
    if not 0 <= args.derivation < ring.nvars:
        raise UsageError(f"--derivation must index one of the {ring.nvars} variables")
    seed = _resolve_seed(args.seed)
    sampler = Sampler(seed=seed, max_degree=args.max_degree, coeff_bound=args.coeff_bound)
    D = Derivation.partial(ring, args.derivation)
    reports = verify_suite(bracket, ids, sampler, args.trials, derivation=D)

    summary = []
    all_ok = True
    for i in ids:
        mine = [r for r in reports if r.identity is i]
        held = sum(r.holds for r in mine)
        expected = "fail" if i in expect_fail else "hold"
        ok = held == len(mine) if expected == "hold" else held < len(mine)
        all_ok &= ok
        summary.append(
            {"identity": i.value, "expected": expected, "held": held, "trials": len(mine), "ok": ok}
        )
    out = {
        "algebra": args.algebra,
        "n": args.n,
        "vars": ring.nvars,
        "seed": seed,
        "trials": args.trials,
        "max_degree": args.max_degree,
        "coeff_bound": args.coeff_bound,
        "summary": summary,
        "passed": all_ok,
        "reports": [r.to_dict() for r in reports],
    }
    lines = [
        f"{args.algebra} bracket, arity {args.n}, Q[{', '.join(ring.variables)}], "
        f"seed {seed}, {args.trials} trials, degree <= {args.max_degree}"
    ]
    for row in summary:
        lines.append(
            f"  {row['identity']}: {row['held']}/{row['trials']} hold "
            f"(expected {row['expected']}) {'ok' if row['ok'] else 'MISMATCH'}"
        )
    lines.append(f"result: {'PASS' if all_ok else 'FAIL'}")
    _emit(out, args.format, lines)
    return 0 if all_ok else 1


def _load_json_file(path: str, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def cmd_fd(args) -> int:
    doc = _load_json_file(args.input, "algebra file")
    try:
        algebra = FdAlgebra.from_doc(doc)
    except TableFormatError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    out = {"input": os.path.basename(args.input), "check": args.check, "dimension": algebra.dimension, "arity": algebra.arity}

    if args.check == "validate":
        rep = validate(algebra)
        out["validation"] = rep.to_dict()
        lines = [f"{k}: {v}" for k, v in rep.to_dict().items() if k != "failures"]
        lines += [f"failure: {f}" for f in rep.failures]
        _emit(out, args.format, lines)
        return 0 if rep.ok else 1

    if args.check == "simple":
        rep = validate(algebra)
        seed = _resolve_seed(args.seed)
        probe = simplicity_probe(algebra, trials=args.trials, seed=seed)
        out["valid"] = rep.ok
        out["seed"] = seed
        out["probe"] = probe.to_dict()
        lines = [f"valid: {rep.ok}", f"verdict: {probe.verdict}", f"reason: {probe.reason}"]
        if probe.witness is not None:
            lines.append(f"witness: {json.dumps(probe.witness.to_json())}")
        _emit(out, args.format, lines)
        return 0 if rep.ok and probe.simple else 1

    if args.subspace is None:
        raise UsageError(f"--check {args.check} needs --subspace")
    rows = _load_json_file(args.subspace, "subspace file")
    try:
        s = Subspace.from_json(rows, algebra.dimension)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"{args.subspace}: {exc}") from None
    out["subspace"] = s.to_json()
    if args.check == "ideal":
        result = is_ideal(algebra, s)
        out["is_ideal"] = result
        lines = [f"subspace dimension: {s.dim}", f"ideal: {result}"]
    else:
        try:
            result = is_quasi_ideal(algebra, s)
        except MissingProductError as exc:
            raise UsageError(str(exc)) from None
        out["is_quasi_ideal"] = result
        lines = [f"subspace dimension: {s.dim}", f"quasi-ideal: {result}"]
    _emit(out, args.format, lines)
    return 0 if result else 1


def cmd_parse_check(args) -> int:
    nvars = args.vars
    if nvars is None:
        found = [int(m) for m in re.findall(r"\bx(\d+)\b", args.expression)]
        nvars = max(found, default=0)
    ring = PolynomialRing.standard(nvars)
    try:
        p = ring.parse(args.expression)
    except PolynomialParseError as exc:
        raise UsageError(str(exc)) from None
    out = {
        "input": args.expression,
        "vars": nvars,
        "canonical": str(p),
        "terms": len(p),
        "total_degree": p.total_degree(),
    }
    _emit(out, args.format, [out["canonical"]])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tpnlie",
        description="Exact computations for n-Lie and transposed Poisson n-Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("free3", help="rank computation for the free transposed Poisson 3-Lie algebra")
    add_format(p)
    p.add_argument("--dedup", action="store_true", help="rank the dedup-up-to-sign matrix")
    p.set_defaults(func=cmd_free3)

    p = sub.add_parser("verify", help="sampled identity checks on a polynomial model")
    p.add_argument("--algebra", choices=["w", "jac"], required=True)
    p.add_argument("--n", type=int, required=True, help="bracket arity")
    p.add_argument("--vars", type=int, default=None, help="number of ring variables")
    p.add_argument("--identities", default="all", help="comma-separated identity names or 'all'")
    p.add_argument("--expect-fail", default="", help="identities expected to fail on some trial")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--coeff-bound", type=int, default=5)
    p.add_argument("--derivation", type=int, default=0, help="variable index of the mu derivation")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fd", help="finite-dimensional algebra predicates")
    p.add_argument("--input", required=True)
    p.add_argument("--check", choices=["validate", "simple", "ideal", "quasi-ideal"], required=True)
    p.add_argument("--subspace", default=None)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    add_format(p)
    p.set_defaults(func=cmd_fd)

    p = sub.add_parser("parse-check", help="parse a polynomial and print its canonical form")
    p.add_argument("expression")
    p.add_argument("--vars", type=int, default=None)
    add_format(p)
    p.set_defaults(func=cmd_parse_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tpnlie {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
