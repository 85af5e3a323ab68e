"""Command-line front end.

Subcommands: pell, factor, lehmer, identities, verify, bounds.  Structured
output goes to stdout as canonical JSON; diagnostics go to stderr.  Exit
status: 0 success / verified, 1 verification failure or undecided results,
2 invalid arguments.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from .arith import FactorPolicy, factor
from .lehmer import LehmerStatus, lehmer_check
from .sequences import digits10, pell_pair
from .verifier import (
    FactorCache,
    bound_chain,
    canonical_json,
    run_identity_suite,
    verify_range,
)

CACHE_ENV_VAR = "PELLCHECK_CACHE"
DEFAULT_INDEX_CAP = 1_000_000


def _big_str(v: int) -> str:
    """str() for integers that may exceed the int-to-str guard."""
    if not hasattr(sys, "get_int_max_str_digits"):
        return str(v)
    limit = sys.get_int_max_str_digits()
    try:
        sys.set_int_max_str_digits(max(limit, digits10(v) + 16))
        return str(v)
    finally:
        sys.set_int_max_str_digits(limit)


def _policy_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--trial-bound", type=int, default=1_000_000,
                     help="largest trial-division prime")
    sub.add_argument("--rho-budget", type=int, default=4_000,
                     help="per-attempt rho budget in ms")
    sub.add_argument("--max-total", type=int, default=120_000,
                     help="overall factoring budget in ms")
    sub.add_argument("--pm1-b1", type=int, default=1_000_000,
                     help="p-1 stage-1 bound (0 disables)")
    sub.add_argument("--pm1-b2", type=int, default=2_000_000_000,
                     help="p-1 stage-2 bound (0 disables)")
    sub.add_argument("--seed", type=int, default=1,
                     help="seed for pseudo-random parameter choices")


def _policy_from(args: argparse.Namespace) -> FactorPolicy:
    return FactorPolicy(
        trial_bound=args.trial_bound,
        rho_budget_ms=args.rho_budget,
        max_total_ms=args.max_total,
        pm1_b1=args.pm1_b1,
        pm1_b2=args.pm1_b2,
        seed=args.seed,
    )


def _format_arg(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("human", "structured"),
                     default="human", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pellcheck",
        description="Verify that Pell numbers never have the Lehmer property.",
    )
    parser.add_argument("--index-cap", type=int, default=DEFAULT_INDEX_CAP,
                        help="refuse indices above this cap")
    commands = parser.add_subparsers(dest="command", required=True)

    p_pell = commands.add_parser("pell", help="print P_n")
    p_pell.add_argument("--n", type=int, required=True)
    p_pell.add_argument("--pair", action="store_true",
                        help="print the companion value too")

    p_factor = commands.add_parser("factor", help="factor P_n or a raw value")
    group = p_factor.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="Pell index to factor")
    group.add_argument("--value", type=int, help="raw integer to factor")
    _policy_args(p_factor)
    _format_arg(p_factor)

    p_lehmer = commands.add_parser("lehmer",
                                   help="Lehmer check for P_n or a raw value")
    group = p_lehmer.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="Pell index to check")
    group.add_argument("--value", type=int, help="raw candidate to check")
    _policy_args(p_lehmer)
    _format_arg(p_lehmer)

    p_ident = commands.add_parser("identities",
                                  help="run the identity sweep up to --n-max")
    p_ident.add_argument("--n-max", type=int, required=True)
    _format_arg(p_ident)

    p_verify = commands.add_parser("verify",
                                   help="verify indices 1..n-max")
    p_verify.add_argument("--n-max", type=int, default=200)
    p_verify.add_argument("--cache", type=str,
                          default=os.environ.get(CACHE_ENV_VAR),
                          help="factor cache file (default from "
                               f"${CACHE_ENV_VAR})")
    p_verify.add_argument("--verbose", "-v", action="store_true",
                          help="per-index progress on stderr")
    _policy_args(p_verify)
    _format_arg(p_verify)

    p_bounds = commands.add_parser("bounds",
                                   help="evaluate the bound chain at (n, k)")
    p_bounds.add_argument("--n", type=int, required=True)
    p_bounds.add_argument("--k", type=int, default=15)
    _format_arg(p_bounds)

    return parser


def _check_index(parser: argparse.ArgumentParser, name: str, value: int,
                 cap: int) -> None:
    if value < 0:
        parser.error(f"{name} must be >= 0, got {value}")
    if value > cap:
        parser.error(f"{name}={value} exceeds --index-cap {cap}")


def _cmd_pell(args: argparse.Namespace) -> int:
    pair = pell_pair(args.n)
    if args.pair:
        print(_big_str(pair.p))
        print(_big_str(pair.q))
    else:
        print(_big_str(pair.p))
    return 0


def _factorization_dict(f) -> dict:
    return {
        "target": f.target,
        "factors": [[p, e] for p, e in f.factors],
        "cofactor": f.cofactor,
        "complete": f.complete,
    }


def _cmd_factor(args: argparse.Namespace) -> int:
    target = pell_pair(args.n).p if args.n is not None else args.value
    if target < 1:
        flag = "--n" if args.n is not None else "--value"
        print(f"error: {flag} gives target {target}; need a positive integer",
              file=sys.stderr)
        return 2
    f = factor(target, _policy_from(args))
    if args.format == "structured":
        sys.stdout.write(canonical_json(_factorization_dict(f)))
        return 0
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in f.factors]
    if f.cofactor != 1:
        parts.append(f"[composite cofactor {_big_str(f.cofactor)}]")
    rhs = " * ".join(parts) if parts else "1"
    status = "complete" if f.complete else "INCOMPLETE"
    print(f"{_big_str(target)} = {rhs}  ({status})")
    return 0


def _cmd_lehmer(args: argparse.Namespace) -> int:
    target = pell_pair(args.n).p if args.n is not None else args.value
    if target < 1:
        flag = "--n" if args.n is not None else "--value"
        print(f"error: {flag} gives target {target}; need a positive integer",
              file=sys.stderr)
        return 2
    verdict = lehmer_check(target, _policy_from(args))
    if args.format == "structured":
        payload = {
            "target": verdict.target,
            "status": verdict.status.value,
            "reason": verdict.reason.value,
            "evidence": verdict.evidence,
        }
        sys.stdout.write(canonical_json(payload))
    else:
        extra = f", evidence {verdict.evidence}" if verdict.evidence else ""
        print(f"{_big_str(target)}: {verdict.status.value} "
              f"({verdict.reason.value}{extra})")
    if verdict.status == LehmerStatus.UNDECIDED:
        return 1
    return 0


def _cmd_identities(args: argparse.Namespace) -> int:
    result = run_identity_suite(args.n_max)
    if args.format == "structured":
        payload = {
            "n_max": result.n_max,
            "nu2_n_max": result.nu2_n_max,
            "pq_relation_ok": result.pq_relation_ok,
            "split_product_ok": result.split_product_ok,
            "nu2_lemma_ok": result.nu2_lemma_ok,
            "nu2_transfer_ok": result.nu2_transfer_ok,
            "failures": list(result.failures),
            "all_ok": result.all_ok,
        }
        sys.stdout.write(canonical_json(payload))
    else:
        print(f"companion relation up to {result.n_max}: "
              f"{'ok' if result.pq_relation_ok else 'FAIL'}")
        print(f"P_n - 1 split products (odd n): "
              f"{'ok' if result.split_product_ok else 'FAIL'}")
        print(f"2-adic valuation rules up to {result.nu2_n_max}: "
              f"{'ok' if result.nu2_lemma_ok else 'FAIL'}")
        print(f"valuation transfer for P_n - 1 (odd n): "
              f"{'ok' if result.nu2_transfer_ok else 'FAIL'}")
        for failure in result.failures:
            print(f"  {failure}", file=sys.stderr)
    return 0 if result.all_ok else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    policy = _policy_from(args)
    cache = FactorCache(args.cache) if args.cache else None
    if args.verbose:
        from .verifier import VerifyContext, verify_index

        context = VerifyContext(policy, file_cache=cache)
        reports = []
        for n in range(1, args.n_max + 1):
            r = verify_index(n, policy, context=context)
            reports.append(r)
            print(f"n={n}: {r.verdict.status.value}/{r.verdict.reason.value} "
                  f"({r.elapsed_ms:.0f} ms)", file=sys.stderr)
        from .verifier import VerificationReport, bounds_summary

        report = VerificationReport(
            schema=1, n_max=args.n_max, policy=policy,
            indices=tuple(reports), bounds=bounds_summary(),
            cache_path=cache.path if cache else None,
            cache_loaded=cache.loaded if cache else 0,
            cache_rejected=tuple(cache.rejected) if cache else (),
            cache_stored=cache.stored if cache else 0,
        )
    else:
        report = verify_range(args.n_max, policy, cache=cache)
    if cache is not None:
        cache.write_file()
    if args.format == "structured":
        sys.stdout.write(report.to_json())
    else:
        print(report.human_table())
    return 0 if report.reproduced else 1


def _cmd_bounds(args: argparse.Namespace) -> int:
    report = bound_chain(args.n, args.k)
    if args.format == "structured":
        payload = {
            "n": report.n,
            "k": report.k,
            "pomerance_rhs": report.pomerance_rhs,
            "pomerance_rhs_digits": digits10(report.pomerance_rhs),
            "ineq_a_holds": report.ineq_a_holds,
            "ineq_b_holds": report.ineq_b_holds,
            "two_power_exponent": report.two_power_exponent,
            "two_power_targets": (
                list(report.two_power_targets)
                if report.two_power_targets else None
            ),
            "two_power_satisfiable": report.two_power_satisfiable,
            "two_power_min_index": report.two_power_min_index,
            "final_threshold": report.final_threshold,
        }
        sys.stdout.write(canonical_json(payload))
        return 0
    print(f"n={report.n} k={report.k}")
    print(f"size bound k^(2^k): {digits10(report.pomerance_rhs)} digits")
    print(f"2^k * ln k > n/3: {report.ineq_a_holds}")
    print(f"2^k > n / (4 ln ln n): {report.ineq_b_holds}")
    if report.two_power_targets is not None:
        t_lo, t_hi = report.two_power_targets
        where = f"{t_lo} or {t_hi}"
    else:
        where = "(n-1)/2 or (n+1)/2"
    if report.two_power_satisfiable:
        print(f"2^{report.two_power_exponent} must divide {where}: "
              f"satisfiable")
    else:
        print(f"2^{report.two_power_exponent} must divide {where}: "
              f"CONTRADICTION (impossible for every index below "
              f"{report.two_power_min_index})")
    print(f"final threshold: index < {report.final_threshold}")
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cap = args.index_cap
    if args.command in ("pell", "factor", "lehmer") and args.n is not None:
        _check_index(parser, "--n", args.n, cap)
    if args.command in ("identities", "verify"):
        _check_index(parser, "--n-max", args.n_max, cap)
        if args.n_max < 1:
            parser.error("--n-max must be >= 1")
    handlers = {
        "pell": _cmd_pell,
        "factor": _cmd_factor,
        "lehmer": _cmd_lehmer,
        "identities": _cmd_identities,
        "verify": _cmd_verify,
        "bounds": _cmd_bounds,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
