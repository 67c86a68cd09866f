"""
setfam: command-line entry point

Usage:
    setfam count --n 4 --k 2                      I(n, k)
    setfam profile --n 4 --k 2                    I(n, k, t) for every t
    setfam cross --n 4 --a 2 --b 2                CI(n, a, b, t) for every t
    setfam maximal --n 5 --k 2                    maximal intersecting families
    setfam maximal --pairs --n 4 --a 2 --b 2      maximal cross pairs
    setfam bounds --name hm --n 5 --k 2           a named extremal bound
    setfam audit --chain eq03 --grid 10-50        inequality-chain audit
    setfam asymptotics --threshold thm6 --n 40 --k 10
    setfam report --quantity I --format csv       exact vs formula table
    setfam selftest                               embedded acceptance suite

Data goes to stdout (or --out); diagnostics go to stderr.
Exit codes: 0 ok, 1 self-test failure, 2 usage error, 3 feasibility error.
"""
import argparse
import logging
import sys
from typing import Dict, List, Optional

from .asymptotics import (
    FORMULAS,
    QUANTITIES,
    THRESHOLDS,
    construction_count_nontrivial,
    formula_value,
    ratio_report,
    threshold_check,
)
from .audit import CHAINS, inequality_audit
from .bounds import (
    BoundReport,
    as_real,
    bollobas_verify,
    complement_system,
    ekr_bound,
    ekr_check,
    frankl_diversity_bound,
    frankl_diversity_check,
    ft_kz_bound,
    ft_kz_check,
    ft_kz_window,
    generating_family_check,
    hm_bound,
    kk_compress_check,
    kk_property_suite,
    lovasz_bound,
    lovasz_check,
    max_compatible_report,
    maximal_pairs_check,
    witness_report,
)
from .enumeration import (
    count_cross_pairs,
    count_intersecting_bruteforce,
    count_intersecting_via_kneser,
    diversity_profile,
    enumerate_maximal_cross_pairs,
    enumerate_maximal_intersecting,
    minimal_generating_family,
)
from .exceptions import FeasibilityError, UsageError, ValidationError
from .loaders import load_family, load_pair, load_set_pair_system
from .numerics import LOG_BASES
from .predicates import common_element
from .save import FORMATS, write_records
from .selftest import run_selftest

logger = logging.getLogger("setfam")

BOUND_NAMES = (
    "ekr",
    "hm",
    "lovasz",
    "ftkz",
    "frankl",
    "bollobas",
    "kk",
    "maxb",
    "lemma1",
)

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_USAGE = 2
EXIT_FEASIBILITY = 3


def _need(args, *names: str) -> List[int]:
    missing = [
        "--" + name.replace("_", "-")
        for name in names
        if getattr(args, name) is None
    ]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}.")
    return [getattr(args, n) for n in names]


def _emit(args, records):
    write_records(records, path=args.out, format=args.format)


def cmd_count(args):
    n, k = _need(args, "n", "k")
    if args.method == "bruteforce":
        total = count_intersecting_bruteforce(
            n, k, threads=args.threads, progress=args.progress
        )
    else:
        total = count_intersecting_via_kneser(
            n, k, pivot=args.pivot, threads=args.threads
        )
    _emit(args, {"n": n, "k": k, "I": str(total)})
    return EXIT_OK


def cmd_profile(args):
    n, k = _need(args, "n", "k")
    profile = diversity_profile(
        n, k, threads=args.threads, progress=args.progress
    )
    _emit(args, profile.to_dict())
    return EXIT_OK


def cmd_cross(args):
    n, a, b = _need(args, "n", "a", "b")
    profile = count_cross_pairs(
        n, a, b, threads=args.threads, progress=args.progress
    )
    _emit(args, profile.to_dict())
    return EXIT_OK


def cmd_maximal(args):
    if args.pairs:
        n, a, b = _need(args, "n", "a", "b")
        records = []
        for a_fam, b_fam in enumerate_maximal_cross_pairs(n, a, b):
            gen = minimal_generating_family(a_fam, b_fam)
            records.append(
                {
                    "A": a_fam.to_dict()["sets"],
                    "B": b_fam.to_dict()["sets"],
                    "generating": len(gen),
                }
            )
        header = {"n": n, "a": a, "b": b, "count": len(records)}
    else:
        n, k = _need(args, "n", "k")
        families = enumerate_maximal_intersecting(n, k)
        records = [
            {
                "sets": fam.to_dict()["sets"],
                "size": len(fam),
                "trivial": common_element(fam) is not None,
            }
            for fam in families
        ]
        header = {
            "n": n,
            "k": k,
            "count": len(families),
            "largest": families.largest_size(),
            "largest_nontrivial": families.largest_size(nontrivial=True),
        }
    if args.format == "json":
        _emit(args, {**header, "items": records})
    else:
        _emit(args, records)
    return EXIT_OK


def _bound_reports(args) -> List[BoundReport]:
    name = args.name
    if name in ("ekr", "hm"):
        n, k = _need(args, "n", "k")
        if args.check:
            reports = ekr_check(n, k)
            return [r for r in reports if r.name == name]
        bound = ekr_bound(n, k) if name == "ekr" else hm_bound(n, k)
        params = {"n": n, "k": k}
        if args.witness:
            fam = load_family(args.witness)
            if name == "hm" and common_element(fam) is not None:
                raise ValidationError("The witness family is trivial.")
            return [witness_report(name, params, bound, fam)]
        return [BoundReport(name, params, bound)]
    if name == "lovasz":
        n, a, b = _need(args, "n", "a", "b")
        if args.check:
            return lovasz_check(n, a, b)
        if args.witness:
            a_fam, b_fam = load_pair(args.witness)
            t = len(a_fam)
            params = {"n": n, "a": a, "b": b, "t": t}
            return [
                BoundReport(
                    name, params, lovasz_bound(n, a, b, t), len(b_fam)
                )
            ]
        (t,) = _need(args, "t")
        params = {"n": n, "a": a, "b": b, "t": t}
        return [BoundReport(name, params, lovasz_bound(n, a, b, t))]
    if name == "ftkz":
        n, a, b, alpha = _need(args, "n", "a", "b", "alpha")
        if args.check:
            return [ft_kz_check(n, a, b, alpha)]
        low, high = ft_kz_window(n, a, b, alpha)
        params = {"n": n, "a": a, "b": b, "alpha": as_real(alpha)}
        return [
            BoundReport(
                name,
                params,
                ft_kz_bound(n, a, b, alpha),
                note=f"window [{low}, {high}]",
            )
        ]
    if name == "frankl":
        n, k, u = _need(args, "n", "k", "u")
        if args.check:
            return [frankl_diversity_check(n, k, u)]
        params = {"n": n, "k": k, "u": as_real(u)}
        return [BoundReport(name, params, frankl_diversity_bound(n, k, u))]
    if name == "bollobas":
        if args.witness:
            return [bollobas_verify(load_set_pair_system(args.witness))]
        a, b = _need(args, "a", "b")
        return [bollobas_verify(complement_system(a, b))]
    if name == "kk":
        if args.witness:
            a_fam, b_fam = load_pair(args.witness)
            held = kk_compress_check(a_fam, b_fam)
            params = {"n": a_fam.n, "a": a_fam.k, "b": b_fam.k}
            return [BoundReport(name, params, 0, 0 if held else 1)]
        suite = kk_property_suite(cases=args.cases, seed=args.seed)
        params = {"cases": args.cases, "seed": args.seed, "max_n": 8}
        return [BoundReport(name, params, 0, len(suite.failures))]
    if name == "maxb":
        n, a, b, t = _need(args, "n", "a", "b", "t")
        return [max_compatible_report(n, a, b, t)]
    n, a, b = _need(args, "n", "a", "b")
    return [generating_family_check(n, a, b), maximal_pairs_check(n, a, b)]


def cmd_bounds(args):
    reports = _bound_reports(args)
    _emit(args, [r.to_dict() for r in reports])
    return EXIT_OK


def _parse_range(text: str) -> List[int]:
    try:
        if "-" in text:
            low, high = (int(part) for part in text.split("-", 1))
            return list(range(low, high + 1))
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"Cannot read {text!r} as a range like 10-50.")


def cmd_audit(args):
    reports = []
    if args.grid:
        # eq03 walks k; the cross chains walk a = b = c
        for value in _parse_range(args.grid):
            if args.chain == "eq03":
                params = {"k": value}
            else:
                params = {"a": value, "b": value}
            reports.extend(inequality_audit(args.chain, params))
    else:
        params = {
            "n": args.n,
            "k": args.k,
            "a": args.a,
            "b": args.b,
            "u_prime": args.u_prime,
        }
        params = {k: v for k, v in params.items() if v is not None}
        reports = inequality_audit(args.chain, params)
    _emit(args, [r.to_dict() for r in reports])
    return EXIT_OK


def _given(args) -> Dict[str, int]:
    names = ("n", "k", "a", "b")
    return {n: getattr(args, n) for n in names if getattr(args, n) is not None}


def cmd_asymptotics(args):
    chosen = [x for x in (args.threshold, args.formula) if x]
    if len(chosen) + bool(args.construction) != 1:
        raise UsageError(
            "asymptotics needs exactly one of --threshold, --formula "
            "or --construction."
        )
    if args.threshold:
        report = threshold_check(
            args.threshold, _given(args), log_base=args.log_base
        )
        _emit(args, report.to_dict())
    elif args.formula:
        _emit(args, formula_value(args.formula, _given(args)).to_dict())
    else:
        n, k = _need(args, "n", "k")
        _emit(args, construction_count_nontrivial(n, k).to_dict())
    return EXIT_OK


def _parse_grid(text: str) -> List[tuple]:
    try:
        return [
            tuple(int(v) for v in point.split(","))
            for point in text.split(";")
            if point.strip()
        ]
    except ValueError:
        raise UsageError(f"Cannot read grid {text!r}; use e.g. '4,2;5,2'.")


def cmd_report(args):
    grid = _parse_grid(args.grid) if args.grid else None
    _emit(args, ratio_report(args.quantity, grid))
    return EXIT_OK


def cmd_selftest(args):
    result = run_selftest(cases=args.cases, seed=args.seed)
    stream = open(args.out, "w") if args.out else sys.stdout
    try:
        for line in result.summary():
            stream.write(line + "\n")
    finally:
        if args.out:
            stream.close()
    if not result.passed:
        print(result.first_failure.line(), file=sys.stderr)
        return EXIT_SELFTEST
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--out", help="Write data here instead of stdout")
    common.add_argument("--threads", type=int, help="Worker threads")
    common.add_argument("--progress", action="store_true")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true")
    verbosity.add_argument("--quiet", action="store_true")

    sizes = argparse.ArgumentParser(add_help=False)
    for flag in ("--n", "--k", "--a", "--b", "--t"):
        sizes.add_argument(flag, type=int)

    parser = argparse.ArgumentParser(
        prog="setfam",
        description="Exact counts and extremal bounds for intersecting "
        "and cross-intersecting set families.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    count_parser = subparsers.add_parser(
        "count", parents=[common, sizes], help="Count intersecting families"
    )
    count_parser.add_argument(
        "--method", choices=("kneser", "bruteforce"), default="kneser"
    )
    count_parser.add_argument(
        "--pivot", choices=("max_degree", "last"), default="max_degree"
    )
    count_parser.set_defaults(func=cmd_count)

    subparsers.add_parser(
        "profile", parents=[common, sizes], help="Diversity profile"
    ).set_defaults(func=cmd_profile)
    subparsers.add_parser(
        "cross", parents=[common, sizes], help="Cross-intersecting pairs"
    ).set_defaults(func=cmd_cross)

    maximal_parser = subparsers.add_parser(
        "maximal", parents=[common, sizes], help="Maximal families or pairs"
    )
    maximal_parser.add_argument("--pairs", action="store_true")
    maximal_parser.set_defaults(func=cmd_maximal)

    bounds_parser = subparsers.add_parser(
        "bounds", parents=[common, sizes], help="Evaluate a named bound"
    )
    bounds_parser.add_argument("--name", choices=BOUND_NAMES, required=True)
    bounds_parser.add_argument("--alpha")
    bounds_parser.add_argument("--u")
    bounds_parser.add_argument("--witness", help="JSON witness file")
    bounds_parser.add_argument(
        "--check",
        action="store_true",
        help="Compare against exhaustive enumeration",
    )
    bounds_parser.add_argument("--cases", type=int, default=1000)
    bounds_parser.add_argument("--seed", type=int, default=0)
    bounds_parser.set_defaults(func=cmd_bounds)

    audit_parser = subparsers.add_parser(
        "audit", parents=[common, sizes], help="Audit an inequality chain"
    )
    audit_parser.add_argument("--chain", choices=CHAINS, required=True)
    audit_parser.add_argument("--u-prime", type=int, dest="u_prime")
    audit_parser.add_argument("--grid", help="k (or a = b) range, e.g. 10-50")
    audit_parser.set_defaults(func=cmd_audit)

    asym_parser = subparsers.add_parser(
        "asymptotics", parents=[common, sizes], help="Thresholds and formulas"
    )
    asym_parser.add_argument("--threshold", choices=THRESHOLDS)
    asym_parser.add_argument("--formula", choices=FORMULAS)
    asym_parser.add_argument("--construction", action="store_true")
    asym_parser.add_argument("--log-base", choices=LOG_BASES, default="e")
    asym_parser.set_defaults(func=cmd_asymptotics)

    report_parser = subparsers.add_parser(
        "report", parents=[common], help="Exact vs formula table"
    )
    report_parser.add_argument("--quantity", choices=QUANTITIES, required=True)
    report_parser.add_argument("--grid", help="Points, e.g. '4,2;5,2'")
    report_parser.set_defaults(func=cmd_report)

    selftest_parser = subparsers.add_parser(
        "selftest", parents=[common], help="Run the acceptance suite"
    )
    selftest_parser.add_argument("--cases", type=int, default=200)
    selftest_parser.add_argument("--seed", type=int, default=0)
    selftest_parser.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_USAGE

    if args.verbose:
        logger.setLevel(logging.DEBUG)
    elif args.quiet:
        logger.setLevel(logging.ERROR)

    try:
        return args.func(args)
    except FeasibilityError as err:
        print(f"Error: {err}", file=sys.stderr)
        return EXIT_FEASIBILITY
    except UsageError as err:
        print(f"Error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
