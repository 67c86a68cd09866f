"""
Embedded acceptance suite: small exact cases with known answers, the
classical bounds at their extremal examples, and a seeded sample of the
Kruskal-Katona compression property.
"""
import logging
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Callable, List, Optional, Sequence

from .asymptotics import construction_count_nontrivial
from .bounds import (
    bollobas_verify,
    complement_system,
    ekr_bound,
    hm_bound,
    kk_property_suite,
    lovasz_bound,
)
from .enumeration import (
    count_cross_pairs,
    count_intersecting_bruteforce,
    count_intersecting_via_kneser,
    diversity_profile,
    enumerate_maximal_intersecting,
    max_compatible_B,
)
from .numerics import (
    binom_real,
    pascal_table,
    solve_lovasz_x,
    working_context,
)

logger = logging.getLogger("setfam")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.detail:
            return f"{status} {self.name}: {self.detail}"
        return f"{status} {self.name}"


@dataclass
class SelftestResult:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if not c.passed), None)

    def summary(self) -> List[str]:
        lines = [c.line() for c in self.checks]
        total = len(self.checks)
        good = sum(c.passed for c in self.checks)
        lines.append(f"{good}/{total} checks passed")
        return lines


def check_pascal_rule(table: Sequence[Sequence[int]], rows: int = 61) -> str:
    """Empty string when rows 0..rows-1 obey Pascal's rule, else the cell."""
    for n in range(min(rows, len(table))):
        row = table[n]
        if len(row) != n + 1 or row[0] != 1 or row[-1] != 1:
            return f"Pascal-rule violation: row {n} has bad edges"
        for k in range(1, n):
            if row[k] != table[n - 1][k - 1] + table[n - 1][k]:
                return f"Pascal-rule violation at C({n},{k}) = {row[k]}"
    return ""


def _oracles() -> str:
    for n, k, expected in [(3, 2, 8), (4, 2, 27), (5, 1, 6), (6, 1, 7)]:
        brute = count_intersecting_bruteforce(n, k)
        kneser = count_intersecting_via_kneser(n, k)
        if not brute == kneser == expected:
            return f"I({n},{k}): brute {brute}, kneser {kneser}"
    for n, k in [(5, 2), (6, 2), (5, 3)]:
        brute = count_intersecting_bruteforce(n, k)
        kneser = count_intersecting_via_kneser(n, k)
        if brute != kneser:
            return f"I({n},{k}): brute {brute}, kneser {kneser}"
    return ""


def _profile() -> str:
    profile = diversity_profile(4, 2)
    if profile.entries != {0: 23, 1: 4}:
        return f"profile(4,2) = {profile.entries}"
    return ""


def _cross() -> str:
    if count_cross_pairs(2, 1, 1).total != 9:
        return "CI(2,1,1) != 9"
    left, right = count_cross_pairs(4, 1, 2), count_cross_pairs(4, 2, 1)
    if left.total != right.total:
        return f"CI(4,1,2)={left.total} but CI(4,2,1)={right.total}"
    if left[0] != 2 ** 6:
        return f"CI(4,1,2,0) = {left[0]}"
    return ""


def _ekr_hm() -> str:
    families = enumerate_maximal_intersecting(5, 2)
    if len(families) != 15:
        return f"{len(families)} maximal families at (5,2)"
    if families.largest_size() != ekr_bound(5, 2):
        return "EKR bound not attained at (5,2)"
    if families.largest_size(nontrivial=True) != hm_bound(5, 2):
        return "Hilton-Milner bound not attained at (5,2)"
    return ""


def _lovasz() -> str:
    bound, truth = lovasz_bound(6, 3, 2, 4), max_compatible_B(6, 3, 2, 4)
    if not bound == truth == 9:
        return f"Lovasz {bound}, exact {truth} at (6,3,2,4)"
    with working_context():
        x = solve_lovasz_x(50, 3)
        error = abs(binom_real(x, 3) - 50) / 50
    if error > Decimal("1e-10"):
        return f"C(x,3)=50 solved with relative error {error}"
    return ""


def _bollobas() -> str:
    report = bollobas_verify(complement_system(2, 2))
    if report.witness_value != report.bound_value:
        return f"complement system on [4] has m={report.witness_value}"
    return ""


def _construction() -> str:
    count = construction_count_nontrivial(10, 3)
    if count.per_pair != 2096384 or not count.identity_holds:
        return f"eq003 at (10,3) gives {count.per_pair}"
    return ""


def run_selftest(
    cases: int = 200,
    seed: int = 0,
    table: Optional[Sequence[Sequence[int]]] = None,
) -> SelftestResult:
    """
    Run every check in a fixed order. `table` replaces the binomial table
    under test, so a harness can feed in a corrupted one.
    """
    checks: List[tuple] = [
        ("pascal_rule", lambda: check_pascal_rule(table or pascal_table())),
        ("oracle_equivalence", _oracles),
        ("diversity_profile", _profile),
        ("cross_pairs", _cross),
        ("ekr_hm_attainment", _ekr_hm),
        ("lovasz", _lovasz),
        ("bollobas_equality", _bollobas),
        ("construction_count", _construction),
        ("kk_compression", lambda: _kk(cases, seed)),
    ]
    result = SelftestResult()
    for name, check in checks:
        detail = _run(check)
        result.checks.append(CheckResult(name, not detail, detail))
    if result.passed:
        logger.info(f"Self-test passed ({len(result.checks)} checks).")
    else:
        logger.error(f"Self-test failed: {result.first_failure.line()}")
    return result


def _kk(cases: int, seed: int) -> str:
    suite = kk_property_suite(cases=cases, seed=seed)
    if not suite.passed:
        return f"{len(suite.failures)} of {cases} random pairs failed"
    return ""


def _run(check: Callable[[], str]) -> str:
    try:
        return check()
    except Exception as err:  # reported as a failed check
        return f"{type(err).__name__}: {err}"
