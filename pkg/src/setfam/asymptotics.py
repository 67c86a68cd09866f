"""
Leading terms of the asymptotic counting formulas, the hypotheses under
which they are claimed, and tables comparing them with exact counts at
sizes small enough to enumerate.

Every formula is evaluated with its o(1) term set to zero. Values are
reported as the asymptotic leading term; nothing here asserts that the
leading term is close to the exact count at small sizes.
"""
import logging
from dataclasses import dataclass, field
from decimal import Decimal
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from .enumeration import (
    count_cross_pairs,
    count_intersecting,
    diversity_profile,
)
from .exceptions import DomainError, FeasibilityError, UsageError
from .magnitude import LogMagnitude, Term, log2_magnitude
from .numerics import binom_exact, log_value, sqrt_c_log_c, working_context

logger = logging.getLogger("setfam")

THRESHOLDS = (
    "thm6",
    "thm3",
    "thm5",
    "thm5_log_ratio",
    "ci_sqrt_gap",
    "thm6_sqrt_gap",
)
FORMULAS = ("eqbdd", "eqi1", "eqi2", "eqci1", "eqci2", "eq003", "ci0")
QUANTITIES = ("I", "I_nontrivial", "CI", "CI_1T")

LEADING_TERM = "asymptotic leading term"


def _params(parameters: Dict[str, int], *names: str) -> List[int]:
    values = []
    for name in names:
        value = parameters.get(name)
        if value is None:
            raise UsageError(f"Missing parameter {name!r}.")
        if isinstance(value, bool) or not isinstance(value, int):
            raise UsageError(f"{name} must be an integer, got {value!r}.")
        if value < 1:
            raise UsageError(f"{name} must be positive, got {name}={value}.")
        values.append(value)
    return values


@dataclass
class ThresholdReport:
    """
    lhs >= rhs for a named hypothesis. Ratio-only hypotheses ("b >> log a")
    leave `holds` unset and carry `ratio` instead.
    """

    name: str
    parameters: Dict[str, int]
    lhs: Optional[Decimal] = None
    rhs: Optional[Decimal] = None
    holds: Optional[bool] = None
    slack: Optional[Decimal] = None
    ratio: Optional[Decimal] = None
    log_base: str = "e"

    def to_dict(self) -> dict:
        def fmt(value):
            return None if value is None else str(value)

        return {
            "name": self.name,
            "params": {k: str(v) for k, v in self.parameters.items()},
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
            "holds": self.holds,
            "slack": fmt(self.slack),
            "ratio": fmt(self.ratio),
            "log_base": self.log_base,
        }


def threshold_check(
    name: str, parameters: Dict[str, int], log_base: str = "e"
) -> ThresholdReport:
    """
    thm6:  n >= 2k + 2 + 2 sqrt(k log k)
    thm3:  n >= 3k + 8 log k
    thm5:  n >= a + b + 2 sqrt(c log c) + 2 max(0, a - b), c = max(a, b)
    thm5_log_ratio:  b / log a, no verdict
    ci_sqrt_gap:     n - a - b >= sqrt(n)
    thm6_sqrt_gap:   n - 2k - 1 >= sqrt(n)
    """
    if name not in THRESHOLDS:
        raise UsageError(
            f"Unknown threshold {name!r}; choose one of {THRESHOLDS}."
        )
    # validates the base before any parameter work
    log_value(2, log_base)
    with working_context():
        if name == "thm5_log_ratio":
            a, b = _params(parameters, "a", "b")
            if a < 2:
                raise DomainError(f"log a vanishes at a={a}; need a >= 2.")
            ratio = Decimal(b) / log_value(a, log_base)
            return ThresholdReport(
                name, {"a": a, "b": b}, ratio=+ratio, log_base=log_base
            )
        if name in ("thm6", "thm3", "thm6_sqrt_gap"):
            n, k = _params(parameters, "n", "k")
            params = {"n": n, "k": k}
            lhs = Decimal(n)
            if name == "thm6":
                rhs = 2 * k + 2 + 2 * sqrt_c_log_c(k, log_base)
            elif name == "thm3":
                rhs = 3 * k + 8 * log_value(k, log_base)
            else:
                lhs = Decimal(n - 2 * k - 1)
                rhs = Decimal(n).sqrt()
        else:
            n, a, b = _params(parameters, "n", "a", "b")
            params = {"n": n, "a": a, "b": b}
            if name == "thm5":
                lhs = Decimal(n)
                rhs = (
                    a
                    + b
                    + 2 * sqrt_c_log_c(max(a, b), log_base)
                    + 2 * max(0, a - b)
                )
            else:
                lhs = Decimal(n - a - b)
                rhs = Decimal(n).sqrt()
        rhs = +rhs
        return ThresholdReport(
            name,
            params,
            lhs=lhs,
            rhs=rhs,
            holds=lhs >= rhs,
            slack=lhs - rhs,
            log_base=log_base,
        )


@dataclass
class FormulaValue:
    name: str
    parameters: Dict[str, int]
    magnitude: LogMagnitude
    delta_ab: Optional[int] = None

    @property
    def log2(self) -> Decimal:
        return self.magnitude.log2_value

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "params": {k: str(v) for k, v in self.parameters.items()},
            "log2": str(self.log2),
            "label": LEADING_TERM,
        }
        if self.delta_ab is not None:
            out["delta_ab"] = self.delta_ab
        return out


def formula_terms(name: str, parameters: Dict[str, int]):
    """
    The leading term of a formula as a list of Terms, with the parameter
    map actually used and delta_ab where it applies.
    """
    if name not in FORMULAS:
        raise UsageError(
            f"Unknown formula {name!r}; choose one of {FORMULAS}."
        )
    C = binom_exact
    if name in ("eqbdd", "eqi1", "eqi2", "eq003"):
        n, k = _params(parameters, "n", "k")
        params = {"n": n, "k": k}
        if name in ("eqbdd", "eqi1"):
            return [Term(n, C(n - 1, k - 1))], params, None
        hs = C(n - 1, k - 1) - C(n - k - 1, k - 1)
        if name == "eqi2":
            return [Term(n * C(n - 1, k), hs)], params, None
        return [Term(1, hs), Term(-k, C(n - 2, k - 2))], params, None
    n, a, b = _params(parameters, "n", "a", "b")
    params = {"n": n, "a": a, "b": b}
    if name == "eqci1":
        delta = 1 if a == b else 0
        return [Term(1 + delta, C(n, max(a, b)))], params, delta
    if name == "eqci2":
        return [Term(C(n, a), C(n, b) - C(n - a, b))], params, None
    return [Term(1, C(n, b))], params, None


def formula_value(name: str, parameters: Dict[str, int]) -> FormulaValue:
    terms, params, delta = formula_terms(name, parameters)
    return FormulaValue(name, params, log2_magnitude(terms), delta)


@dataclass
class ConstructionCount:
    """
    Counting behind the lower bound for non-trivial families: each pair
    (i, S) with i outside S gives at least
    2^(C(n-1,k-1) - C(n-k-1,k-1)) - k 2^C(n-2,k-2)
    non-trivial subfamilies of H(i, S) containing S.
    """

    n: int
    k: int
    hs_exponent: int
    trivial_exponent: int
    pairs: int
    identity_holds: bool
    gap_lhs: int
    gap_rhs: int

    @property
    def gap_holds(self) -> bool:
        return self.gap_lhs >= self.gap_rhs

    @property
    def per_pair(self) -> int:
        return (1 << self.hs_exponent) - self.k * (1 << self.trivial_exponent)

    @property
    def per_pair_magnitude(self) -> LogMagnitude:
        return log2_magnitude(
            [
                Term(1, self.hs_exponent),
                Term(-self.k, self.trivial_exponent),
            ]
        )

    def to_dict(self, exact_bits: int = 1 << 16) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "pairs": str(self.pairs),
            "identity_holds": self.identity_holds,
            "gap": [str(self.gap_lhs), str(self.gap_rhs)],
            "gap_holds": self.gap_holds,
        }
        if self.hs_exponent <= exact_bits:
            out["per_pair"] = str(self.per_pair)
        else:
            out["per_pair_log2"] = str(self.per_pair_magnitude.log2_value)
        return out


def construction_count_nontrivial(n: int, k: int) -> ConstructionCount:
    _params({"n": n, "k": k}, "n", "k")
    if n <= 2 * k:
        raise UsageError(f"The construction needs n > 2k, got n={n}, k={k}.")
    C = binom_exact
    hs = C(n - 1, k - 1) - C(n - k - 1, k - 1)
    return ConstructionCount(
        n=n,
        k=k,
        hs_exponent=hs,
        trivial_exponent=C(n - 2, k - 2),
        pairs=(n - k) * C(n, k),
        identity_holds=(n - k) * C(n, k) == n * C(n - 1, k),
        gap_lhs=hs - C(n - 2, k - 2),
        gap_rhs=C(n - 3, k - 2),
    )


# ratio reports


def default_grid(quantity: str) -> List[Tuple[int, ...]]:
    """
    I: (n, k) with C(n, k) <= 25. I_nontrivial: n > 2k >= 4 with
    C(n, k) <= 20. CI and CI_1T: (n, a, b) with n <= 10 and both layers of
    at most 20 sets.
    """
    if quantity == "I":
        return [
            (n, k)
            for n in range(1, 26)
            for k in range(1, n + 1)
            if comb(n, k) <= 25
        ]
    if quantity == "I_nontrivial":
        return [
            (n, k)
            for n in range(5, 21)
            for k in range(2, n)
            if n > 2 * k and comb(n, k) <= 20
        ]
    if quantity in ("CI", "CI_1T"):
        return [
            (n, a, b)
            for n in range(2, 11)
            for a in range(1, n + 1)
            for b in range(1, n + 1)
            if comb(n, a) <= 20 and comb(n, b) <= 20
        ]
    raise UsageError(
        f"Unknown report quantity {quantity!r}; choose one of {QUANTITIES}."
    )


def _exact_and_formula(quantity: str, point: Sequence[int]):
    if quantity in ("I", "I_nontrivial"):
        n, k = point
        params = {"n": n, "k": k}
        if quantity == "I":
            return params, lambda: count_intersecting(n, k), "eqi1"
        return (
            params,
            lambda: diversity_profile(n, k).at_least(1),
            "eqi2",
        )
    n, a, b = point
    params = {"n": n, "a": a, "b": b}
    if quantity == "CI":
        return params, lambda: count_cross_pairs(n, a, b).total, "eqci1"
    T = comb(n - a + b - 1, n - a)
    return (
        params,
        lambda: count_cross_pairs(n, a, b).in_range(1, T),
        "eqci2",
    )


def _log2_or_none(value: int) -> Optional[float]:
    if value <= 0:
        return None
    return float(LogMagnitude.from_rational(value).log2_value)


def ratio_report(
    quantity: str, grid: Optional[Sequence[Sequence[int]]] = None
) -> pd.DataFrame:
    """
    One row per grid point: exact log2 of the enumerated count, log2 of the
    formula's leading term and their difference. Points that cannot be
    enumerated (or whose count or formula is zero) keep their row with NA
    in the affected columns.
    """
    if quantity not in QUANTITIES:
        raise UsageError(
            f"Unknown report quantity {quantity!r}; "
            f"choose one of {QUANTITIES}."
        )
    if grid is None:
        grid = default_grid(quantity)
    width = 2 if quantity in ("I", "I_nontrivial") else 3
    rows = []
    for point in grid:
        point = tuple(point)
        if len(point) != width:
            raise UsageError(
                f"Grid point {point} for {quantity} needs {width} entries."
            )
        params, exact_fn, formula = _exact_and_formula(quantity, point)
        label = ",".join(f"{k}={v}" for k, v in params.items())
        try:
            exact_log2 = _log2_or_none(exact_fn())
        except FeasibilityError as err:
            logger.info(f"{quantity} at {label} is infeasible: {err}")
            exact_log2 = None
        try:
            formula_log2 = float(formula_value(formula, params).log2)
        except (DomainError, UsageError) as err:
            logger.debug(f"No formula value for {quantity} at {label}: {err}")
            formula_log2 = None
        diff = (
            exact_log2 - formula_log2
            if exact_log2 is not None and formula_log2 is not None
            else None
        )
        rows.append(
            {
                "quantity": quantity,
                "params": label,
                "exact_log2": exact_log2,
                "formula_log2": formula_log2,
                "diff": diff,
            }
        )
    df = pd.DataFrame(
        rows,
        columns=["quantity", "params", "exact_log2", "formula_log2", "diff"],
    )
    for column in ("exact_log2", "formula_log2", "diff"):
        df[column] = df[column].astype("float64")
    logger.info(f"Built a {quantity} ratio report with {len(df)} rows.")
    return df
