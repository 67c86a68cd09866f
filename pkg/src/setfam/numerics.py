"""
Exact and real-argument binomial coefficients, and the solver for the x in
Lovász's form of Kruskal-Katona (|A| = C(x, r) for a real x >= r - 1).
"""
import logging
from decimal import (
    ROUND_CEILING,
    ROUND_FLOOR,
    Decimal,
    getcontext,
    localcontext,
)
from fractions import Fraction
from math import comb, factorial
from numbers import Rational
from typing import List, Union

from .exceptions import DomainError

logger = logging.getLogger("setfam")

LOG_PRECISION = 50
COMPARISON_SLACK = Decimal("1e-20")
SOLVER_MAX_ITER = 200

# rows 0..PASCAL_ROWS-1 are served from the table
PASCAL_ROWS = 65

Real = Union[int, Fraction, float, Decimal]


def build_pascal_table(rows: int = PASCAL_ROWS) -> List[List[int]]:
    table = [[1]]
    for n in range(1, rows):
        prev = table[-1]
        row = [1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1]
        table.append(row)
    return table


_PASCAL = build_pascal_table()


def pascal_table() -> List[List[int]]:
    return _PASCAL


def binom_exact(n: int, k: int) -> int:
    """C(n, k) as an exact integer; 0 whenever k < 0, k > n or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    if n < len(_PASCAL):
        return _PASCAL[n][k]
    return comb(n, k)


def binom_real(x: Real, k: int) -> Real:
    """
    The polynomial x(x-1)...(x-k+1)/k! for real x >= k - 1.
    int and Fraction arguments give exact Fraction/int results, Decimal
    arguments are evaluated in the current decimal context.
    """
    if k < 0:
        return 0
    if x < k - 1:
        raise DomainError(
            f"C(x, {k}) is only monotone for x >= {k - 1}, got x={x}."
        )
    if isinstance(x, int) and not isinstance(x, bool):
        return binom_exact(x, k)
    if isinstance(x, Rational):
        value = Fraction(1)
        for i in range(k):
            value *= Fraction(x) - i
        value /= factorial(k)
        return value.numerator if value.denominator == 1 else value
    if isinstance(x, Decimal):
        value = Decimal(1)
        for i in range(k):
            value *= x - i
        return value / factorial(k)
    value = 1.0
    for i in range(k):
        value *= x - i
    return value / factorial(k)


def _integer_root(m: int, r: int):
    # j with C(j, r) == m, or None
    lo, hi = r, max(r, 1)
    while binom_exact(hi, r) < m:
        lo, hi = hi, hi * 2
    while lo < hi:
        mid = (lo + hi) // 2
        if binom_exact(mid, r) < m:
            lo = mid + 1
        else:
            hi = mid
    return lo if binom_exact(lo, r) == m else None


def solve_lovasz_x(m: Real, r: int) -> Real:
    """
    The unique x >= r - 1 with C(x, r) = m.
    Returns an int when m is itself a binomial C(j, r), otherwise a
    Decimal computed by bisection at LOG_PRECISION digits.
    """
    if r < 1:
        raise DomainError(f"Lovász parameter r must be >= 1, got r={r}.")
    if m <= 0:
        raise DomainError(
            f"C(x, {r}) = {m} has no solution; m must be positive."
        )
    if isinstance(m, int) and not isinstance(m, bool):
        j = _integer_root(m, r)
        if j is not None:
            return j
    with working_context(m):
        if isinstance(m, Fraction):
            target = Decimal(m.numerator) / Decimal(m.denominator)
        else:
            target = Decimal(m)
        lo = Decimal(r - 1)
        hi = Decimal(max(r, 1))
        while binom_real(hi, r) < target:
            hi *= 2
        for _ in range(SOLVER_MAX_ITER):
            mid = (lo + hi) / 2
            if binom_real(mid, r) < target:
                lo = mid
            else:
                hi = mid
            if hi - lo <= hi * Decimal(10) ** (-LOG_PRECISION):
                break
        x = (lo + hi) / 2
    logger.debug(f"Solved C(x, {r}) = {m}: x = {x}")
    return x


def working_context(scale=0):
    """
    A decimal context carrying LOG_PRECISION significant digits beyond the
    integer digits of `scale`.
    """
    ctx = getcontext().copy()
    ctx.prec = LOG_PRECISION + len(str(abs(int(scale))))
    return localcontext(ctx)


def floor_with_slack(value: Real) -> int:
    """
    Floor of a bound value. Decimal values get COMPARISON_SLACK added first
    so rounding noise just below an integer does not cost a whole unit.
    """
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator // value.denominator
    if isinstance(value, float):
        value = Decimal(value)
    with working_context(value):
        shifted = value + COMPARISON_SLACK
        return int(shifted.to_integral_value(rounding=ROUND_FLOOR))


def ceil_with_slack(value: Real) -> int:
    """Ceiling counterpart of floor_with_slack."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return -(-value.numerator // value.denominator)
    if isinstance(value, float):
        value = Decimal(value)
    with working_context(value):
        shifted = value - COMPARISON_SLACK
        return int(shifted.to_integral_value(rounding=ROUND_CEILING))


LOG_BASES = ("e", "2")


def log_value(x: Real, log_base: str = "e") -> Decimal:
    """ln(x), or log2(x) when log_base is "2", at working precision."""
    if log_base not in LOG_BASES:
        raise DomainError(
            f"Unknown log base {log_base!r}; choose one of {LOG_BASES}."
        )
    if x <= 0:
        raise DomainError(f"log({x}) is undefined.")
    with working_context():
        if isinstance(x, Fraction):
            x = Decimal(x.numerator) / Decimal(x.denominator)
        value = Decimal(x).ln()
        if log_base == "2":
            value /= Decimal(2).ln()
        return +value


def sqrt_c_log_c(c: int, log_base: str = "e") -> Decimal:
    """sqrt(c log c), the gap term in the cross-intersecting thresholds."""
    with working_context():
        return (Decimal(c) * log_value(c, log_base)).sqrt()
