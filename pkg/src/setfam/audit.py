"""
Numerical audit of the inequality chains used to show that the large-|A|
and high-diversity ranges contribute o(1) to the cross-intersecting and
intersecting counts.

Each chain is evaluated term by term at concrete parameters. Exact steps
are compared as Fractions; steps that involve sqrt(c ln c) or exp() are
evaluated as Decimals at working precision. The audit records what holds
at the given point and makes no asymptotic claim.
"""
import logging
from decimal import ROUND_CEILING, Decimal
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional

from .bounds import BoundReport
from .exceptions import UsageError
from .numerics import log_value, sqrt_c_log_c, working_context

logger = logging.getLogger("setfam")

CHAINS = ("eq055", "eq033", "eq03")


def _as_decimal(value) -> Decimal:
    if isinstance(value, Fraction):
        return Decimal(value.numerator) / Decimal(value.denominator)
    return Decimal(value)


def _ceil(value: Decimal) -> int:
    return int(value.to_integral_value(rounding=ROUND_CEILING))


def _require(parameters: Dict[str, int], *names: str) -> List[int]:
    missing = [name for name in names if parameters.get(name) is None]
    if missing:
        raise UsageError(
            f"Missing parameter(s) {', '.join(missing)} for this chain."
        )
    values = []
    for name in names:
        value = parameters[name]
        if isinstance(value, bool) or not isinstance(value, int):
            raise UsageError(f"{name} must be an integer, got {value!r}.")
        values.append(value)
    return values


def eq03_default_n(k: int) -> int:
    """Smallest integer n with n >= 2k + 2 + 2 sqrt(k ln k)."""
    with working_context():
        return _ceil(2 * k + 2 + 2 * sqrt_c_log_c(k))


def cross_gap(a: int, b: int) -> Decimal:
    """u = sqrt(c ln c) + max(0, a - b) with c = max(a, b)."""
    with working_context():
        return sqrt_c_log_c(max(a, b)) + max(0, a - b)


def cross_default_point(a: int, b: int):
    """(n, u') with n = ceil(a + b + 2u) and u' = ceil(u)."""
    u = cross_gap(a, b)
    with working_context():
        return _ceil(a + b + 2 * u), _ceil(u)


def _cross_parameters(parameters: Dict[str, int]):
    a, b = _require(parameters, "a", "b")
    if a < 1 or b < 1:
        raise UsageError(f"Need a, b >= 1, got a={a}, b={b}.")
    default_n, default_u = cross_default_point(a, b)
    n = parameters.get("n") or default_n
    u_prime = parameters.get("u_prime")
    if u_prime is None:
        u_prime = default_u
    if n <= a + b:
        raise UsageError(f"Need n > a + b, got n={n}, a={a}, b={b}.")
    if not 0 <= u_prime <= a - 1:
        raise UsageError(f"u'={u_prime} is outside 0 <= u' <= a - 1.")
    return n, a, b, u_prime


def audit_eq055(parameters: Dict[str, int]) -> List[BoundReport]:
    """
    The chain bounding C(n-u', n-a) / C(n-u'-1, b-1) by 1/(2n):
    an exact product identity, then two relaxations (u' down to
    sqrt(c ln c), then 1 - x <= e^-x), then the final comparison.
    """
    n, a, b, u_prime = _cross_parameters(parameters)
    s = sqrt_c_log_c(max(a, b))
    params = {"n": n, "a": a, "b": b, "u_prime": u_prime}

    ratio = Fraction(comb(n - u_prime, n - a), comb(n - u_prime - 1, b - 1))
    product = Fraction(n - u_prime, b)
    for i in range(n - a - b):
        product *= Fraction(n - b - u_prime - i, n - a - i)

    with working_context():
        relaxed = Decimal(n) / b
        for i in range(n - a - b):
            relaxed *= (n - a - s - i) / Decimal(n - a - i)
        harmonic = sum(Decimal(1) / i for i in range(b + 1, n - a + 1))
        exponential = Decimal(n) / b * (-s * harmonic).exp()
        final = Decimal(1) / (2 * n)
        exact = _as_decimal(ratio)

    return [
        BoundReport("eq055.identity", params, product, ratio, relation="="),
        BoundReport(
            "eq055.relax_gap",
            params,
            relaxed,
            exact,
            note=f"sqrt(c ln c) = {s:.12f}",
        ),
        BoundReport("eq055.relax_exp", params, exponential, relaxed),
        BoundReport("eq055.final", params, final, exponential),
        BoundReport(
            "eq055.overall",
            params,
            Fraction(1, 2 * n),
            ratio,
            note="exact ratio against 1/(2n)",
        ),
    ]


def audit_eq033(parameters: Dict[str, int]) -> List[BoundReport]:
    """
    The range C(n-u, n-a) < |A| <= T. The middle expression is divided by
    2^(C(n,b) - C(n-a,b)) in the displayed chain while the summary line
    before it divides by 2^(C(n,b) - C(n-b,b)); both readings are checked
    against the final exponent. Then the tail ratio
    C(a+b, b) / C(n-u-1, b-1) is audited against 1/(4n).
    """
    n, a, b, u = _cross_parameters(parameters)
    params = {"n": n, "a": a, "b": b, "u_prime": u}

    final_exponent = (
        2 * n * comb(a + b, b)
        + comb(n - u, n - a)
        - comb(n - u - 1, b - 1)
    )
    with working_context(final_exponent):
        pair_log = comb(a + b, a) * log_value(comb(n, a) * comb(n, b), "2")
        numerator = comb(n - u, n - a) - comb(n - u, b)
        reading_a = pair_log + numerator + comb(n - a, b)
        reading_b = pair_log + numerator + comb(n - b, b)

    differ = comb(n - a, b) != comb(n - b, b)
    if differ:
        logger.warning(
            f"eq033 denominators disagree at n={n}, a={a}, b={b}: "
            f"2^(C(n,b)-C(n-a,b)) vs 2^(C(n,b)-C(n-b,b))."
        )
    agreement = "readings differ" if differ else "readings coincide"

    tail = Fraction(comb(a + b, b), comb(n - u - 1, b - 1))
    tail_product = Fraction(n - u, b)
    for i in range(b):
        tail_product *= Fraction(a + b - i, n - u - i)
    tail_power = n * Fraction(a + b, n - u) ** b

    return [
        BoundReport(
            "eq033.denominator_n_minus_a",
            params,
            final_exponent,
            reading_a,
            note=f"log2 scale, divides by 2^(C(n,b)-C(n-a,b)); {agreement}",
        ),
        BoundReport(
            "eq033.denominator_n_minus_b",
            params,
            final_exponent,
            reading_b,
            note=f"log2 scale, divides by 2^(C(n,b)-C(n-b,b)); {agreement}",
        ),
        BoundReport(
            "eq033.tail_identity", params, tail_product, tail, relation="="
        ),
        BoundReport("eq033.tail_power", params, tail_power, tail),
        BoundReport("eq033.tail", params, Fraction(1, 4 * n), tail),
        BoundReport(
            "eq033.exponent",
            params,
            0,
            final_exponent,
            note="log2 of the right-hand side; reported only",
        ),
    ]


def audit_eq03(parameters: Dict[str, int]) -> List[BoundReport]:
    """
    The high-diversity range for intersecting families.

    The middle step compares, on the log2 scale,
    C(n,k)^C(2k-1,k-1) * 2^(C(n-4,k-3) - C(n-4,k-1) + C(n-k-1,k-1)) with
    2^(n C(2k-1,k-1) + C(n-4,k-3) - C(n-5,k-2)). The ratio
    C(n-4, k-3) / C(n-5, k-2) equals (n-4)(k-2) / ((n-k-1)(n-k-2)) and must
    stay below 1 - 1/k. C(2k-1, k-1) / C(n-5, k-2) is compared with the
    product (n-4)/(k-1) * prod_{i=1..k} (2k-i)/(n-3-i), with the power
    n (2k/(n-3))^k and with 1/(2kn). Together they make the log2 exponent
    at most -C(n-5, k-2) / (2k).
    """
    (k,) = _require(parameters, "k")
    if k < 3:
        raise UsageError(f"The eq03 chain needs k >= 3, got k={k}.")
    n = parameters.get("n") or eq03_default_n(k)
    if n <= 2 * k:
        raise UsageError(f"Need n > 2k, got n={n}, k={k}.")
    params = {"n": n, "k": k}
    base = comb(n - 5, k - 2)
    maximal = comb(2 * k - 1, k - 1)

    exponent = n * maximal + comb(n - 4, k - 3) - base
    with working_context(exponent):
        middle = maximal * log_value(comb(n, k), "2") + (
            comb(n - 4, k - 3) - comb(n - 4, k - 1) + comb(n - k - 1, k - 1)
        )

    ratio = Fraction(comb(n - 4, k - 3), base)
    closed = Fraction((n - 4) * (k - 2), (n - k - 1) * (n - k - 2))
    second = Fraction(maximal, base)
    product = Fraction(n - 4, k - 1)
    for i in range(1, k + 1):
        product *= Fraction(2 * k - i, n - 3 - i)
    power = n * Fraction(2 * k, n - 3) ** k

    return [
        BoundReport(
            "eq03.middle",
            params,
            exponent,
            middle,
            note="log2 scale",
        ),
        BoundReport(
            "eq03.ratio_identity", params, closed, ratio, relation="="
        ),
        BoundReport("eq03.first", params, 1 - Fraction(1, k), ratio),
        BoundReport(
            "eq03.second_identity", params, product, second, relation="="
        ),
        BoundReport("eq03.second_power", params, power, second),
        BoundReport("eq03.second", params, Fraction(1, 2 * k * n), second),
        BoundReport(
            "eq03.exponent",
            params,
            Fraction(-base, 2 * k),
            exponent,
            note="log2 of the right-hand side",
        ),
    ]


_AUDITS = {
    "eq055": audit_eq055,
    "eq033": audit_eq033,
    "eq03": audit_eq03,
}


def inequality_audit(
    chain: str, parameters: Optional[Dict[str, int]] = None
) -> List[BoundReport]:
    if chain not in _AUDITS:
        raise UsageError(
            f"Unknown inequality chain {chain!r}; choose one of {CHAINS}."
        )
    reports = _AUDITS[chain](dict(parameters or {}))
    failed = [r.name for r in reports if not r.satisfied]
    logger.info(
        f"Audited {chain}: {len(reports) - len(failed)}/{len(reports)} "
        f"steps hold at {reports[0].parameters}."
    )
    if failed:
        logger.info(f"Steps that fail here: {', '.join(failed)}.")
    return reports
