import math
from decimal import Decimal
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setfam import (
    DomainError,
    LogMagnitude,
    Term,
    binom_exact,
    binom_real,
    log2_magnitude,
    pascal_table,
    solve_lovasz_x,
)
from setfam.numerics import (
    ceil_with_slack,
    floor_with_slack,
    log_value,
    sqrt_c_log_c,
    working_context,
)
from setfam.selftest import check_pascal_rule


def test_pascal_rule_holds():
    assert check_pascal_rule(pascal_table(), rows=61) == ""


@pytest.mark.parametrize(
    "n, k, expected",
    [(5, 2, 10), (5, -1, 0), (3, 5, 0), (-2, 1, 0), (0, 0, 1)],
)
def test_binom_exact_small(n, k, expected):
    assert binom_exact(n, k) == expected


@given(st.integers(0, 200), st.integers(0, 200))
def test_binom_exact_matches_math(n, k):
    assert binom_exact(n, k) == comb(n, k)


def test_binom_real_keeps_exactness():
    assert binom_real(5, 2) == 10
    assert binom_real(Fraction(5, 2), 2) == Fraction(15, 8)
    assert binom_real(Decimal("4.5"), 2) == Decimal("7.875")
    with pytest.raises(DomainError):
        binom_real(Fraction(1, 2), 2)


@pytest.mark.parametrize("j", range(0, 41))
def test_binom_real_agrees_with_exact_on_integers(j):
    for k in range(0, j + 1):
        exact = binom_exact(j, k)
        assert binom_real(j, k) == exact
        assert binom_real(Fraction(j), k) == exact
        with working_context(exact):
            assert binom_real(Decimal(j), k) == exact
        assert math.isclose(binom_real(float(j), k), exact, rel_tol=1e-12)


def test_solve_lovasz_x_integer_roots():
    assert solve_lovasz_x(10, 2) == 5
    assert solve_lovasz_x(1, 3) == 3
    assert solve_lovasz_x(7, 1) == 7


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 6))
def test_solve_lovasz_x_round_trip(m, r):
    x = solve_lovasz_x(m, r)
    assert x >= r - 1
    with working_context(m):
        value = Decimal(binom_real(x, r))
        assert abs(value - m) / m <= Decimal("1e-10")


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(0, 60000))
def test_solve_lovasz_x_inverts_binom_real(r, offset):
    x = Fraction(r * 1000 + offset, 1000)
    m = binom_real(x, r)
    root = solve_lovasz_x(m, r)
    with working_context(m):
        target = Decimal(x.numerator) / Decimal(x.denominator)
        assert abs(Decimal(root) - target) <= target * Decimal("1e-20")


def test_solve_lovasz_x_domain():
    with pytest.raises(DomainError):
        solve_lovasz_x(0, 2)
    with pytest.raises(DomainError):
        solve_lovasz_x(5, 0)


def test_rounding_with_slack():
    assert floor_with_slack(Decimal("2.99999999999999999999999")) == 3
    assert floor_with_slack(Decimal("2.5")) == 2
    assert floor_with_slack(Fraction(7, 2)) == 3
    assert ceil_with_slack(Fraction(7, 2)) == 4
    assert ceil_with_slack(Decimal("3.00000000000000000000001")) == 3
    assert ceil_with_slack(12) == 12


def test_log_value():
    assert abs(log_value(8, "2") - 3) < Decimal("1e-40")
    assert abs(float(log_value(10)) - math.log(10)) < 1e-12
    assert abs(float(sqrt_c_log_c(10)) - math.sqrt(10 * math.log(10))) < 1e-12
    with pytest.raises(DomainError):
        log_value(0)
    with pytest.raises(DomainError):
        log_value(10, "10")


def test_log_magnitude_exact_powers():
    assert LogMagnitude.from_rational(1024).log2_value == 10
    assert LogMagnitude.power_of_two(10**6).exponent == 10**6
    with pytest.raises(DomainError):
        LogMagnitude.from_rational(0)


def test_log_magnitude_arithmetic():
    three = LogMagnitude.from_rational(3)
    five = LogMagnitude.from_rational(5)
    assert three < five
    total = (three + five).log2_value
    assert abs(total - 3) < Decimal("1e-30")
    product = (three * five).log2_ratio(LogMagnitude.from_rational(15))
    assert abs(product) < Decimal("1e-30")


def test_log2_magnitude_of_sums():
    assert log2_magnitude([Term(1, 100), Term(1, 100)]).log2_value == 101
    seven = log2_magnitude([Term(1, 3), Term(-1, 0)])
    assert abs(float(seven) - math.log2(7)) < 1e-12
    with pytest.raises(DomainError):
        log2_magnitude([Term(1, 0), Term(-1, 0)])
    with pytest.raises(DomainError):
        log2_magnitude([])


def test_log2_magnitude_drops_negligible_terms():
    huge = log2_magnitude([Term(1, 10**9), Term(-1, 5)])
    assert huge == LogMagnitude.power_of_two(10**9)


def test_log2_magnitude_survives_cancelling_leaders():
    one = log2_magnitude([Term(1, 1000), Term(-1, 1000), Term(1, 0)])
    assert one.log2_value == 0
    # 2^1000 - (2^999 + ... + 1) = 1
    geometric = [Term(1, 1000)] + [Term(-1, i) for i in range(1000)]
    assert log2_magnitude(geometric).log2_value == 0
    with pytest.raises(DomainError):
        log2_magnitude([Term(1, 500), Term(-2, 499)])


@settings(max_examples=50)
@given(
    st.integers(1, 10**6),
    st.integers(300, 5000),
    st.lists(
        st.tuples(st.integers(1, 1000), st.integers(0, 60)),
        min_size=1,
        max_size=4,
    ),
)
def test_log2_magnitude_sees_remainder_after_cancellation(c, e, small):
    terms = [Term(c, e)] + [Term(a, b) for a, b in small] + [Term(-c, e)]
    expected = math.log2(sum(a * 2**b for a, b in small))
    got = float(log2_magnitude(terms))
    assert abs(got - expected) <= 1e-9 * max(1.0, expected)


@settings(max_examples=100)
@given(
    st.lists(
        st.tuples(st.integers(1, 1000), st.integers(0, 60)),
        min_size=1,
        max_size=4,
    )
)
def test_log2_magnitude_matches_exact_value(terms):
    exact = sum(c * 2**e for c, e in terms)
    got = float(log2_magnitude([Term(c, e) for c, e in terms]))
    expected = math.log2(exact)
    assert abs(got - expected) <= 1e-9 * max(1.0, abs(expected))
