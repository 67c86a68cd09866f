from fractions import Fraction

import pytest

from setfam import UsageError, inequality_audit
from setfam.audit import cross_default_point, eq03_default_n


def by_name(reports):
    return {r.name.split(".", 1)[1]: r for r in reports}


def test_default_points():
    assert eq03_default_n(10) == 32
    assert eq03_default_n(50) == 130
    assert cross_default_point(64, 64) == (161, 17)


def test_eq03_at_40_10():
    steps = by_name(inequality_audit("eq03", {"n": 40, "k": 10}))
    assert list(steps) == [
        "middle",
        "ratio_identity",
        "first",
        "second_identity",
        "second_power",
        "second",
        "exponent",
    ]
    assert steps["middle"].satisfied
    assert steps["ratio_identity"].satisfied
    assert steps["ratio_identity"].bound_value == Fraction(288, 812)
    assert steps["first"].satisfied
    # C(19,9) * 2kn = 73902400 exceeds C(35,8) = 23535820
    assert not steps["second"].satisfied


def test_eq03_second_step_holds_further_out():
    steps = by_name(inequality_audit("eq03", {"n": 60, "k": 10}))
    assert steps["first"].satisfied and steps["second"].satisfied
    assert steps["exponent"].satisfied


def test_eq03_at_the_default_n():
    steps = by_name(inequality_audit("eq03", {"k": 10}))
    assert steps["first"].parameters == {"n": 32, "k": 10}
    assert steps["first"].satisfied
    assert not steps["second"].satisfied
    steps = by_name(inequality_audit("eq03", {"k": 50}))
    assert not steps["first"].satisfied


@pytest.mark.parametrize("k", range(3, 31))
def test_eq03_ratio_identity(k):
    steps = by_name(inequality_audit("eq03", {"k": k}))
    assert steps["ratio_identity"].satisfied


@pytest.mark.parametrize("k", range(3, 16))
def test_eq03_middle_step_holds(k):
    assert by_name(inequality_audit("eq03", {"k": k}))["middle"].satisfied


def test_eq03_product_identity_is_off_by_a_factor():
    # true ratio C(5,2)/C(5,1) = 2, product (6/2)(5/6)(4/5)(3/4) = 3/2
    steps = by_name(inequality_audit("eq03", {"n": 10, "k": 3}))
    assert steps["second_identity"].witness_value == 2
    assert steps["second_identity"].bound_value == Fraction(3, 2)
    assert not steps["second_identity"].satisfied
    for n, k in [(40, 10), (32, 10), (60, 10)]:
        steps = by_name(inequality_audit("eq03", {"n": n, "k": k}))
        identity = steps["second_identity"]
        ratio = identity.witness_value / identity.bound_value
        assert ratio == Fraction(n - k - 3, k)


def test_eq03_product_identity_at_n_2k_plus_3():
    steps = by_name(inequality_audit("eq03", {"n": 9, "k": 3}))
    assert steps["second_identity"].satisfied
    assert steps["second_identity"].witness_value == Fraction(5, 2)


def test_eq03_power_relaxation_at_40_10():
    steps = by_name(inequality_audit("eq03", {"n": 40, "k": 10}))
    power = steps["second_power"]
    assert power.bound_value == 40 * Fraction(20, 37) ** 10
    assert power.satisfied
    # the relaxation itself exceeds 1/(2kn), so the last step cannot follow
    assert power.bound_value > steps["second"].bound_value


def test_eq03_preconditions():
    with pytest.raises(UsageError):
        inequality_audit("eq03", {"k": 2})
    with pytest.raises(UsageError):
        inequality_audit("eq03", {"n": 20, "k": 10})
    with pytest.raises(UsageError):
        inequality_audit("eq03", {})


@pytest.mark.parametrize("c", [64, 100])
def test_eq055_holds_at_default_points(c):
    steps = by_name(inequality_audit("eq055", {"a": c, "b": c}))
    assert list(steps) == [
        "identity",
        "relax_gap",
        "relax_exp",
        "final",
        "overall",
    ]
    for name in ("identity", "relax_gap", "relax_exp", "overall"):
        assert steps[name].satisfied, name
    assert steps["identity"].relation == "="


def test_eq055_parameters():
    reports = inequality_audit("eq055", {"a": 64, "b": 64})
    assert reports[0].parameters == {"n": 161, "a": 64, "b": 64, "u_prime": 17}
    custom = inequality_audit(
        "eq055", {"n": 170, "a": 64, "b": 64, "u_prime": 20}
    )
    assert custom[0].parameters["u_prime"] == 20
    assert custom[0].satisfied


def test_eq055_preconditions():
    with pytest.raises(UsageError):
        inequality_audit("eq055", {"a": 10, "b": 10, "n": 20})
    with pytest.raises(UsageError):
        inequality_audit("eq055", {"a": 10, "b": 10, "u_prime": 10})
    with pytest.raises(UsageError):
        inequality_audit("eq055", {"a": 10})
    with pytest.raises(UsageError):
        inequality_audit("eq055", {"a": 10, "b": "10"})


def test_eq033_flags_the_denominator_readings():
    steps = by_name(inequality_audit("eq033", {"a": 70, "b": 64}))
    for name in ("denominator_n_minus_a", "denominator_n_minus_b"):
        assert steps[name].note.endswith("readings differ")
    assert steps["tail_identity"].satisfied
    assert steps["exponent"].note.endswith("reported only")


def test_eq033_readings_coincide_when_a_equals_b():
    steps = by_name(inequality_audit("eq033", {"a": 64, "b": 64}))
    first = steps["denominator_n_minus_a"]
    second = steps["denominator_n_minus_b"]
    assert first.note.endswith("readings coincide")
    assert first.witness_value == second.witness_value
    assert steps["tail_identity"].satisfied


def test_unknown_chain():
    with pytest.raises(UsageError):
        inequality_audit("eq99", {"k": 10})
