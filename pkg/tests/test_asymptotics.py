import math
from math import comb

import pandas as pd
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setfam import (
    DomainError,
    UsageError,
    construction_count_nontrivial,
    count_nontrivial_subfamilies,
    formula_value,
    ratio_report,
    threshold_check,
)
from setfam.asymptotics import LEADING_TERM, default_grid


def test_thm6_threshold():
    report = threshold_check("thm6", {"n": 40, "k": 10})
    assert report.holds
    assert abs(float(report.rhs) - 31.597) < 1e-3
    assert abs(float(report.slack) - 8.403) < 1e-3
    assert not threshold_check("thm6", {"n": 22, "k": 10}).holds


def test_log_base_changes_the_threshold():
    natural = threshold_check("thm6", {"n": 40, "k": 10})
    binary = threshold_check("thm6", {"n": 40, "k": 10}, log_base="2")
    assert binary.log_base == "2"
    assert binary.rhs > natural.rhs
    assert binary.holds
    with pytest.raises(DomainError):
        threshold_check("thm6", {"n": 40, "k": 10}, log_base="10")


def test_other_thresholds():
    assert not threshold_check("thm3", {"n": 40, "k": 10}).holds
    assert threshold_check("thm5", {"n": 200, "a": 64, "b": 64}).holds
    assert threshold_check("ci_sqrt_gap", {"n": 100, "a": 40, "b": 40}).holds
    gap = threshold_check("thm6_sqrt_gap", {"n": 100, "k": 10})
    assert gap.lhs == 79 and gap.rhs == 10 and gap.holds


def test_log_ratio_has_no_verdict():
    report = threshold_check("thm5_log_ratio", {"a": 8, "b": 10})
    assert report.holds is None
    assert abs(float(report.ratio) - 10 / math.log(8)) < 1e-12
    assert report.to_dict()["holds"] is None
    with pytest.raises(DomainError):
        threshold_check("thm5_log_ratio", {"a": 1, "b": 10})


def test_threshold_errors():
    with pytest.raises(UsageError):
        threshold_check("thm9", {"n": 40, "k": 10})
    with pytest.raises(UsageError):
        threshold_check("thm6", {"n": 40})


@pytest.mark.parametrize(
    "name, fixed",
    [
        ("thm6", {"k": 10}),
        ("thm6", {"k": 1}),
        ("thm3", {"k": 7}),
        ("thm5", {"a": 9, "b": 4}),
        ("thm5", {"a": 5, "b": 5}),
    ],
)
def test_thresholds_are_monotone_in_n(name, fixed):
    verdicts = [
        threshold_check(name, dict(fixed, n=n)).holds for n in range(1, 201)
    ]
    first = verdicts.index(True)
    assert all(verdicts[first:]) and not any(verdicts[:first])


def thm6_grid(max_n, max_k, min_k=1):
    for k in range(min_k, max_k + 1):
        for n in range(2 * k + 1, max_n + 1):
            if threshold_check("thm6", {"n": n, "k": k}).holds:
                yield n, k


def test_eqi1_dominates_eqi2_above_the_threshold():
    for n, k in thm6_grid(80, 20, min_k=2):
        params = {"n": n, "k": k}
        eqi1 = formula_value("eqi1", params).magnitude
        assert eqi1 >= formula_value("eqi2", params).magnitude


@pytest.mark.slow
def test_eqi1_dominates_eqi2_on_the_full_grid():
    for n, k in thm6_grid(200, 60, min_k=2):
        params = {"n": n, "k": k}
        eqi1 = formula_value("eqi1", params).magnitude
        assert eqi1 >= formula_value("eqi2", params).magnitude


def test_eqi2_exceeds_eqi1_for_singletons():
    # n * C(n-1, 1) * 2^0 = n(n-1) against n * 2^1
    for n, k in thm6_grid(200, 1):
        params = {"n": n, "k": k}
        eqi1 = formula_value("eqi1", params).magnitude
        assert eqi1 < formula_value("eqi2", params).magnitude


def test_formula_values():
    eqi1 = formula_value("eqi1", {"n": 10, "k": 3})
    assert eqi1.magnitude.exponent == 39
    assert abs(float(eqi1.log2) - (36 + math.log2(10))) < 1e-12
    eqi2 = formula_value("eqi2", {"n": 10, "k": 3})
    assert abs(float(eqi2.log2) - (21 + math.log2(840))) < 1e-12
    eq003 = formula_value("eq003", {"n": 10, "k": 3})
    assert abs(float(eq003.log2) - math.log2(2096384)) < 1e-12
    ci0 = formula_value("ci0", {"n": 6, "a": 2, "b": 3})
    assert ci0.log2 == 20


def test_cross_formulas_and_delta():
    equal = formula_value("eqci1", {"n": 6, "a": 2, "b": 2})
    assert equal.delta_ab == 1 and equal.log2 == 16
    unequal = formula_value("eqci1", {"n": 6, "a": 2, "b": 3})
    assert unequal.delta_ab == 0 and unequal.log2 == 20
    eqci2 = formula_value("eqci2", {"n": 6, "a": 2, "b": 3})
    assert abs(float(eqci2.log2) - (16 + math.log2(15))) < 1e-12
    data = equal.to_dict()
    assert data["label"] == LEADING_TERM
    assert data["delta_ab"] == 1


def test_formula_errors():
    with pytest.raises(UsageError):
        formula_value("eq999", {"n": 10, "k": 3})
    with pytest.raises(UsageError):
        formula_value("eqci2", {"n": 10, "k": 3})


@st.composite
def layers(draw):
    n = draw(st.integers(2, 20))
    return n, draw(st.integers(1, n))


@settings(max_examples=60)
@given(layers())
def test_eqi1_matches_exact_evaluation(point):
    n, k = point
    exact = n * 2 ** comb(n - 1, k - 1)
    got = float(formula_value("eqi1", {"n": n, "k": k}).log2)
    expected = math.log2(exact)
    assert abs(got - expected) <= 1e-9 * expected


def test_construction_count_10_3():
    count = construction_count_nontrivial(10, 3)
    assert count.per_pair == 2096384
    assert count.identity_holds
    assert count.pairs == 840
    assert (count.gap_lhs, count.gap_rhs) == (13, 7)
    assert count.gap_holds
    data = count.to_dict()
    assert data["per_pair"] == "2096384"
    assert "per_pair_log2" in count.to_dict(exact_bits=8)


def test_construction_count_is_a_lower_bound():
    count = construction_count_nontrivial(7, 3)
    assert count.per_pair == 4000
    assert count.per_pair <= count_nontrivial_subfamilies(7, 3, 4, (1, 2, 3))
    with pytest.raises(UsageError):
        construction_count_nontrivial(6, 3)


def test_default_grids():
    assert all(comb(n, k) <= 25 for n, k in default_grid("I"))
    assert (4, 2) in default_grid("I")
    nontrivial = default_grid("I_nontrivial")
    assert (5, 2) in nontrivial
    assert all(n > 2 * k and k >= 2 for n, k in nontrivial)
    assert (2, 1, 1) in default_grid("CI")
    with pytest.raises(UsageError):
        default_grid("J")


def test_ratio_report_values():
    df = ratio_report("I", [(4, 2)])
    assert list(df.columns) == [
        "quantity",
        "params",
        "exact_log2",
        "formula_log2",
        "diff",
    ]
    row = df.iloc[0]
    assert row["params"] == "n=4,k=2"
    assert abs(row["exact_log2"] - math.log2(27)) < 1e-9
    assert abs(row["formula_log2"] - 5) < 1e-9
    cross = ratio_report("CI", [(2, 1, 1)]).iloc[0]
    assert abs(cross["exact_log2"] - math.log2(9)) < 1e-9
    assert abs(cross["formula_log2"] - 3) < 1e-9


def test_ratio_report_keeps_infeasible_rows():
    df = ratio_report("I", [(4, 2), (9, 3)])
    assert len(df) == 2
    assert pd.isna(df.iloc[1]["exact_log2"])
    assert pd.isna(df.iloc[1]["diff"])
    assert not pd.isna(df.iloc[1]["formula_log2"])


def test_ratio_report_zero_count_is_na():
    row = ratio_report("I_nontrivial", [(5, 1)]).iloc[0]
    assert pd.isna(row["exact_log2"])
    assert abs(row["formula_log2"] - math.log2(20)) < 1e-9


def test_ratio_report_errors():
    with pytest.raises(UsageError):
        ratio_report("J")
    with pytest.raises(UsageError):
        ratio_report("CI", [(4, 2)])
