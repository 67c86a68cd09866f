from fractions import Fraction
from math import comb

import pytest

from setfam import (
    BoundReport,
    SetPairSystem,
    UsageError,
    ValidationError,
    bollobas_verify,
    ci_decomposition_check,
    complement_system,
    cross_ekr_check,
    ekr_bound,
    frankl_diversity_bound,
    frankl_diversity_check,
    ft_kz_bound,
    ft_kz_check,
    ft_kz_window,
    hm_bound,
    kk_compress_check,
    kk_property_suite,
    lovasz_bound,
    max_compatible_B,
    maximal_families_bound,
    maximal_pairs_bound,
    star,
)
from setfam.bounds import (
    as_real,
    ekr_check,
    format_value,
    frankl_diversity_threshold,
    generating_family_check,
    lovasz_check,
    max_compatible_report,
    maximal_families_check,
    maximal_pairs_check,
    witness_report,
)
from setfam.loaders import load_set_pair_system

from conftest import family


def test_ekr_and_hm_values():
    assert ekr_bound(4, 2) == 3
    assert ekr_bound(7, 3) == 15
    assert hm_bound(7, 3) == 13
    assert hm_bound(5, 2) == 3
    with pytest.raises(UsageError):
        ekr_bound(5, 3)
    with pytest.raises(UsageError):
        hm_bound(6, 3)
    with pytest.raises(UsageError):
        ekr_bound(0, 1)


@pytest.mark.parametrize(
    "n, k",
    [(4, 2), (5, 2), (6, 2), pytest.param(7, 3, marks=pytest.mark.slow)],
)
def test_ekr_hm_attained(n, k):
    reports = ekr_check(n, k)
    expected = ["ekr", "hm"] if n > 2 * k else ["ekr"]
    assert [r.name for r in reports] == expected
    for report in reports:
        assert report.satisfied
        assert report.witness_value == report.bound_value


def test_bound_report_serialisation():
    report = BoundReport(
        "demo", {"n": 5, "alpha": Fraction(5, 2)}, Fraction(1, 3), 0
    )
    assert report.satisfied
    data = report.to_dict()
    assert data["params"] == {"n": 5, "alpha": "5/2"}
    assert data["bound"] == "1/3"
    assert data["witness"] == "0"
    assert "relation" not in data and "note" not in data
    exact = BoundReport("eq", {}, 4, 5, relation="=")
    assert not exact.satisfied
    assert exact.to_dict()["relation"] == "="
    assert BoundReport("bare", {}, 7).to_json() == (
        '{"name":"bare","params":{},"bound":"7","witness":null,'
        '"satisfied":true}'
    )


def test_format_and_as_real():
    assert format_value(Fraction(6, 3)) == "2"
    assert format_value(None) is None
    assert as_real("5/2") == Fraction(5, 2)
    assert as_real("2.5") == Fraction(5, 2)
    assert as_real("3") == 3
    assert as_real(2.5) == Fraction(5, 2)
    with pytest.raises(UsageError):
        as_real("three")
    with pytest.raises(UsageError):
        as_real(True)


@pytest.mark.parametrize(
    "a, b", [(a, b) for a in range(1, 6) for b in range(1, 6) if a + b <= 6]
)
def test_bollobas_equality_system(a, b):
    report = bollobas_verify(complement_system(a, b))
    assert report.witness_value == report.bound_value == comb(a + b, a)
    assert report.satisfied


def test_bollobas_rejects_broken_systems():
    with pytest.raises(ValidationError) as info:
        bollobas_verify(SetPairSystem.from_sets(3, [([1], [1])]))
    assert info.value.pair == (1, 1)
    broken = SetPairSystem.from_sets(3, [([1], [2]), ([3], [2])])
    with pytest.raises(ValidationError) as info:
        bollobas_verify(broken)
    assert info.value.pair == (1, 2)


def test_set_pair_system_loading(write_json):
    data = {"n": 2, "a": 1, "b": 1, "pairs": [[[1], [2]], [[2], [1]]]}
    system = load_set_pair_system(write_json(data))
    assert (system.a, system.b, len(system)) == (1, 1, 2)
    assert system.to_dict() == data
    assert bollobas_verify(system).satisfied
    with pytest.raises(UsageError):
        SetPairSystem.from_dict({**data, "a": 2})
    mixed = SetPairSystem.from_sets(4, [([1], [2]), ([1, 3], [2])])
    with pytest.raises(UsageError):
        mixed.a


def test_kk_compress_check():
    a_fam = family(5, 2, [2, 3], [2, 4])
    b_fam = family(5, 2, [2, 5], [3, 4])
    assert kk_compress_check(a_fam, b_fam)
    with pytest.raises(UsageError):
        kk_compress_check(family(4, 2, [1, 2]), family(4, 2, [3, 4]))


def test_kk_property_suite_small():
    result = kk_property_suite(cases=200, seed=1)
    assert result.passed
    assert (result.cases, result.seed) == (200, 1)


def test_kk_property_suite_draws_informative_pairs(monkeypatch):
    import setfam.bounds

    drawn = []
    original = setfam.bounds.random_cross_intersecting_pair

    def recording(n, a, b, rng):
        pair = original(n, a, b, rng)
        drawn.append((n, a, b, pair))
        return pair

    monkeypatch.setattr(
        setfam.bounds, "random_cross_intersecting_pair", recording
    )
    assert kk_property_suite(cases=300, seed=0).passed
    assert len(drawn) == 300
    for n, a, b, (a_fam, b_fam) in drawn:
        assert a + b <= n
        assert len(a_fam) >= 1 and len(b_fam) >= 1


@pytest.mark.slow
def test_kk_property_suite_full():
    assert kk_property_suite(cases=1000, seed=0).passed


def test_lovasz_values():
    assert lovasz_bound(6, 3, 2, 4) == 9
    assert lovasz_bound(6, 3, 2, 1) == 12
    assert lovasz_bound(6, 3, 2, 20) == 0
    with pytest.raises(UsageError):
        lovasz_bound(4, 3, 2, 1)


@pytest.mark.parametrize("n, a, b", [(6, 3, 2), (6, 3, 3), (7, 3, 3)])
def test_lovasz_dominates(n, a, b):
    reports = lovasz_check(n, a, b)
    assert len(reports) == comb(n, a)
    assert all(r.satisfied for r in reports)


def test_lovasz_tight_at_integer_points():
    tight = [r for r in lovasz_check(6, 3, 2) if r.note == "integer x"]
    assert [r.parameters["t"] for r in tight] == [1, 4, 10, 20]
    assert all(r.bound_value == r.witness_value for r in tight)


def test_ft_kz_values():
    assert ft_kz_bound(7, 3, 3, 1) == 30
    assert ft_kz_bound(7, 3, 3, 2) == 30
    assert ft_kz_bound(7, 3, 3, 3) == 32
    assert ft_kz_bound(6, 3, 2, 2) == 13
    assert ft_kz_bound(6, 3, 2, 3) == 13
    assert ft_kz_window(7, 3, 3, 3) == (1, 15)
    with pytest.raises(UsageError):
        ft_kz_bound(7, 3, 3, 4)
    with pytest.raises(UsageError):
        ft_kz_bound(6, 3, 3, 1)


@pytest.mark.parametrize(
    "n, a, b, alpha",
    [(6, 3, 2, 2), (6, 3, 2, 3), (7, 3, 3, 1), (7, 3, 3, 2), (7, 3, 3, 3)],
)
def test_ft_kz_dominates_at_integer_alpha(n, a, b, alpha):
    report = ft_kz_check(n, a, b, alpha)
    assert report.satisfied


@pytest.mark.parametrize("n", range(3, 13))
def test_ft_kz_exact_at_alpha_equal_a(n):
    for a in range(1, n - 1):
        for b in range(1, n - a):
            expected = 1 + max_compatible_B(n, a, b, 1)
            assert ft_kz_bound(n, a, b, a) == expected


def test_ft_kz_fails_between_integer_alphas():
    report = ft_kz_check(6, 3, 2, "5/2")
    assert report.bound_value == 12
    assert report.witness_value == 13
    assert not report.satisfied
    assert report.note == "window [3, 4]"


def test_frankl_diversity_values():
    assert frankl_diversity_bound(7, 3, 3) == 13
    assert frankl_diversity_threshold(7, 3, 3) == 1
    with pytest.raises(UsageError):
        frankl_diversity_bound(7, 3, 2)
    with pytest.raises(UsageError):
        frankl_diversity_bound(6, 3, 3)


@pytest.mark.slow
def test_frankl_diversity_check_7_3():
    report = frankl_diversity_check(7, 3, 3)
    assert report.satisfied
    assert report.witness_value == 13


def test_maximal_object_bounds():
    assert maximal_pairs_bound(2, 1, 1) == 16
    assert maximal_families_bound(5, 2) == 1000
    assert maximal_pairs_check(4, 2, 2).satisfied
    report = maximal_families_check(5, 2)
    assert report.witness_value == 15 and report.satisfied


@pytest.mark.parametrize("n, a, b", [(4, 2, 2), (5, 2, 2), (5, 2, 3)])
def test_generating_family_check(n, a, b):
    report = generating_family_check(n, a, b)
    assert report.name == "lemma1"
    assert report.satisfied
    assert report.bound_value == comb(a + b, a)


@pytest.mark.parametrize("n, a", [(4, 2), (5, 2), (6, 1)])
def test_cross_ekr(n, a):
    report = cross_ekr_check(n, a)
    assert report.satisfied
    assert report.witness_value == report.bound_value


def test_ci_decomposition():
    (exact,) = ci_decomposition_check(4, 1, 2)
    assert exact.relation == "=" and exact.satisfied
    (swapped,) = ci_decomposition_check(4, 2, 1)
    assert swapped.parameters == exact.parameters
    lower, upper = ci_decomposition_check(4, 2, 2)
    assert lower.satisfied and upper.satisfied
    assert lower.parameters["T"] == 3


def test_max_compatible_report():
    report = max_compatible_report(6, 3, 2, 2)
    assert report.bound_value == 10
    assert report.witness_value is None


def test_witness_report():
    report = witness_report("ekr", {"n": 5, "k": 2}, 4, star(5, 2, 1))
    assert report.satisfied and report.witness_value == 4
    with pytest.raises(ValidationError):
        witness_report("ekr", {}, 4, family(4, 2, [1, 2], [3, 4]))
