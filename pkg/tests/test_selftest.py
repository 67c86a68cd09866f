import copy

from setfam import pascal_table
from setfam.selftest import CheckResult, check_pascal_rule, run_selftest


def test_selftest_passes():
    result = run_selftest(cases=50)
    assert result.passed
    assert result.first_failure is None
    lines = result.summary()
    assert lines[-1] == "9/9 checks passed"
    assert all(line.startswith("PASS ") for line in lines[:-1])


def test_corrupted_table_is_caught():
    table = copy.deepcopy(pascal_table())
    table[10][3] += 1
    result = run_selftest(cases=10, table=table)
    assert not result.passed
    failure = result.first_failure
    assert failure.name == "pascal_rule"
    assert failure.detail.startswith("Pascal-rule violation")
    assert "C(10,3)" in failure.detail
    # the shared table is untouched
    assert check_pascal_rule(pascal_table()) == ""


def test_truncated_row_is_caught():
    table = copy.deepcopy(pascal_table())
    table[5] = table[5][:-1]
    assert check_pascal_rule(table).startswith("Pascal-rule violation")


def test_check_result_line():
    assert CheckResult("x", True).line() == "PASS x"
    assert CheckResult("y", False, "boom").line() == "FAIL y: boom"
