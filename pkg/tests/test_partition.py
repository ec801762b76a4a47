"""Binary partition function b(n) and its congruences."""

import pytest

from pow2comp.errors import CapacityError, OutOfRangeError
from pow2comp.partition import (
    brute_force_b,
    build_partition_table,
    b_mod32_formula_check,
    mu_exponent,
    rodseth_gupta_check,
    rudin_shapiro,
    thue_morse,
)


def test_prefix_values():
    table = build_partition_table(14)
    # partitions into powers of 2, order ignored
    assert [table.value(n) for n in range(15)] == [
        1, 1, 2, 2, 4, 4, 6, 6, 10, 10, 14, 14, 20, 20, 26,
    ]


def test_brute_force_agreement():
    table = build_partition_table(60)
    for n in range(61):
        assert brute_force_b(n) == table.value(n)


def test_halving_recurrence():
    table = build_partition_table(600)
    for n in range(1, 300):
        assert table.value(2 * n) == table.value(2 * n - 1) + table.value(n)
        assert table.value(2 * n + 1) == table.value(2 * n)


def test_table_guards():
    table = build_partition_table(10)
    with pytest.raises(OutOfRangeError):
        table.value(11)
    with pytest.raises(CapacityError):
        build_partition_table(2_000_001)


def test_mu_exponent():
    assert [mu_exponent(s) for s in range(1, 7)] == [3, 5, 6, 8, 9, 11]
    with pytest.raises(ValueError):
        mu_exponent(0)


def test_thue_morse_definition():
    for n in range(200):
        assert thue_morse(n) == bin(n).count("1") % 2
    assert [thue_morse(n) for n in range(8)] == [0, 1, 1, 0, 1, 0, 0, 1]


def test_rudin_shapiro_definition():
    for n in range(200):
        pairs = bin(n)[2:]
        count = sum(1 for i in range(len(pairs) - 1) if pairs[i] == pairs[i + 1] == "1")
        assert rudin_shapiro(n) == count % 2
    assert rudin_shapiro(3) == 1
    assert rudin_shapiro(6) == 1
    assert rudin_shapiro(7) == 0


def test_rodseth_gupta_small():
    table = build_partition_table(2**3 * 25)
    report = rodseth_gupta_check(1, 25, table)
    assert report.all_divisible
    assert report.exact
    assert report.witness == 1
    assert report.witness_valuation == 3


def test_rodseth_gupta_table_too_small():
    table = build_partition_table(100)
    with pytest.raises(OutOfRangeError):
        rodseth_gupta_check(3, 201, table)


def test_b_mod32_formula_small():
    table = build_partition_table(4 * 500 + 2)
    for n in range(501):
        assert b_mod32_formula_check(n, table)
    with pytest.raises(OutOfRangeError):
        b_mod32_formula_check(501, table)
