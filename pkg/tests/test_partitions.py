import pytest

from rcolor import series as S
from rcolor.partitions import (
    PartitionSeriesRequest,
    a_r,
    a_r_series,
    c_by_literal_product,
    c_series,
    enumerate_colored_partitions,
    p_euler_oracle,
)


def test_a3_of_2_is_7():
    assert a_r_series(PartitionSeriesRequest(3, 5))[2] == 7
    assert enumerate_colored_partitions(2, 3) == 7


def test_p_of_5():
    assert a_r(1, 5)[5] == 7
    assert p_euler_oracle(5)[5] == 7
    assert p_euler_oracle(0) == [1]


def test_a5_matches_enumeration():
    assert a_r(5, 8).tolist() == [enumerate_colored_partitions(n, 5) for n in range(9)]


def test_a2_is_overpartitions():
    # overpartition counts 1, 2, 4, 8, 14, 24
    assert a_r(2, 5).tolist() == [enumerate_colored_partitions(n, 2) for n in range(6)]
    assert a_r(2, 5).tolist() == [1, 2, 4, 8, 14, 24]


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_series_matches_enumeration(r):
    assert a_r(r, 12).tolist() == [enumerate_colored_partitions(n, r) for n in range(13)]


def test_oracle_trivia():
    assert all(enumerate_colored_partitions(0, r) == 1 for r in range(1, 8))
    assert enumerate_colored_partitions(1, 5) == 5


def test_oracle_limit():
    with pytest.raises(ValueError):
        enumerate_colored_partitions(15, 2)


def test_request_validation():
    with pytest.raises(ValueError):
        PartitionSeriesRequest(0, 10)


def test_a1_equals_euler_recurrence():
    assert a_r(1, 200).tolist() == p_euler_oracle(200)


def test_c_series_small():
    c = c_series(10)
    assert c[0] == 1
    assert c[5] == 2
    assert c.coefficients == c_by_literal_product(10)


def test_c_series_modular_reduction():
    exact = c_series(500)
    assert S.reduce(exact.series, 5) == c_series(500, 5).series
    assert S.reduce(exact.series, 7) == c_series(500, 7).series


def test_a3_5n_plus_1_is_3c_mod_5():
    c = c_series(2000, 5)
    a3 = a_r(3, 5 * 2000 + 1, 5)
    assert all((a3[5 * n + 1] - 3 * c[n]) % 5 == 0 for n in range(2001))


def test_modular_matches_exact():
    for r in (1, 3, 4, 7):
        assert S.reduce(a_r(r, 300), 7) == a_r(r, 300, 7)
