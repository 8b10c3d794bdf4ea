import csv
import io
import json
import math
from fractions import Fraction

import jsonschema
import pytest

from derivpoly.numbers import (
    TRIANGLE_SCHEMA,
    NumberTriangle,
    SeriesFamily,
    build_secant_triangle,
    build_stirling_subset_triangle,
    build_tangent_triangle,
    classical_sequences,
    egf_coefficients,
)

N = 40


@pytest.fixture(scope="module")
def T():
    return build_tangent_triangle(N)


@pytest.fixture(scope="module")
def S():
    return build_secant_triangle(N)


def set_partitions(items):
    """All partitions of ``items`` into nonempty blocks (brute force)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first], *part]
        for i in range(len(part)):
            yield part[:i] + [[first, *part[i]]] + part[i + 1:]


def brute_stirling(n, k):
    return sum(1 for p in set_partitions(list(range(n))) if len(p) == k)


def test_tangent_examples(T):
    assert T(3, 1) == 2
    assert T(2, 1) == 0
    assert T(7, 5) == 8400


def test_secant_examples(S):
    assert S(0, 0) == 1
    assert S(4, 2) == 28
    assert S(6, 0) == 61


def test_stirling_examples():
    st = build_stirling_subset_triangle(6)
    assert st(0, 0) == 1
    assert st(3, 2) == 3 == brute_stirling(3, 2)
    assert st(4, 2) == 7 == brute_stirling(4, 2)


def test_stirling_matches_enumeration():
    st = build_stirling_subset_triangle(8)
    for n in range(9):
        for k in range(n + 1):
            assert st(n, k) == brute_stirling(n, k)


def test_bell_numbers():
    st = build_stirling_subset_triangle(15)
    bell = [1]
    for n in range(15):
        bell.append(sum(math.comb(n, j) * bell[j] for j in range(n + 1)))
    for n in range(16):
        if n <= 10:
            assert sum(st.row(n)) == sum(1 for _ in set_partitions(list(range(n))))
        assert sum(st.row(n)) == bell[n]


def test_egf_examples():
    tan1 = egf_coefficients(SeriesFamily.TAN_POWER, 1, 3)
    assert tan1[3] == Fraction(1, 3)
    assert math.factorial(3) * tan1[3] == 2
    sec = egf_coefficients(SeriesFamily.SEC_TAN_POWER, 0, 2)
    assert sec[2] == Fraction(1, 2)
    assert egf_coefficients(SeriesFamily.TAN_POWER, 2, 2)[2] == 1


@pytest.mark.parametrize(
    "family, k, n_max",
    [(SeriesFamily.TAN_POWER, 0, 5), (SeriesFamily.SEC_TAN_POWER, -1, 5), (SeriesFamily.TAN_POWER, 4, 3)],
)
def test_egf_preconditions(family, k, n_max):
    with pytest.raises(ValueError):
        egf_coefficients(family, k, n_max)


def test_classical_sequences():
    tangent, euler = classical_sequences(9)
    assert [tangent[n] for n in (1, 3, 5)] == [1, 2, 16]
    assert [euler[n] for n in (0, 2, 4, 6)] == [1, 1, 5, 61]
    assert tangent[9] == 7936 == math.factorial(9) * egf_coefficients("tan_power", 1, 9)[9]
    assert euler[8] == 1385 == math.factorial(8) * egf_coefficients("sec_tan_power", 0, 8)[8]


def test_parity_and_support(T, S):
    for n in range(N + 1):
        for k in range(n + 1):
            if k < 1 or (n - k) % 2:
                assert T(n, k) == 0 or (n, k) == (0, 0)
            else:
                assert T(n, k) > 0
            if (n - k) % 2:
                assert S(n, k) == 0
            else:
                assert S(n, k) > 0


def test_diagonals(T, S):
    for n in range(N + 1):
        assert S(n, n) == math.factorial(n)
        if n:
            assert T(n, n) == math.factorial(n)


def test_divisibility(T):
    for n in range(N):
        for k in range(1, n + 2):
            assert T(n + 1, k) % k == 0


def test_out_of_range_is_zero(T):
    assert T(5, -1) == 0
    assert T(5, 6) == 0
    assert T(-1, 0) == 0
    with pytest.raises(IndexError):
        T(N + 1, 1)


def test_triangle_matches_series_oracle():
    bound = 20
    T, S = build_tangent_triangle(bound), build_secant_triangle(bound)
    for k in range(bound + 1):
        sec_tan = egf_coefficients(SeriesFamily.SEC_TAN_POWER, k, bound)
        tan = egf_coefficients(SeriesFamily.TAN_POWER, k, bound) if k else None
        for n in range(bound + 1):
            assert math.factorial(n) * sec_tan[n] == S(n, k)
            if tan:
                assert math.factorial(n) * tan[n] == T(n, k)


def test_json_round_trip_and_schema(T):
    obj = json.loads(T.to_json())
    jsonschema.validate(obj, TRIANGLE_SCHEMA)
    assert obj["rows"][7][5] == "8400"
    assert NumberTriangle.from_json_obj(obj) == T


def test_csv_suppresses_zeros():
    text = build_tangent_triangle(7).to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["n", "k", "value"]
    assert ["7", "5", "8400"] in rows
    assert all(r[2] != "0" for r in rows[1:])
