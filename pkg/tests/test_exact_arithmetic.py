from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from utils.errors import InvalidParameterError, UnsupportedError
from utils.exact_arithmetic import ExactScalar, exact_integer, square_free_decompose


@pytest.mark.parametrize("k, expected", [
    (96, (4, 6)),
    (104, (2, 26)),
    (25, (5, 1)),
    (1, (1, 1)),
    (17, (1, 17)),
])
def test_square_free_decompose_examples(k, expected):
    assert square_free_decompose(k) == expected


@pytest.mark.parametrize("k", [0, -3, 2.5, True])
def test_square_free_decompose_rejects_non_positive(k):
    with pytest.raises(InvalidParameterError):
        square_free_decompose(k)


def _is_square_free(value):
    return all(value % (p * p) for p in range(2, isqrt(value) + 1))


@given(k=st.integers(min_value=1, max_value=100_000))
@settings(max_examples=200)
def test_square_free_decompose_property(k):
    outer, radicand = square_free_decompose(k)
    assert outer * outer * radicand == k
    assert _is_square_free(radicand)


def test_normalisation_moves_square_factors_out():
    value = ExactScalar(Fraction(1, 2), Fraction(1, 2), 8)
    assert value.surd == 1
    assert value.radicand == 2


def test_perfect_square_radicand_folds_into_rational():
    value = ExactScalar(3, 2, 4)
    assert value == exact_integer(7)
    assert value.is_integer


def test_zero_surd_resets_radicand():
    assert ExactScalar(5, 0, 17).radicand == 1


@pytest.mark.parametrize("value, text", [
    (ExactScalar.from_half_form(9, 1, 17), "(9+1*sqrt(17))/2"),
    (ExactScalar.from_half_form(9, -1, 17), "(9-1*sqrt(17))/2"),
    (exact_integer(5), "5"),
    (ExactScalar(Fraction(7, 2)), "7/2"),
    (ExactScalar(Fraction(1, 3), 1, 2), "1/3+1*sqrt(2)"),
])
def test_to_string(value, text):
    assert value.to_string() == text


def test_conjugate_sum_and_product_are_exact():
    plus = ExactScalar.from_half_form(9, 1, 17)
    minus = ExactScalar.from_half_form(9, -1, 17)
    assert plus + minus == exact_integer(9)
    assert plus * minus == exact_integer(16)
    assert plus - minus == ExactScalar(0, 1, 17)


def test_mixed_integer_arithmetic():
    plus = ExactScalar.from_half_form(9, 1, 17)
    assert 2 * plus == ExactScalar(9, 1, 17)
    assert plus + 1 == ExactScalar.from_half_form(11, 1, 17)
    assert 1 - plus == ExactScalar.from_half_form(-7, -1, 17)


def test_different_fields_cannot_combine():
    with pytest.raises(UnsupportedError):
        ExactScalar(0, 1, 17) + ExactScalar(0, 1, 5)


def test_numeric_value_and_half_form():
    value = ExactScalar.from_half_form(15, -1, 5)
    assert value.value == pytest.approx((15 - 5 ** 0.5) / 2, abs=1e-12)
    assert value.half_form == (15, -1, 5)
    assert ExactScalar(Fraction(1, 3), 1, 2).half_form is None
    assert exact_integer(4).half_form == (8, 0, 1)


def test_invalid_radicand():
    with pytest.raises(InvalidParameterError):
        ExactScalar(1, 1, 0)
