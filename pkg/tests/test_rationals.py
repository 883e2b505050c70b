from fractions import Fraction

import pytest

from cutbound.errors import InputError
from cutbound.rationals import decimal_approx, format_rational, parse_rational, rat


def test_rat_reduces_to_canonical_form():
    assert rat(6, 4) == Fraction(3, 2)
    assert rat(6, 4).denominator == 2


def test_rat_zero_numerator():
    value = rat(0, 5)
    assert value == 0
    assert value.denominator == 1


def test_rat_sign_moves_to_numerator():
    value = rat(3, -9)
    assert value == Fraction(-1, 3)
    assert value.numerator == -1
    assert value.denominator == 3


def test_rat_zero_denominator_rejected():
    with pytest.raises(InputError):
        rat(1, 0)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("3/2", Fraction(3, 2)),
        ("-1/3", Fraction(-1, 3)),
        ("7", Fraction(7)),
        ("0.25", Fraction(1, 4)),
    ],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


def test_parse_rational_rejects_garbage():
    with pytest.raises(InputError):
        parse_rational("three halves")
    with pytest.raises(InputError):
        parse_rational("1/0")


def test_format_round_trip():
    for value in (Fraction(3, 7), Fraction(-11, 4), Fraction(5), Fraction(0)):
        assert parse_rational(format_rational(value)) == value


def test_decimal_is_advisory_six_digits():
    assert decimal_approx(Fraction(4, 3)) == "1.33333"
    assert decimal_approx(Fraction(148, 99)) == "1.49495"
    assert decimal_approx(Fraction(0)) == "0"
    assert decimal_approx(Fraction(-1, 3)) == "-0.333333"
    assert decimal_approx(Fraction(1, 1000)) == "0.00100000"
