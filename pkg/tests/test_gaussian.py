import random
from fractions import Fraction

import pytest

from stablat.errors import ParseError
from stablat.gaussian import (
    GaussianRational,
    format_rational,
    gr,
    parse_rational,
)


def test_parse_rational_accepts_lowest_terms_strings():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    assert parse_rational("0") == Fraction(0)
    assert parse_rational("-2/9") == Fraction(-2, 9)


def test_parse_rational_normalizes():
    assert parse_rational("2/4") == Fraction(1, 2)


@pytest.mark.parametrize(
    "bad",
    ["", "1/0", "1/-2", "1.5", "a/b", " 1", "1 ", "+3", "3/", "/4", "1/2/3", "0x2"],
)
def test_parse_rational_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


def test_format_rational_lowest_terms():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-8, 2)) == "-4"
    assert format_rational(Fraction(0)) == "0"


def test_roundtrip_random():
    rng = random.Random(1)
    for _ in range(200):
        x = Fraction(rng.randint(-10**12, 10**12), rng.randint(1, 10**9))
        assert parse_rational(format_rational(x)) == x


def test_i_squared_is_minus_one():
    i = gr(0, 1)
    assert i * i == gr(-1)


def test_field_axioms_random():
    rng = random.Random(2)

    def rand():
        return gr(
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
        )

    for _ in range(100):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if not b.is_zero():
            assert (a / b) * b == a


def test_pow_and_conjugate():
    z = gr(Fraction(1, 2), 2)
    assert z ** 0 == gr(1)
    assert z ** 3 == z * z * z
    assert z.conjugate() * z == gr(z.norm_squared())


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        gr(1) / gr(0)


def test_immutability():
    z = gr(1, 2)
    with pytest.raises(AttributeError):
        z.re = Fraction(5)


def test_scalar_coercion():
    assert gr(1, 1) + 1 == gr(2, 1)
    assert 2 * gr(1, 1) == gr(2, 2)
    assert gr(3) == 3
    assert GaussianRational(Fraction(1, 2)) * 2 == 1
