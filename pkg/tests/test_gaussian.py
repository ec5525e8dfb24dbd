from fractions import Fraction

import pytest

from trilnd.gaussian import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    ScalarParseError,
    gq,
    gq_format,
    gq_nth_root,
    gq_parse,
    gq_sqrt,
)


def test_constructor_and_shorthand():
    a = GaussianRational.of(1, 2)
    assert a == gq(1, 2)
    assert gq(Fraction(1, 2)).real == Fraction(1, 2)
    assert gq(3).imag == 0


def test_field_arithmetic():
    a = gq(1, 2)
    b = gq(3, -1)
    assert a + b == gq(4, 1)
    assert a - b == gq(-2, 3)
    assert a * b == gq(5, 5)
    assert a * a.inverse() == ONE
    assert (a / b) * b == a
    assert -a == gq(-1, -2)
    assert 2 - a == gq(1, -2)
    assert 6 / gq(2) == gq(3)


def test_i_squares_to_minus_one():
    assert I * I == gq(-1)
    assert I**4 == ONE
    assert I**-1 == -I


def test_pow_negative_and_zero():
    a = gq(2, 1)
    assert a**0 == ONE
    assert a**-2 == (a * a).inverse()


def test_conjugate_and_norm():
    a = gq(3, 4)
    assert a.conjugate() == gq(3, -4)
    assert a.norm() == 25
    assert a * a.conjugate() == gq(25)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_bool_and_is_rational():
    assert not ZERO
    assert gq(0, 1)
    assert gq(5).is_rational()
    assert not I.is_rational()


def test_parse_basic_forms():
    assert gq_parse("3/4") == gq(Fraction(3, 4))
    assert gq_parse("-i") == gq(0, -1)
    assert gq_parse("1/2+2/3i") == gq(Fraction(1, 2), Fraction(2, 3))
    assert gq_parse("i") == I
    assert gq_parse("-2/5") == gq(Fraction(-2, 5))
    assert gq_parse("1-i") == gq(1, -1)
    assert gq_parse("0") == ZERO


@pytest.mark.parametrize("bad", ["", "1++i", "i2", "1/0", "2.5", "1 + i", "x"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ScalarParseError):
        gq_parse(bad)


def test_format_round_trips():
    values = [
        gq(0),
        gq(1),
        gq(-1),
        I,
        -I,
        gq(Fraction(3, 4)),
        gq(0, Fraction(-2, 7)),
        gq(Fraction(1, 2), Fraction(2, 3)),
        gq(1, -1),
        gq(-5, 3),
    ]
    for v in values:
        assert gq_parse(gq_format(v)) == v


def test_sqrt_of_squares():
    assert gq_sqrt(gq(Fraction(9, 4))) == gq(Fraction(3, 2))
    root = gq_sqrt(gq(-1))
    assert root * root == gq(-1)
    root = gq_sqrt(gq(0, 2))
    assert root * root == gq(0, 2)
    assert gq_sqrt(gq(-4)) in (gq(0, 2), gq(0, -2))
    assert gq_sqrt(ZERO) == ZERO


def test_sqrt_of_non_squares():
    assert gq_sqrt(gq(2)) is None
    assert gq_sqrt(gq(Fraction(1, 2))) is None
    assert gq_sqrt(gq(0, 3)) is None
    assert gq_sqrt(gq(1, 1)) is None


def test_nth_root():
    assert gq_nth_root(gq(8), 3) == gq(2)
    assert gq_nth_root(gq(16), 4) in (gq(2), gq(-2), gq(0, 2), gq(0, -2))
    assert gq_nth_root(gq(5), 1) == gq(5)
    assert gq_nth_root(ZERO, 7) == ZERO
    assert gq_nth_root(gq(2), 3) is None
    root = gq_nth_root(gq(0, -8), 3)
    assert root is not None and root**3 == gq(0, -8)
    with pytest.raises(ValueError):
        gq_nth_root(gq(1), 0)


def test_hashable_and_comparable_with_ints():
    assert gq(2) == 2
    assert 2 == gq(2)
    assert hash(gq(1, 0)) == hash(gq(1))
    assert len({gq(1), gq(1, 0), ONE}) == 1
