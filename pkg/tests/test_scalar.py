from fractions import Fraction

import pytest
from hypothesis import given

from helpers import scalars
from psu3.scalar import ONE, SQRT3, ZERO, Scalar, as_scalar


def test_sqrt3_squares_to_three():
    assert SQRT3 * SQRT3 == Scalar(3)


def test_inverse_formula():
    x = Scalar(2, 1)
    # (a - b sqrt3) / (a^2 - 3 b^2) with a=2, b=1 gives 2 - sqrt3
    assert x.inverse() == Scalar(2, -1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_scalar(0.5)


@given(scalars(nonzero=True))
def test_inverse_property(x):
    assert x * x.inverse() == ONE


@given(scalars(), scalars(), scalars())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == ZERO


@given(scalars())
def test_sign_matches_exact_comparison(x):
    # sign via the conjugate trick must agree with a rational bracket of sqrt3
    lo, hi = Fraction(17320508, 10**7), Fraction(17320509, 10**7)
    a, b = Fraction(int(x.a.numerator), int(x.a.denominator)), Fraction(int(x.b.numerator), int(x.b.denominator))
    vals = sorted([a + b * lo, a + b * hi])
    if vals[0] > 0:
        assert x.sign() == 1
    elif vals[1] < 0:
        assert x.sign() == -1


@given(scalars())
def test_json_roundtrip(x):
    assert Scalar.from_json(x.to_json()) == x


def test_render_is_canonical():
    assert Scalar("2/4", -1).render() == "1/2-1√3"
    assert Scalar(0).render() == "0+0√3"


@pytest.mark.parametrize(
    "text, value",
    [
        ("1", Scalar(1)),
        ("-1/2", Scalar("-1/2")),
        ("√3", SQRT3),
        ("-2√3", Scalar(0, -2)),
        ("1/2-3/4√3", Scalar("1/2", "-3/4")),
        ("2*sqrt3", Scalar(0, 2)),
        ("3-sqrt(3)", Scalar(3, -1)),
    ],
)
def test_parse(text, value):
    assert Scalar.parse(text) == value


@pytest.mark.parametrize("text", ["", "x", "1+", "√2", "1.5"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        Scalar.parse(text)


def test_sqrt_in_field():
    assert Scalar(4).sqrt() == Scalar(2)
    assert Scalar(3).sqrt() == SQRT3
    assert Scalar(65).sqrt() is None
    assert Scalar(-1).sqrt() is None
