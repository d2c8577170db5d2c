import random
from fractions import Fraction

import pytest

from qhg.scalars import LAM, ONE, ZERO, Scalar


def rand_scalar(rng):
    return Scalar(
        {
            rng.randint(-3, 3): Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            for _ in range(rng.randint(0, 4))
        }
    )


def test_canonical_form_drops_zeros():
    s = Scalar({2: Fraction(0), 1: Fraction(3)})
    assert s == Scalar({1: 3})
    assert (s - s).is_zero()
    assert not Scalar(0)


def test_monomial_division():
    assert LAM**3 / LAM == LAM**2
    assert (LAM * 6) / Scalar({1: 2}) == Scalar(3)
    assert Scalar({-1: 1}) * LAM == ONE


def test_non_monomial_division_rejected():
    with pytest.raises(ValueError):
        (LAM**2 - 1) / (LAM - 1)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_ring_axioms_randomized():
    rng = random.Random(11)
    for _ in range(60):
        a, b, c = (rand_scalar(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert a * (b * c) == (a * b) * c
        assert a + (-a) == ZERO


def test_specialize():
    s = LAM**2 * 3 - LAM * Fraction(1, 2) + 5
    assert s.specialize(Fraction(2)) == Fraction(16)
    assert Scalar({-2: 1}).specialize(Fraction(1, 3)) == 9
    with pytest.raises(ZeroDivisionError):
        Scalar({-1: 1}).specialize(0)


def test_rational_value():
    assert Scalar(Fraction(7, 3)).rational_value() == Fraction(7, 3)
    with pytest.raises(ValueError):
        LAM.rational_value()


def test_string_forms():
    assert str(ZERO) == "0"
    assert str(LAM) == "l"
    assert str(-LAM) == "-l"
    assert str(LAM**2 * -12) == "-12*l^2"
    assert str(Scalar({-1: Fraction(1, 2)})) == "1/2*l^-1"
    assert str(LAM * 2 + 1) == "2*l + 1"


def test_power_and_coercion():
    assert LAM**0 == ONE
    assert 2 * LAM == LAM + LAM
    assert LAM - Fraction(1, 2) == LAM + Fraction(-1, 2)
    assert Scalar({1: 2}) ** -2 == Scalar({-2: Fraction(1, 4)})
