from fractions import Fraction

import pytest

from bvcalc import Scalar


def test_zero_is_empty_sum():
    assert Scalar.zero().is_zero
    assert Scalar.of(3) - Scalar.of(3) == Scalar.zero()
    assert not (Scalar.of(3) - Scalar.of(3))


def test_exact_rational_arithmetic():
    a = Scalar.of(Fraction(1, 3))
    b = Scalar.of(Fraction(1, 6))
    assert a + b == Scalar.of(Fraction(1, 2))
    assert a * b == Scalar.of(Fraction(1, 18))


def test_i_squares_to_minus_one():
    assert Scalar.i() * Scalar.i() == Scalar.of(-1)


def test_laurent_powers_multiply():
    # hbar^-2 is needed by the exponential-coefficient identities
    s = Scalar.hbar(-2) * Scalar.hbar(3)
    assert s == Scalar.hbar(1)
    assert Scalar.hbar(1, Fraction(1, 2)).hbar_powers() == [1]


def test_split_hbar_strips_power():
    s = Scalar.of(2) + Scalar.hbar(1, 3) + Scalar.hbar(1) * Scalar.i()
    parts = dict(s.split_hbar())
    assert parts[0] == Scalar.of(2)
    assert parts[1] == Scalar.of(3) + Scalar.i()


def test_as_fraction_guards():
    assert Scalar.of(Fraction(-7, 4)).as_fraction() == Fraction(-7, 4)
    with pytest.raises(ValueError):
        Scalar.i().as_fraction()
    with pytest.raises(ValueError):
        Scalar.hbar().as_fraction()


@pytest.mark.parametrize("scalar, text", [
    (Scalar.of(Fraction(1, 2)), "1/2"),
    (Scalar.of(-2), "-2"),
    (Scalar.i() * 2, "2*i"),
    (-Scalar.i(), "-1*i"),
    (Scalar.hbar(2, 3), "3*hbar^2"),
    (Scalar.hbar(), "hbar"),
    (Scalar.of(1) + Scalar.i() * 2, "1 + 2*i"),
    (Scalar.i() * 2 * Scalar.hbar(2), "2*i*hbar^2"),
    (Scalar.zero(), "0"),
])
def test_rendering(scalar, text):
    assert str(scalar) == text


def test_random_ring_identities(rng):
    def rand():
        return Scalar({rng.randint(-1, 2): (Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                                            Fraction(rng.randint(-5, 5), rng.randint(1, 4)))})
    for _ in range(200):
        a, b, c = rand(), rand(), rand()
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a + (-a) == Scalar.zero()
