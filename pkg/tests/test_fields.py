from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from waringcert.fields import (DEFAULT_PRIME, QQ, FieldError, PrimeField, is_prime, random_prime,
                               rational_str, to_rational)

ints = st.integers(-10**30, 10**30)
nonzero = ints.filter(lambda x: x != 0)


def test_to_rational_accepts_exact_inputs():
    assert to_rational(3) == Fraction(3)
    assert to_rational("  -7/21 ") == Fraction(-1, 3)
    assert to_rational(Fraction(2, 4)) == Fraction(1, 2)


@pytest.mark.parametrize("bad", [0.5, True, None, [1]])
def test_to_rational_rejects_inexact_or_foreign(bad):
    with pytest.raises(TypeError):
        to_rational(bad)


@pytest.mark.parametrize("bad", ["", "1/0", "x"])
def test_to_rational_rejects_bad_literals(bad):
    with pytest.raises(ValueError):
        to_rational(bad)


@given(ints, nonzero)
def test_rational_string_round_trip(n, d):
    q = Fraction(n, d)
    assert to_rational(rational_str(q)) == q


def test_long_rationals_survive_string_conversion():
    q = Fraction(7**6000, 3**5000 + 1)
    assert to_rational(rational_str(q)) == q


def test_prime_field_arithmetic():
    f = PrimeField()
    a = f(Fraction(3, 5))
    assert a * 5 == f(3)
    assert (a / a) == f.one()
    assert a - a == f.zero()
    with pytest.raises(FieldError):
        f.inverse(0)
    with pytest.raises(FieldError):
        f.reduce(Fraction(1, DEFAULT_PRIME))


@given(ints, nonzero)
def test_reduction_is_a_ring_map(n, d):
    f = PrimeField()
    if d % f.p == 0:
        return
    q = Fraction(n, d)
    assert f.reduce(q) * f.reduce(d) % f.p == f.reduce(n)


def test_prime_field_validates_modulus():
    with pytest.raises(ValueError):
        PrimeField(2**31 - 3)
    with pytest.raises(ValueError):
        PrimeField(101)


def test_primes():
    assert is_prime(DEFAULT_PRIME)
    assert not is_prime(2**31 - 3)
    p = random_prime()
    assert is_prime(p) and 2**30 < p < 2**31
    assert QQ(5) == Fraction(5)
