"""Scalar fields: exact rationals, prime fields and checked complex doubles.

Rationals are :class:`fractions.Fraction`.  Prime fields are described by a
:class:`PrimeField` object; matrices over a prime field are numpy ``int64``
arrays with entries in ``[0, p)``.  The module-level ``QQ`` object tags the
rational field so that linear algebra routines can dispatch on it.
"""

import contextlib
import math
import random
import sys
from fractions import Fraction

Rational = Fraction

# 2^31 - 1: products of two residues fit in a signed 64-bit integer.
DEFAULT_PRIME = 2147483647


class FieldError(ArithmeticError):
    """Raised for division by zero or by a non-invertible residue."""


class RationalField:
    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        return to_rational(x)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return Fraction(a) + Fraction(b)

    def sub(self, a, b):
        return Fraction(a) - Fraction(b)

    def mul(self, a, b):
        return Fraction(a) * Fraction(b)

    def inverse(self, a):
        a = Fraction(a)
        if a == 0:
            raise FieldError("inverse of zero rational")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inverse(b))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


@contextlib.contextmanager
def unlimited_digits():
    """Lift the interpreter's cap on int <-> str conversion (exact data can be long)."""
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is None:
        yield
        return
    old = getter()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def to_rational(x):
    """Convert ints, Fractions and strings like "3/7" to a Fraction.

    Floats are refused: they would silently inject rounding into exact data.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        try:
            with unlimited_digits():
                return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("bad rational literal %r" % x) from exc
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError("cannot convert %r to an exact rational" % (x,))


def rational_str(q):
    q = Fraction(q)
    with unlimited_digits():
        if q.denominator == 1:
            return str(q.numerator)
        return "%d/%d" % (q.numerator, q.denominator)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng=None, lo=2**30 + 1, hi=2**31 - 1):
    """A random prime in [lo, hi]; the bounds keep products inside int64."""
    rng = rng or random.Random()
    while True:
        n = rng.randrange(lo, hi + 1) | 1
        if n <= hi and is_prime(n):
            return n


class PrimeField:
    """GF(p) for a prime 2^30 < p < 2^31."""

    def __init__(self, p=DEFAULT_PRIME):
        p = int(p)
        if not (2**30 < p < 2**31):
            raise ValueError("prime must lie in (2^30, 2^31), got %d" % p)
        if not is_prime(p):
            raise ValueError("%d is not prime" % p)
        self.p = p
        self.characteristic = p
        self.name = "GF(%d)" % p

    def __call__(self, x):
        return PrimeFieldElement(self.reduce(x), self)

    def reduce(self, x):
        """Residue of an int or Fraction; a denominator divisible by p is an error."""
        if isinstance(x, PrimeFieldElement):
            return x.residue
        if isinstance(x, int):
            return x % self.p
        x = to_rational(x)
        if x.denominator % self.p == 0:
            raise FieldError("denominator %d vanishes mod %d" % (x.denominator, self.p))
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def zero(self):
        return PrimeFieldElement(0, self)

    def one(self):
        return PrimeFieldElement(1, self)

    def add(self, a, b):
        return self(a) + self(b)

    def sub(self, a, b):
        return self(a) - self(b)

    def mul(self, a, b):
        return self(a) * self(b)

    def inverse(self, a):
        return self(a).inverse()

    def div(self, a, b):
        return self(a) / self(b)

    def inv_residue(self, r):
        r %= self.p
        if r == 0:
            raise FieldError("inverse of zero in %s" % self.name)
        return pow(r, self.p - 2, self.p)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class PrimeFieldElement:
    __slots__ = ("residue", "field")

    def __init__(self, residue, field):
        self.residue = residue % field.p
        self.field = field

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.field != self.field:
                raise ValueError("elements of different prime fields")
            return other.residue
        return self.field.reduce(other)

    def __add__(self, other):
        return PrimeFieldElement(self.residue + self._coerce(other), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement(self.residue - self._coerce(other), self.field)

    def __rsub__(self, other):
        return PrimeFieldElement(self._coerce(other) - self.residue, self.field)

    def __mul__(self, other):
        return PrimeFieldElement(self.residue * self._coerce(other), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.field)

    def inverse(self):
        return PrimeFieldElement(self.field.inv_residue(self.residue), self.field)

    def __truediv__(self, other):
        return self * PrimeFieldElement(self._coerce(other), self.field).inverse()

    def __rtruediv__(self, other):
        return PrimeFieldElement(self._coerce(other), self.field) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.field == other.field and self.residue == other.residue
        try:
            return self.residue == self.field.reduce(other)
        except (TypeError, ValueError, FieldError):
            return False

    def __hash__(self):
        return hash((self.residue, self.field.p))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return "%d (mod %d)" % (self.residue, self.field.p)


def check_finite_complex(values, what="value"):
    """Raise if any complex/float entry is NaN or infinite."""
    for v in values:
        c = complex(v)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise FloatingPointError("non-finite %s: %r" % (what, v))
    return values
