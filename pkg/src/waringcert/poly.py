"""The graded ring R = k[x0..x4]: monomials, forms, Veronese vectors, apolarity.

Monomials of each degree are listed in graded lexicographic order with
x0 > x1 > ... > x4, i.e. exponent tuples sorted in decreasing
lexicographic order.  Every coefficient vector in the package uses it.
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .fields import QQ, PrimeField, to_rational

NVARS = 5


@lru_cache(maxsize=None)
def monomials(d, nvars=NVARS):
    if d < 0:
        raise ValueError("negative degree")
    mons = [e for e in itertools.product(range(d + 1), repeat=nvars) if sum(e) == d]
    mons.sort(reverse=True)
    return tuple(mons)


@lru_cache(maxsize=None)
def monomial_index(d, nvars=NVARS):
    return {m: i for i, m in enumerate(monomials(d, nvars))}


def dim_graded(d, nvars=NVARS):
    if d < 0:
        return 0
    return math.comb(nvars - 1 + d, d)


def multinomial(alpha):
    d = sum(alpha)
    out = math.factorial(d)
    for a in alpha:
        out //= math.factorial(a)
    return out


@lru_cache(maxsize=None)
def apolar_weights(d):
    """alpha! for each monomial of degree d (the apolarity weights)."""
    return tuple(math.prod(math.factorial(a) for a in m) for m in monomials(d))


@lru_cache(maxsize=None)
def mult_table(a, b):
    """Index in degree a+b of the product of monomial i (degree a) and j (degree b)."""
    ma, mb = monomials(a), monomials(b)
    idx = monomial_index(a + b)
    t = np.empty((len(ma), len(mb)), dtype=np.int64)
    for i, u in enumerate(ma):
        for j, v in enumerate(mb):
            t[i, j] = idx[tuple(x + y for x, y in zip(u, v))]
    t.setflags(write=False)
    return t


@lru_cache(maxsize=None)
def shift_index(i, d):
    """For each monomial m of degree d-1, the index of x_i*m in degree d."""
    idx = monomial_index(d)
    out = np.array([idx[tuple(e + (k == i) for k, e in enumerate(m))] for m in monomials(d - 1)], dtype=np.int64)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def first_variable_split(d):
    """For each monomial m of degree d: (first variable i dividing m, index of m/x_i)."""
    idx = monomial_index(d - 1)
    var, rest = [], []
    for m in monomials(d):
        i = next(k for k in range(NVARS) if m[k] > 0)
        var.append(i)
        rest.append(idx[tuple(e - (k == i) for k, e in enumerate(m))])
    v, r = np.array(var, dtype=np.int64), np.array(rest, dtype=np.int64)
    v.setflags(write=False)
    r.setflags(write=False)
    return v, r


def _is_modular(field):
    return isinstance(field, PrimeField)


def _zero_coeffs(n, field):
    if _is_modular(field):
        return np.zeros(n, dtype=np.int64)
    return [Fraction(0)] * n


def _coerce_coeffs(coeffs, field):
    if _is_modular(field):
        if isinstance(coeffs, np.ndarray) and coeffs.dtype == np.int64:
            return coeffs % field.p
        return np.array([field.reduce(c) for c in coeffs], dtype=np.int64)
    return [to_rational(c) if not isinstance(c, Fraction) else c for c in coeffs]


class GradedForm:
    """A homogeneous form of fixed degree in x0..x4 with coefficients in ``field``."""

    __slots__ = ("degree", "coeffs", "field")

    def __init__(self, degree, coeffs, field=QQ):
        if degree < 0:
            raise ValueError("negative degree")
        n = dim_graded(degree)
        if len(coeffs) != n:
            raise ValueError("degree %d needs %d coefficients, got %d" % (degree, n, len(coeffs)))
        self.degree = degree
        self.field = field
        self.coeffs = _coerce_coeffs(coeffs, field)

    @classmethod
    def zero(cls, degree, field=QQ):
        return cls(degree, _zero_coeffs(dim_graded(degree), field), field)

    @classmethod
    def monomial(cls, exponents, coeff=1, field=QQ):
        d = sum(exponents)
        c = _zero_coeffs(dim_graded(d), field)
        c[monomial_index(d)[tuple(exponents)]] = field.reduce(coeff) if _is_modular(field) else to_rational(coeff)
        return cls(d, c, field)

    @classmethod
    def from_terms(cls, terms, degree=None, field=QQ):
        """Build from a mapping exponent-tuple -> coefficient."""
        terms = dict(terms)
        if degree is None:
            if not terms:
                raise ValueError("degree needed for the zero form")
            degree = sum(next(iter(terms)))
        idx = monomial_index(degree)
        c = _zero_coeffs(dim_graded(degree), field)
        for e, v in terms.items():
            if sum(e) != degree:
                raise ValueError("inhomogeneous term %r" % (e,))
            k = idx[tuple(e)]
            c[k] = (c[k] + (field.reduce(v) if _is_modular(field) else to_rational(v)))
        if _is_modular(field):
            c %= field.p
        return cls(degree, c, field)

    @classmethod
    def variable(cls, i, field=QQ):
        e = [0] * NVARS
        e[i] = 1
        return cls.monomial(tuple(e), 1, field)

    @classmethod
    def linear(cls, coeffs, field=QQ):
        return cls(1, list(coeffs), field)

    def terms(self):
        return {m: c for m, c in zip(monomials(self.degree), self.coeffs) if c}

    def is_zero(self):
        if _is_modular(self.field):
            return not np.any(self.coeffs)
        return all(c == 0 for c in self.coeffs)

    def _same(self, other):
        if not isinstance(other, GradedForm):
            raise TypeError("expected a GradedForm")
        if other.field != self.field:
            raise ValueError("forms over different fields")

    def __add__(self, other):
        self._same(other)
        if other.degree != self.degree:
            raise ValueError("adding forms of degrees %d and %d" % (self.degree, other.degree))
        if _is_modular(self.field):
            return GradedForm(self.degree, (self.coeffs + other.coeffs) % self.field.p, self.field)
        return GradedForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.field)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if _is_modular(self.field):
            return GradedForm(self.degree, self.coeffs * self.field.reduce(c) % self.field.p, self.field)
        c = to_rational(c)
        return GradedForm(self.degree, [c * a for a in self.coeffs], self.field)

    def __mul__(self, other):
        if isinstance(other, GradedForm):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __call__(self, point):
        return evaluate(self, point)

    def __eq__(self, other):
        if not isinstance(other, GradedForm):
            return NotImplemented
        if self.degree != other.degree or self.field != other.field:
            return False
        if _is_modular(self.field):
            return bool(np.array_equal(self.coeffs, other.coeffs))
        return list(self.coeffs) == list(other.coeffs)

    def __hash__(self):
        return hash((self.degree, tuple(int(c) for c in self.coeffs) if _is_modular(self.field) else tuple(self.coeffs)))

    def partial(self, i):
        """Partial derivative with respect to x_i."""
        if self.degree == 0:
            return GradedForm.zero(0, self.field)
        idx = monomial_index(self.degree - 1)
        out = _zero_coeffs(dim_graded(self.degree - 1), self.field)
        for m, c in zip(monomials(self.degree), self.coeffs):
            if c and m[i]:
                k = idx[tuple(e - (j == i) for j, e in enumerate(m))]
                out[k] = out[k] + c * m[i]
        if _is_modular(self.field):
            out %= self.field.p
        return GradedForm(self.degree - 1, out, self.field)

    def gradient(self):
        return [self.partial(i) for i in range(NVARS)]

    def to_field(self, field):
        if field == self.field:
            return self
        if _is_modular(self.field):
            raise ValueError("cannot lift a modular form to %r" % field)
        return GradedForm(self.degree, self.coeffs, field)

    def to_vector(self):
        return self.coeffs

    def __repr__(self):
        parts = []
        for m, c in self.terms().items():
            mon = "*".join("x%d" % i + ("^%d" % e if e > 1 else "") for i, e in enumerate(m) if e)
            parts.append("%s%s" % (c, "*" + mon if mon else ""))
        return "GradedForm(%d: %s)" % (self.degree, " + ".join(parts) if parts else "0")


QuarticForm = GradedForm


def quartic(coeffs, field=QQ):
    return GradedForm(4, coeffs, field)


class ProjectivePoint:
    """A point of P^4 given by homogeneous coordinates (raw values are kept)."""

    __slots__ = ("coords", "_canon")

    def __init__(self, coords):
        coords = tuple(to_rational(c) for c in coords)
        if len(coords) != NVARS:
            raise ValueError("a point of P^4 needs %d coordinates, got %d" % (NVARS, len(coords)))
        if all(c == 0 for c in coords):
            raise ValueError("the zero vector is not a projective point")
        self.coords = coords
        lead = next(c for c in coords if c != 0)
        self._canon = tuple(c / lead for c in coords)

    def canonical(self):
        return self._canon

    def integral(self):
        """Primitive integer representative (same projective point)."""
        den = 1
        for c in self.coords:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coords]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return tuple(v // g for v in ints)

    def __eq__(self, other):
        return isinstance(other, ProjectivePoint) and self._canon == other._canon

    def __hash__(self):
        return hash(self._canon)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return NVARS

    def linear_form(self, field=QQ):
        return GradedForm.linear(self.coords, field)

    def __repr__(self):
        return "ProjectivePoint(%s)" % ", ".join(str(c) for c in self.coords)


def as_point(p):
    return p if isinstance(p, ProjectivePoint) else ProjectivePoint(p)


def _coords_in(point, field):
    coords = point.coords if isinstance(point, ProjectivePoint) else tuple(point)
    if _is_modular(field):
        return [field.reduce(c) if not isinstance(c, (np.integer,)) else int(c) % field.p for c in coords]
    return [to_rational(c) if not isinstance(c, (int, Fraction)) else c for c in coords]


def monomial_values(point, d, field=QQ):
    """The vector (m(P))_m over monomials m of degree d (the evaluation functional)."""
    u = _coords_in(point, field)
    mons = monomials(d)
    if _is_modular(field):
        p = field.p
        pows = [[pow(int(x), e, p) for e in range(d + 1)] for x in u]
        return np.array([math.prod(pows[i][m[i]] for i in range(NVARS)) % p for m in mons], dtype=np.int64)
    pows = [[x**e for e in range(d + 1)] for x in u]
    out = []
    for m in mons:
        v = Fraction(1) if isinstance(pows[0][0], Fraction) else 1
        for i in range(NVARS):
            if m[i]:
                v = v * pows[i][m[i]]
        out.append(v)
    return out


def veronese(point, d, field=QQ):
    """Coefficient vector of L^d where L = sum u_i x_i (multinomials included)."""
    if d < 1:
        raise ValueError("Veronese degree must be >= 1")
    if isinstance(point, ProjectivePoint):
        pass
    elif all((field.reduce(c) if _is_modular(field) else to_rational(c)) == 0 for c in point):
        raise ValueError("the zero vector is not a projective point")
    vals = monomial_values(point, d, field)
    mult = [multinomial(m) for m in monomials(d)]
    if _is_modular(field):
        return vals * (np.array(mult, dtype=np.int64) % field.p) % field.p
    return [Fraction(v) * c for v, c in zip(vals, mult)]


def evaluate(f, point):
    vals = monomial_values(point, f.degree, f.field)
    if _is_modular(f.field):
        return int(kernels.matmul_mod(vals.reshape(1, -1), f.coeffs.reshape(-1, 1), f.field.p)[0, 0])
    return sum((a * b for a, b in zip(vals, f.coeffs) if a and b), Fraction(0))


def multiply(f, g):
    if f.field != g.field:
        raise ValueError("forms over different fields")
    table = mult_table(f.degree, g.degree)
    field = f.field
    n = dim_graded(f.degree + g.degree)
    if _is_modular(field):
        p = field.p
        out = np.zeros(n, dtype=np.int64)
        fi = np.flatnonzero(f.coeffs)
        gj = np.flatnonzero(g.coeffs)
        for i in fi:
            np.add.at(out, table[i, gj], (int(f.coeffs[i]) * g.coeffs[gj]) % p)
            out %= p
        return GradedForm(f.degree + g.degree, out, field)
    out = [Fraction(0)] * n
    gnz = [(j, c) for j, c in enumerate(g.coeffs) if c]
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        row = table[i]
        for j, c in gnz:
            out[row[j]] += a * c
    return GradedForm(f.degree + g.degree, out, field)


def multiplication_matrix(f, t):
    """Matrix (dim R_{t+a} x dim R_t) of g -> f*g for f of degree a (modular fields only)."""
    field = f.field
    if not _is_modular(field):
        raise TypeError("multiplication_matrix works over prime fields")
    a = f.degree
    table = mult_table(a, t)
    n_out, n_in = dim_graded(a + t), dim_graded(t)
    m = np.zeros((n_out, n_in), dtype=np.int64)
    cols = np.arange(n_in)
    for j in np.flatnonzero(f.coeffs):
        m[table[j], cols] = (m[table[j], cols] + f.coeffs[j]) % field.p
    return m


def apolar_pair(g, t):
    """<g, t> = sum_alpha g_alpha t_alpha alpha! for forms of equal degree."""
    if g.degree != t.degree:
        raise ValueError("apolar pairing needs equal degrees")
    if g.field != t.field:
        raise ValueError("forms over different fields")
    w = apolar_weights(g.degree)
    if _is_modular(g.field):
        p = g.field.p
        gw = g.coeffs * (np.array(w, dtype=np.int64) % p) % p
        return int(kernels.matmul_mod(gw.reshape(1, -1), t.coeffs.reshape(-1, 1), p)[0, 0])
    return sum((a * b * c for a, b, c in zip(g.coeffs, t.coeffs, w) if a and b), Fraction(0))


def catalecticant(t, a, b):
    """Matrix of R_a -> (R_b)^*, g -> (h -> <g h, t>); rows index R_a, columns R_b."""
    if a + b != t.degree or a < 1 or b < 1:
        raise ValueError("catalecticant needs a + b = deg t with a, b >= 1")
    table = mult_table(a, b)
    w = apolar_weights(t.degree)
    if _is_modular(t.field):
        p = t.field.p
        tw = t.coeffs * (np.array(w, dtype=np.int64) % p) % p
        return tw[table]
    tw = [c * wt for c, wt in zip(t.coeffs, w)]
    return [[tw[k] for k in row] for row in table]


def compose_linear(f, matrix):
    """The form y -> f(M y), where M is a 5x5 matrix (x = M y)."""
    field = f.field
    lin = [GradedForm.linear([matrix[i][j] for j in range(NVARS)], field) for i in range(NVARS)]
    out = GradedForm.zero(f.degree, field)
    for m, c in f.terms().items():
        term = None
        for i, e in enumerate(m):
            for _ in range(e):
                term = lin[i] if term is None else multiply(term, lin[i])
        if term is None:
            term = GradedForm(0, [1], field)
        out = out + term.scale(c)
    return out


def random_form(d, rng, field=QQ, bound=10):
    if _is_modular(field):
        return GradedForm(d, [rng.randrange(field.p) for _ in range(dim_graded(d))], field)
    return GradedForm(d, [rng.randint(-bound, bound) for _ in range(dim_graded(d))], field)


def forms_matrix(forms, field):
    """Stack coefficient vectors of forms of one degree as matrix rows."""
    if _is_modular(field):
        if not forms:
            return np.zeros((0, 0), dtype=np.int64)
        return np.vstack([f.to_field(field).coeffs for f in forms])
    return [list(f.coeffs) for f in forms]
