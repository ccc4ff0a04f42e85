"""Dense linear algebra over QQ (fraction-free) and over GF(p) (numpy kernels).

Matrices over QQ are sequences of rows of ints/Fractions; matrices over a
prime field are 2-d int64 arrays.  Every routine takes a ``field`` argument
which is either :data:`fields.QQ` or a :class:`fields.PrimeField`.
"""

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import kernels
from .fields import QQ, DEFAULT_PRIME, FieldError, PrimeField, random_prime, to_rational


def _is_modular(field):
    return isinstance(field, PrimeField)


def shape_of(m):
    if isinstance(m, np.ndarray):
        return m.shape if m.ndim == 2 else (m.shape[0], 0)
    m = list(m)
    return (len(m), len(m[0]) if m else 0)


# ---------------------------------------------------------------- rationals

def _integer_rows(m):
    """Scale each row by the lcm of its denominators; the row space is unchanged."""
    out = []
    for row in m:
        row = [to_rational(x) if not isinstance(x, int) else x for x in row]
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) if isinstance(x, Fraction) else x * den for x in row])
    return out


def _ff_gauss_jordan(a, ncols):
    """Fraction-free Gauss-Jordan elimination on integer rows (in place).

    Every intermediate entry is a minor of the input, so the divisions by
    the previous pivot are exact.  Returns (rank rows, pivots, common pivot).
    """
    nrows = len(a)
    row = 0
    prev = 1
    pivots = []
    for col in range(ncols):
        if row == nrows:
            break
        sel = next((i for i in range(row, nrows) if a[i][col] != 0), None)
        if sel is None:
            continue
        if sel != row:
            a[sel], a[row] = a[row], a[sel]
        pr = a[row]
        pv = pr[col]
        for i in range(nrows):
            if i == row:
                continue
            ri = a[i]
            f = ri[col]
            if f == 0:
                if pv != prev:
                    a[i] = [x * pv // prev for x in ri]
                continue
            a[i] = [(pv * x - f * y) // prev for x, y in zip(ri, pr)]
        prev = pv
        pivots.append(col)
        row += 1
    return a[:row], pivots, prev


def _rref_rational(m):
    rows, ncols = shape_of(m)
    if rows == 0 or ncols == 0:
        return [], []
    a = _integer_rows(m)
    basis, pivots, d = _ff_gauss_jordan(a, ncols)
    red = [tuple(Fraction(x, d) for x in r) for r in basis]
    return red, pivots


def rank_rational(m):
    """Exact rank over QQ by fraction-free forward elimination."""
    rows, ncols = shape_of(m)
    if rows == 0 or ncols == 0:
        return 0
    a = _integer_rows(m)
    row, prev = 0, 1
    for col in range(ncols):
        if row == rows:
            break
        sel = next((i for i in range(row, rows) if a[i][col] != 0), None)
        if sel is None:
            continue
        a[sel], a[row] = a[row], a[sel]
        pr = a[row]
        pv = pr[col]
        for i in range(row + 1, rows):
            f = a[i][col]
            a[i] = [(pv * x - f * y) // prev for x, y in zip(a[i], pr)]
        prev = pv
        row += 1
    return row


def det_rational(m):
    """Exact determinant (Bareiss)."""
    n, nc = shape_of(m)
    if n != nc:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    rows = [[to_rational(x) for x in r] for r in m]
    den = 1
    for r in rows:
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
    a = [[int(x * den) for x in r] for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sel = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sel is None:
                return Fraction(0)
            a[k], a[sel] = a[sel], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], den**n)


# ------------------------------------------------------------ generic entry

def to_field_matrix(m, field):
    """Convert a rational matrix to the representation used by ``field``."""
    if _is_modular(field):
        if isinstance(m, np.ndarray) and m.dtype == np.int64:
            return m % field.p
        rows = [[field.reduce(x) for x in r] for r in m]
        n = len(rows)
        return np.array(rows, dtype=np.int64).reshape(n, -1) if n else np.zeros((0, 0), dtype=np.int64)
    return [[to_rational(x) for x in r] for r in m]


def rref(m, field=QQ):
    """Reduced row echelon basis of the row space and its pivot columns."""
    if _is_modular(field):
        return kernels.rref_mod(to_field_matrix(m, field), field.p)
    return _rref_rational(m)


def rank(m, field=QQ):
    if _is_modular(field):
        return len(rref(m, field)[1])
    return rank_rational(m)


def _kernel_from_rref(red, pivots, ncols, field):
    pset = set(pivots)
    free = [j for j in range(ncols) if j not in pset]
    if _is_modular(field):
        p = field.p
        k = np.zeros((len(free), ncols), dtype=np.int64)
        if free:
            k[np.arange(len(free)), free] = 1
            if len(pivots):
                red = np.asarray(red)
                k[:, pivots] = (-red[:, free].T) % p
        return k
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        vecs.append(tuple(v))
    return vecs


def kernel(m, field=QQ, ncols=None):
    """Right null space {x : m x = 0} as a :class:`Subspace`."""
    r, c = shape_of(m)
    if ncols is None:
        ncols = c
    if r == 0:
        return Subspace.full(ncols, field)
    red, pivots = rref(m, field)
    vecs = _kernel_from_rref(red, pivots, ncols, field)
    return Subspace.span(vecs, ncols, field)


def left_kernel(m, field=QQ):
    """{y : y m = 0} as a Subspace of the row-index space."""
    return kernel(transpose(m, field), field, ncols=shape_of(m)[0])


def transpose(m, field=QQ):
    if _is_modular(field):
        return np.ascontiguousarray(to_field_matrix(m, field).T)
    m = list(m)
    return [list(col) for col in zip(*m)] if m else []


def solve(m, y, field=QQ):
    """One solution x of m x = y, or None when the system is inconsistent."""
    r, c = shape_of(m)
    if _is_modular(field):
        p = field.p
        a = np.hstack([to_field_matrix(m, field), (np.asarray([field.reduce(v) for v in y], dtype=np.int64) % p).reshape(-1, 1)])
        red, piv = kernels.rref_mod(a, p)
        if piv and piv[-1] == c:
            return None
        x = np.zeros(c, dtype=np.int64)
        for i, pc in enumerate(piv):
            x[pc] = red[i, c]
        return x
    aug = [list(row) + [to_rational(v)] for row, v in zip(m, y)]
    red, piv = _rref_rational(aug)
    if piv and piv[-1] == c:
        return None
    x = [Fraction(0)] * c
    for i, pc in enumerate(piv):
        x[pc] = red[i][c]
    return x


def mat_vec(m, v, field=QQ):
    if _is_modular(field):
        return kernels.matmul_mod(to_field_matrix(m, field), np.asarray(v, dtype=np.int64).reshape(-1, 1), field.p).ravel()
    return [sum((to_rational(a) * b for a, b in zip(row, v)), Fraction(0)) for row in m]


# ---------------------------------------------------------------- subspaces

class Subspace:
    """A subspace of field^n stored by its reduced row echelon basis.

    Bases are canonical, so two subspaces are equal iff their bases are.
    """

    def __init__(self, basis, pivots, ambient_dim, field):
        self.basis = basis
        self.pivots = list(pivots)
        self.ambient_dim = ambient_dim
        self.field = field

    @classmethod
    def span(cls, vectors, ambient_dim, field=QQ):
        if _is_modular(field):
            vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim) if len(vectors) else np.zeros((0, ambient_dim), dtype=np.int64)
            if vecs.shape[0] == 0:
                return cls(vecs, [], ambient_dim, field)
            red, piv = kernels.rref_mod(vecs, field.p)
            return cls(red, piv, ambient_dim, field)
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector of length %d in ambient dimension %d" % (len(v), ambient_dim))
        if not vecs:
            return cls([], [], ambient_dim, field)
        red, piv = _rref_rational(vecs)
        return cls(red, piv, ambient_dim, field)

    @classmethod
    def full(cls, n, field=QQ):
        if _is_modular(field):
            return cls(np.eye(n, dtype=np.int64), list(range(n)), n, field)
        eye = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        return cls(eye, list(range(n)), n, field)

    @classmethod
    def zero(cls, n, field=QQ):
        return cls.span([], n, field)

    @property
    def dim(self):
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def vectors(self):
        return list(self.basis)

    def matrix(self):
        if _is_modular(self.field):
            return self.basis
        return [list(v) for v in self.basis]

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ: %d vs %d" % (self.ambient_dim, other.ambient_dim))
        if self.field != other.field:
            raise ValueError("subspaces over different fields")

    def __add__(self, other):
        self._check(other)
        if _is_modular(self.field):
            return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient_dim, self.field)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim, self.field)

    def intersect(self, other):
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.field)
        # coefficient vectors (a, b) with a.U + b.V = 0 give a.U in the intersection
        if _is_modular(self.field):
            stacked = np.vstack([self.basis, other.basis])
            coeffs = left_kernel(stacked, self.field).basis
            if len(coeffs) == 0:
                return Subspace.zero(self.ambient_dim, self.field)
            vecs = kernels.matmul_mod(coeffs[:, : self.dim], self.basis, self.field.p)
            return Subspace.span(vecs, self.ambient_dim, self.field)
        stacked = list(self.basis) + list(other.basis)
        coeffs = left_kernel(stacked, self.field).basis
        vecs = []
        for c in coeffs:
            v = [Fraction(0)] * self.ambient_dim
            for a, u in zip(c[: self.dim], self.basis):
                if a:
                    v = [x + a * y for x, y in zip(v, u)]
            vecs.append(v)
        return Subspace.span(vecs, self.ambient_dim, self.field)

    def reduce(self, vec):
        """Remainder of ``vec`` after eliminating the pivot coordinates."""
        if _is_modular(self.field):
            p = self.field.p
            v = np.asarray([self.field.reduce(x) for x in vec] if not isinstance(vec, np.ndarray) else vec, dtype=np.int64) % p
            if self.dim:
                coef = v[self.pivots].copy()
                v = (v - kernels.matmul_mod(coef.reshape(1, -1), self.basis, p).ravel()) % p
            return v
        v = [to_rational(x) for x in vec]
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains(self, vec):
        if len(vec) != self.ambient_dim:
            raise ValueError("vector length %d, ambient dimension %d" % (len(vec), self.ambient_dim))
        r = self.reduce(vec)
        if _is_modular(self.field):
            return not np.any(r)
        return all(x == 0 for x in r)

    def contains_subspace(self, other):
        self._check(other)
        return (self + other).dim == self.dim

    def quotient_dim(self, sub):
        """dim(self / (self ∩ sub))."""
        return self.dim - self.intersect(sub).dim

    def coordinates(self, vec):
        """Coefficients of ``vec`` in the echelon basis (vec must lie in the space)."""
        if not self.contains(vec):
            raise ValueError("vector not in subspace")
        if _is_modular(self.field):
            return np.asarray(vec, dtype=np.int64)[self.pivots] % self.field.p
        return [to_rational(vec[pc]) for pc in self.pivots]

    def orthogonal(self, weights=None):
        """{w : sum_i weights_i u_i w_i = 0 for all u in self}."""
        if weights is None:
            return kernel(self.matrix(), self.field, ncols=self.ambient_dim) if self.dim else Subspace.full(self.ambient_dim, self.field)
        if _is_modular(self.field):
            w = np.asarray(weights, dtype=np.int64) % self.field.p
            m = self.basis * w[None, :] % self.field.p
        else:
            m = [[x * wt for x, wt in zip(row, weights)] for row in self.basis]
        if self.dim == 0:
            return Subspace.full(self.ambient_dim, self.field)
        return kernel(m, self.field, ncols=self.ambient_dim)

    def to_field(self, field):
        """Reduce a rational subspace modulo a prime (dimension may only drop)."""
        if _is_modular(self.field):
            raise ValueError("already modular")
        return Subspace.span(to_field_matrix(self.matrix(), field) if self.dim else [], self.ambient_dim, field)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.field != other.field or self.pivots != other.pivots:
            return False
        if _is_modular(self.field):
            return bool(np.array_equal(self.basis, other.basis))
        return list(self.basis) == list(other.basis)

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d, %r)" % (self.dim, self.ambient_dim, self.field)


def subspace_sum(u, v):
    return u + v


def subspace_intersect(u, v):
    return u.intersect(v)


def contains(u, vec):
    return u.contains(vec)


# ------------------------------------------------------- certified ranks

@dataclass
class RankCertificate:
    rank: int
    method: str
    primes: list = dc_field(default_factory=list)


def certified_rank(m, expected=None, prime=DEFAULT_PRIME, retries=3, seed=0):
    """Exact rank of a rational matrix, using modular ranks as a fast path.

    A modular rank never exceeds the rational one, so a modular rank equal to
    ``expected`` (default: the maximal possible rank) is already a proof.
    Otherwise up to ``retries`` random primes are tried before falling back
    to exact fraction-free elimination.
    """
    r, c = shape_of(m)
    full = min(r, c) if expected is None else expected
    if r == 0 or c == 0:
        return RankCertificate(0, "trivial")
    best = -1
    used = []
    rng = random.Random(seed)
    for attempt in range(retries + 1):
        p = prime if attempt == 0 else random_prime(rng)
        try:
            rk = rank(m, PrimeField(p))
        except FieldError:
            continue
        used.append(p)
        best = max(best, rk)
        if best >= full:
            return RankCertificate(best, "modular", used)
    return RankCertificate(rank_rational(m), "rational", used)


def certified_nonzero_det(m, prime=DEFAULT_PRIME, retries=3, seed=0):
    """(is_nonzero, method) for a square rational matrix."""
    n, _ = shape_of(m)
    cert = certified_rank(m, expected=n, prime=prime, retries=retries, seed=seed)
    return cert.rank == n, cert.method


@dataclass
class MinorScan:
    all_nonzero: bool
    checked: int
    total: int
    witness: tuple = None
    exact_rechecks: int = 0

    def __bool__(self):
        return self.all_nonzero


def all_maximal_minors_nonzero(m, prime=DEFAULT_PRIME):
    """Check every maximal minor; stop at the first vanishing one.

    For a tall matrix the minors select rows, for a wide one they select
    columns.  Minors vanishing modulo ``prime`` are re-examined with random
    primes and finally exactly, so a reported zero minor is a true zero.
    The witness is the tuple of selected row (or column) indices.
    """
    r, c = shape_of(m)
    rows = [[to_rational(x) for x in row] for row in m] if not isinstance(m, np.ndarray) else [[int(x) for x in row] for row in m]
    if r < c:
        rows = [list(col) for col in zip(*rows)]
        r, c = c, r
    k = c
    total = math.comb(r, k)
    gf = PrimeField(prime)
    try:
        mod = np.array([[gf.reduce(x) for x in row] for row in rows], dtype=np.int64).reshape(r, k)
    except FieldError:
        mod = None
    checked = 0
    rechecks = 0
    for sel in itertools.combinations(range(r), k):
        checked += 1
        if mod is not None and len(kernels.rref_mod(mod[list(sel)], prime)[1]) == k:
            continue
        rechecks += 1
        sub = [rows[i] for i in sel]
        ok, _ = certified_nonzero_det(sub, prime=prime, seed=checked)
        if not ok:
            return MinorScan(False, checked, total, tuple(sel), rechecks)
    return MinorScan(True, checked, total, None, rechecks)
