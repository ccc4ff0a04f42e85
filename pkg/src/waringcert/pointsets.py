"""Finite point sets in P^4 and degreewise computations with their ideals.

Ideals given by points are handled through evaluation matrices.  Ideals
given by generators are handled through their inverse systems: the
annihilator D_d of J_d inside the dual of R_d.  For d above the generator
degrees, D_d is the set of functionals whose contractions by x0..x4 all lie
in D_{d-1} and agree on R_{d-2}, which is a linear system of size ~5 h(d-1)
instead of a Macaulay matrix with thousands of rows.
"""

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kernels
from .fields import QQ, DEFAULT_PRIME, FieldError, PrimeField, random_prime
from .linalg import Subspace, certified_rank, kernel, rank, shape_of, to_field_matrix
from .poly import (NVARS, GradedForm, ProjectivePoint, as_point, dim_graded, first_variable_split,
                   monomial_values, monomials, mult_table, multiplication_matrix, shift_index, veronese)

PROBE_WINDOW = (6, 10)


def _is_modular(field):
    return isinstance(field, PrimeField)


class PointSet:
    """An ordered list of pairwise distinct points of P^4."""

    def __init__(self, points):
        pts = tuple(as_point(p) for p in points)
        seen = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise ValueError("points %d and %d coincide" % (seen[p], i))
            seen[p] = i
        self.points = pts

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def without(self, i):
        return PointSet(p for k, p in enumerate(self.points) if k != i)

    def subset(self, indices):
        return PointSet(self.points[i] for i in indices)

    def union(self, other):
        return PointSet(self.points + tuple(other))

    def coordinates(self):
        return [list(p.coords) for p in self.points]

    def __repr__(self):
        return "PointSet(%d points)" % len(self)


@dataclass
class HilbertData:
    values: list
    first_difference: list
    h_vector: list
    length: int = None

    @classmethod
    def from_values(cls, values, length=None):
        values = list(values)
        dh = [values[0]] + [values[j] - values[j - 1] for j in range(1, len(values))]
        hv = list(dh)
        while hv and hv[-1] == 0:
            hv.pop()
        return cls(values, dh, hv, length)

    @property
    def stabilized(self):
        return self.length is not None and self.values[-1] == self.length

    def h(self, j):
        return self.values[j] if j < len(self.values) else self.values[-1]

    def dh(self, j):
        if j < 0:
            return 0
        return self.first_difference[j] if j < len(self.first_difference) else 0


@dataclass
class GradedIdealPiece:
    degree: int
    space: Subspace

    @property
    def dim(self):
        return self.space.dim

    @property
    def field(self):
        return self.space.field

    def forms(self):
        return [GradedForm(self.degree, v, self.field) for v in self.space.vectors()]

    def to_field(self, field):
        if self.field == field:
            return self
        return GradedIdealPiece(self.degree, self.space.to_field(field))

    def contains(self, form):
        return self.space.contains(form.to_field(self.field).coeffs)


@dataclass
class BaseLocusReport:
    verdict: str
    length: int = None
    degree: int = None
    hilbert_polynomial: tuple = None
    window: dict = dc_field(default_factory=dict)

    def describe(self):
        if self.verdict == "finite":
            return "finite(%d)" % self.length
        if self.verdict == "curve":
            a, b = self.hilbert_polynomial
            return "curve(%d, %dt%+d)" % (self.degree, a, b)
        return "undetermined"


# ------------------------------------------------------------ point data

def evaluation_matrix(a, d, field=QQ):
    """Rows are the values of the degree-d monomials at each point.

    This is the matrix of the evaluation map R_d -> k^l.  Each row differs
    from veronese(P, d) by the fixed column scaling with multinomials, so
    both have rank h_A(d).
    """
    rows = [monomial_values(p, d, field) for p in a]
    if _is_modular(field):
        return np.vstack(rows) if rows else np.zeros((0, dim_graded(d)), dtype=np.int64)
    return rows


def veronese_matrix(a, d, field=QQ):
    rows = [veronese(p, d, field) for p in a]
    if _is_modular(field):
        return np.vstack(rows) if rows else np.zeros((0, dim_graded(d)), dtype=np.int64)
    return rows


def hilbert_function_value(a, d, field=None):
    """h_A(d); exact over QQ when field is None (modular ranks as fast path)."""
    if d == 0:
        return 1 if len(a) else 0
    if field is None:
        return certified_rank(evaluation_matrix(a, d), expected=min(len(a), dim_graded(d))).rank
    return rank(evaluation_matrix(a, d, field), field)


def hilbert_data(a, d_max, field=None):
    values = [hilbert_function_value(a, j, field) for j in range(d_max + 1)]
    return HilbertData.from_values(values, len(a))


def ideal_piece(a, d, field=QQ):
    """(I_A)_d: forms of degree d vanishing at every point of A."""
    if d == 0:
        return GradedIdealPiece(0, Subspace.full(1, field) if len(a) == 0 else Subspace.zero(1, field))
    m = evaluation_matrix(a, d, field)
    if len(a) == 0:
        return GradedIdealPiece(d, Subspace.full(dim_graded(d), field))
    return GradedIdealPiece(d, kernel(m, field, ncols=dim_graded(d)))


def regularity_degree(a, field=None):
    """Smallest e >= 1 with h_A(e-1) = len(A); I_A is generated in degrees <= e."""
    e = 1
    while hilbert_function_value(a, e - 1, field) < len(a):
        e += 1
    return e


# ------------------------------------------------------- generated ideals

def _gens_in(gens, field):
    return [g.to_field(field) for g in gens]


def generated_matrix(gens, d, field):
    """Rows: m*g for generators g of degree e <= d and monomials m of degree d-e."""
    n = dim_graded(d)
    if _is_modular(field):
        blocks = []
        for g in gens:
            if g.degree > d:
                continue
            blocks.append(multiplication_matrix(g.to_field(field), d - g.degree).T)
        return np.vstack(blocks) if blocks else np.zeros((0, n), dtype=np.int64)
    rows = []
    for g in gens:
        if g.degree > d:
            continue
        table = mult_table(g.degree, d - g.degree)
        nz = [(i, c) for i, c in enumerate(g.coeffs) if c]
        for j in range(dim_graded(d - g.degree)):
            row = [0] * n
            for i, c in nz:
                row[table[i, j]] = c
            rows.append(row)
    return rows


def generated_piece(gens, d, field=QQ):
    """Degree-d piece of the ideal generated by ``gens``."""
    if _is_modular(field) and d > 5:
        return InverseSystem(gens, field).piece(d)
    m = generated_matrix(gens, d, field)
    return GradedIdealPiece(d, Subspace.span(m if shape_of(m)[0] else [], dim_graded(d), field))


class InverseSystem:
    """Inverse system of a homogeneous ideal J = (gens) over a prime field.

    ``dual(d)`` is the reduced echelon basis of J_d^perp (functionals on R_d
    in monomial coordinates); ``hilbert(d)`` = dim R_d / J_d.
    """

    def __init__(self, gens, field=None):
        field = field or PrimeField(DEFAULT_PRIME)
        if not _is_modular(field):
            raise TypeError("inverse systems are computed over prime fields")
        self.field = field
        self.gens = _gens_in(gens, field)
        self.top = max((g.degree for g in self.gens), default=0)
        self._dual = {}

    def _direct(self, d):
        m = generated_matrix(self.gens, d, self.field)
        n = dim_graded(d)
        if m.shape[0] == 0:
            return np.eye(n, dtype=np.int64)
        return kernel(m, self.field, ncols=n).basis

    def dual(self, d):
        if d in self._dual:
            return self._dual[d]
        if d <= self.top or d < 2:
            out = self._direct(d)
        else:
            out = self._next(self.dual(d - 1), self.dual(d - 2), d)
        self._dual[d] = out
        return out

    def _next(self, b1, b2, d):
        p = self.field.p
        n = dim_graded(d)
        h1, h2 = b1.shape[0], b2.shape[0]
        if h1 == 0:
            return np.zeros((0, n), dtype=np.int64)
        if h2 == 0:
            # every contraction must vanish on R_{d-2}: only possible if D_{d-1} is 0 there too
            pivots2 = np.zeros(0, dtype=np.int64)
        else:
            pivots2 = np.array(kernels.rref_mod(b2, p)[1], dtype=np.int64)
        c = [b1[:, shift_index(j, d - 1)[pivots2]].T % p for j in range(NVARS)]
        blocks = []
        for i in range(NVARS):
            for j in range(i + 1, NVARS):
                blk = np.zeros((h2, NVARS * h1), dtype=np.int64)
                blk[:, i * h1:(i + 1) * h1] = c[j]
                blk[:, j * h1:(j + 1) * h1] = (-c[i]) % p
                blocks.append(blk)
        m = np.vstack(blocks) if h2 else np.zeros((0, NVARS * h1), dtype=np.int64)
        if m.shape[0]:
            sol = kernel(m, self.field, ncols=NVARS * h1).basis
        else:
            sol = np.eye(NVARS * h1, dtype=np.int64)
        if sol.shape[0] == 0:
            return np.zeros((0, n), dtype=np.int64)
        var, rest = first_variable_split(d)
        phi = np.zeros((sol.shape[0], n), dtype=np.int64)
        for i in range(NVARS):
            psi = kernels.matmul_mod(sol[:, i * h1:(i + 1) * h1], b1, p)
            sel = np.flatnonzero(var == i)
            phi[:, sel] = psi[:, rest[sel]]
        red, _ = kernels.rref_mod(phi, p)
        return red

    def hilbert(self, d):
        return self.dual(d).shape[0]

    def hilbert_values(self, d_max):
        return [self.hilbert(d) for d in range(d_max + 1)]

    def piece(self, d):
        dual = self.dual(d)
        n = dim_graded(d)
        if dual.shape[0] == 0:
            return GradedIdealPiece(d, Subspace.full(n, self.field))
        return GradedIdealPiece(d, kernel(dual, self.field, ncols=n))

    def contains(self, form):
        dual = self.dual(form.degree)
        f = form.to_field(self.field).coeffs
        return not np.any(kernels.matmul_mod(dual, f.reshape(-1, 1), self.field.p))

    def residual_matrix(self, d, forms, e):
        """Stacked matrices g -> D_{d+e}(g*f) for the given forms f of degree e."""
        dual = self.dual(d + e)
        p = self.field.p
        table = mult_table(e, d)
        out = []
        for f in forms:
            f = f.to_field(self.field)
            acc = np.zeros((dual.shape[0], dim_graded(d)), dtype=np.int64)
            for a in np.flatnonzero(f.coeffs):
                acc = (acc + int(f.coeffs[a]) * dual[:, table[a]]) % p
            out.append(acc)
        return np.vstack(out) if out else np.zeros((0, dim_graded(d)), dtype=np.int64)


def min_generator_count(a, d, field=QQ):
    """Number of minimal generators of I_A in degree d."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    top = ideal_piece(a, d, field)
    if d == 1:
        return top.dim
    lower = ideal_piece(a, d - 1, field)
    if lower.dim == 0:
        return top.dim
    below = generated_piece(lower.forms(), d, field)
    return top.dim - below.dim


# --------------------------------------------------------- CB properties

def cayley_bacharach(z, i, field=None):
    """True iff removing any single point of Z leaves (I_Z)_i unchanged."""
    if len(z) < 2:
        raise ValueError("Cayley-Bacharach needs at least two points")
    if i < 0:
        return True
    if i == 0:
        return True
    full = hilbert_function_value(z, i, field)
    for k in range(len(z)):
        if hilbert_function_value(z.without(k), i, field) != full:
            return False
    return True


def _dh_sequence(z):
    if isinstance(z, HilbertData):
        return z
    if isinstance(z, PointSet):
        top = len(z) + 1
        return hilbert_data(z, top)
    vals = list(z)
    return HilbertData(values=None, first_difference=vals, h_vector=vals)


def cb_inequality(z, i, j):
    """Dh(0)+...+Dh(j) <= Dh(i+1-j)+...+Dh(i+1), the bound implied by CB(i).

    ``z`` may be a PointSet, a HilbertData, or a plain Dh sequence.
    """
    if not (0 <= j <= i + 1):
        raise ValueError("need 0 <= j <= i+1")
    hd = _dh_sequence(z)

    def dh(k):
        seq = hd.first_difference
        return seq[k] if 0 <= k < len(seq) else 0

    left = sum(dh(k) for k in range(j + 1))
    right = sum(dh(k) for k in range(i + 1 - j, i + 2))
    return left <= right


# ------------------------------------------------------------ base locus

def base_locus(quadrics, window=PROBE_WINDOW, field=None):
    """Hilbert-function analysis of the base locus of a linear system of forms.

    ``quadrics`` is a GradedIdealPiece (or list of forms).  h(d) is computed
    for every d in the probe window; a constant value gives finite(length),
    an exact linear fit a*t+b gives curve(a, a*t+b), anything else is
    undetermined.  Computations run over a prime field: modular Hilbert
    functions bound the rational ones from above, so a finite verdict
    transfers to QQ.
    """
    forms = quadrics.forms() if isinstance(quadrics, GradedIdealPiece) else list(quadrics)
    if not forms:
        raise ValueError("empty linear system")
    field = field or PrimeField(DEFAULT_PRIME)
    inv = InverseSystem(forms, field)
    lo, hi = window
    vals = {d: inv.hilbert(d) for d in range(lo, hi + 1)}
    seq = [vals[d] for d in range(lo, hi + 1)]
    diffs = {seq[k + 1] - seq[k] for k in range(len(seq) - 1)}
    if diffs == {0}:
        return BaseLocusReport("finite", length=seq[0], window=vals)
    if len(diffs) == 1:
        a = diffs.pop()
        if a > 0:
            b = seq[0] - a * lo
            return BaseLocusReport("curve", degree=a, hilbert_polynomial=(a, b), window=vals)
    return BaseLocusReport("undetermined", window=vals)


# ---------------------------------------------------------------- colons

def _points_mod(a, field):
    m = evaluation_matrix(a, 1, field)
    if any(not np.any(row) for row in m):
        raise FieldError("a point reduces to zero modulo %d" % field.p)
    return m


def colon_piece(z_gens, a, d, field=None, a_degree=None, inverse_system=None):
    """Degree-d piece of (z_gens) : I_A over a prime field.

    ``a`` is a PointSet or a GradedIdealPiece spanning (I_A)_e for a degree e
    at which I_A is generated.  Validity needs (z_gens) saturated, which holds
    for the complete intersections used here.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    inv = inverse_system or InverseSystem(z_gens, field)
    if isinstance(a, GradedIdealPiece):
        piece = a.to_field(field)
    else:
        e = a_degree or regularity_degree(a)
        _points_mod(a, field)
        piece = ideal_piece(a, e, field)
    forms = piece.forms()
    if not forms:
        return GradedIdealPiece(d, Subspace.full(dim_graded(d), field))
    m = inv.residual_matrix(d, forms, piece.degree)
    if m.shape[0] == 0 or not np.any(m):
        return GradedIdealPiece(d, Subspace.full(dim_graded(d), field))
    return GradedIdealPiece(d, kernel(m, field, ncols=dim_graded(d)))


def hilbert_of_pieces(pieces):
    """Hilbert values dim R_d - dim J_d from a mapping degree -> piece."""
    return {d: dim_graded(d) - pc.dim for d, pc in pieces.items()}


# ------------------------------------------------------------- h-vectors

def koszul_hvector(degrees):
    """Coefficients of prod_i (1 + t + ... + t^(d_i - 1))."""
    degrees = list(degrees)
    if not degrees:
        raise ValueError("empty degree list")
    poly = [1]
    for d in degrees:
        if d < 1:
            raise ValueError("degrees must be positive")
        out = [0] * (len(poly) + d - 1)
        for i, c in enumerate(poly):
            for k in range(d):
                out[i + k] += c
        poly = out
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def linkage_hvector(z_hvec, a_dh, socle):
    """Dh_B(i) = Dh_Z(i) - Dh_A(socle - i) for a set B linked to A by Z."""
    def at(seq, k):
        return seq[k] if 0 <= k < len(seq) else 0

    out = []
    for i in range(socle + 1):
        v = at(z_hvec, i) - at(a_dh, socle - i)
        if v < 0:
            raise ValueError("inconsistent linkage data: Dh_B(%d) = %d" % (i, v))
        out.append(v)
    for k in range(socle + 1, len(z_hvec)):
        if z_hvec[k]:
            raise ValueError("h-vector longer than the socle degree")
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def ci_socle_degree(degrees):
    return sum(degrees) - len(degrees)


# ---------------------------------------------------- restriction checks

def restriction_surjects(a, d, linear_form, field=None):
    """Whether (I_A)_d -> (R/Lambda)_d is onto (rank of the quotient map)."""
    field = field or PrimeField(DEFAULT_PRIME)
    ia = ideal_piece(a, d, field)
    lam = linear_form.to_field(field)
    lam_part = GradedIdealPiece(d, Subspace.span(multiplication_matrix(lam, d - 1).T, dim_graded(d), field))
    total = (ia.space + lam_part.space).dim
    return total == dim_graded(d)


def random_linear_form(rng, field=QQ, bound=20):
    return GradedForm.linear([rng.randint(-bound, bound) for _ in range(NVARS)], field)
