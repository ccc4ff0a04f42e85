"""Liaison engine: complete intersections, residual ideals and the final test.

Two independent routes decide whether a form T in the span of v4(A), A a
set of 12 points, has a second decomposition B linked to A by a complete
intersection Z = (Q1, Q2, Q3, F) of type (2,2,2,3):

* the mapping-cone route: from a minimal resolution of I_A and the Koszul
  complex of Z, comparison maps are lifted degreewise; the last one gives
  the cubic generators of I_B = I_Z : I_A as linear functions of the
  parameters of F.  Apolarity of T with every c*x_j gives a linear system
  (MatEqns) whose kernel parametrizes the admissible F.  Runs over GF(p).

* the residue route: for a reduced complete intersection Z of type
  (2,2,2,3) and P in Z, the signed maximal minors of the Jacobian of the
  generators at P equal kappa(P)*P.  The Euler-Jacobi vanishing theorem
  gives sum_{P in Z} g(P)/kappa(P) = 0 for every form g of degree
  9 - 5 = 4, so sum_{P in A} v4(P)/kappa(P) spans
  span v4(A) ∩ span v4(B).  Since kappa is linear in F, "T is such a form
  for some F" is a 12 x 9 linear system over QQ.  Runs exactly.
"""

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import kernels
from .fields import QQ, DEFAULT_PRIME, FieldError, PrimeField, random_prime
from .linalg import Subspace, kernel, rank, rank_rational, det_rational, shape_of, to_field_matrix
from .poly import (NVARS, GradedForm, apolar_weights, dim_graded, evaluate, monomial_values,
                   multiplication_matrix, veronese)
from .pointsets import (GradedIdealPiece, InverseSystem, PointSet, colon_piece, ideal_piece,
                        koszul_hvector, regularity_degree)


class NotProperError(ValueError):
    """The generators do not form a regular sequence (complete intersection)."""

    def __init__(self, degree, got, expected):
        super().__init__("not a complete intersection: h(%d) = %d, expected %d" % (degree, got, expected))
        self.degree = degree
        self.got = got
        self.expected = expected


class LiftingError(RuntimeError):
    """A comparison-map lift was inconsistent (input not general enough)."""


def _is_modular(field):
    return isinstance(field, PrimeField)


def _cumulative(hvec, d_max):
    out, s = [], 0
    for d in range(d_max + 1):
        s += hvec[d] if d < len(hvec) else 0
        out.append(s)
    return out


@dataclass
class CompleteIntersection:
    generators: list
    type: tuple
    hilbert: list
    prime: int

    @property
    def length(self):
        return sum(koszul_hvector(self.type))

    @property
    def socle_degree(self):
        return sum(self.type) - len(self.type)

    def reduced_generators(self, field):
        return [g.to_field(field) for g in self.generators]


def certify_ci(gens, prime=DEFAULT_PRIME, retries=3, seed=0, extra=1):
    """Certify that ``gens`` (4 forms) generate a complete intersection in P^4.

    The Hilbert function of R/(gens) is compared with the Koszul prediction
    through degree socle+1+extra.  A modular Hilbert function is never
    smaller than the rational one and the Koszul values are the smallest
    possible, so equality modulo one prime is a certificate over QQ.
    """
    gens = list(gens)
    degs = tuple(g.degree for g in gens)
    if len(gens) != NVARS - 1:
        raise ValueError("a complete intersection of points in P^4 needs 4 generators")
    hv = koszul_hvector(degs)
    socle = sum(degs) - len(degs)
    top = socle + 1 + extra
    expected = _cumulative(hv, top)
    rng = random.Random(seed)
    last = None
    for attempt in range(retries + 1):
        p = prime if attempt == 0 else random_prime(rng)
        try:
            inv = InverseSystem(gens, PrimeField(p))
        except FieldError:
            continue
        vals = inv.hilbert_values(top)
        bad = next((d for d in range(top + 1) if vals[d] != expected[d]), None)
        if bad is None:
            return CompleteIntersection(gens, degs, vals, p)
        last = NotProperError(bad, vals[bad], expected[bad])
    raise last


# ------------------------------------------------------------ Jacobians

def _det(m, field):
    if _is_modular(field):
        a = np.array(m, dtype=np.int64) % field.p
        red, piv = kernels.rref_mod(a, field.p)
        if len(piv) < len(m):
            return 0
        return _det_mod(a, field.p)
    return det_rational(m)


def _det_mod(a, p):
    a = [list(map(int, r)) for r in a]
    n = len(a)
    det = 1
    for c in range(n):
        k = next((r for r in range(c, n) if a[r][c] % p), None)
        if k is None:
            return 0
        if k != c:
            a[c], a[k] = a[k], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], p - 2, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


def residue_kappa(gens, point, field=QQ):
    """kappa(P) with (signed maximal minors of the Jacobian at P) = kappa(P) * P.

    ``gens`` are n forms vanishing at P (n = 4 here).  Raises if the minor
    vector is not proportional to P (P not a point of the scheme).
    """
    gens = [g.to_field(field) for g in gens]
    jac = [[evaluate(g.partial(i), point) for i in range(NVARS)] for g in gens]
    minors = []
    for k in range(NVARS):
        sub = [row[:k] + row[k + 1:] for row in jac]
        d = _det(sub, field)
        minors.append(d if k % 2 == 0 else -d)
    coords = point.coords if hasattr(point, "coords") else point
    if _is_modular(field):
        p = field.p
        u = [field.reduce(c) for c in coords]
        minors = [int(m) % p for m in minors]
        k = next(i for i in range(NVARS) if u[i])
        for i in range(NVARS):
            if (minors[i] * u[k] - minors[k] * u[i]) % p:
                raise ValueError("point is not on the complete intersection")
        return minors[k] * pow(u[k], p - 2, p) % p
    u = [Fraction(c) for c in coords]
    k = next(i for i in range(NVARS) if u[i])
    for i in range(NVARS):
        if minors[i] * u[k] != minors[k] * u[i]:
            raise ValueError("point is not on the complete intersection")
    return Fraction(minors[k]) / u[k]


def residue_weights(gens, points, field=QQ, multipliers=None):
    """The weights m(P)/kappa(P); ``multipliers`` defaults to 1 (the CI case)."""
    out = []
    for i, p in enumerate(points):
        k = residue_kappa(gens, p, field)
        if (k % field.p if _is_modular(field) else k) == 0:
            raise ZeroDivisionError("the complete intersection is singular at point %d" % i)
        m = 1 if multipliers is None else multipliers[i]
        if _is_modular(field):
            out.append(field.reduce(m) * pow(int(k), field.p - 2, field.p) % field.p)
        else:
            out.append(Fraction(m) / k)
    return out


def jacobian_minors(gens):
    """All maximal minors (forms) of the Jacobian matrix of ``gens``."""
    field = gens[0].field
    parts = [[g.partial(i) for i in range(NVARS)] for g in gens]
    k = len(gens)
    out = []
    for cols in itertools.combinations(range(NVARS), k):
        total = None
        for perm in itertools.permutations(range(k)):
            sign = _perm_sign(perm)
            term = None
            for r, c in zip(range(k), perm):
                f = parts[r][cols[c]]
                term = f if term is None else term * f
            term = term.scale(sign)
            total = term if total is None else total + term
        out.append(total)
    return out


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


@dataclass
class SmoothnessReport:
    smooth: bool
    vanishing_degree: int = None
    hilbert: list = dc_field(default_factory=list)
    prime: int = None


def singular_locus_empty(gens, max_degree=14, prime=DEFAULT_PRIME, retries=2, seed=0):
    """Certify that V(gens) has no singular points (where the Jacobian drops rank).

    The ideal (gens) + (maximal minors of the Jacobian) must contain all
    forms of some degree <= max_degree.  Emptiness modulo p implies
    emptiness over QQ.
    """
    rng = random.Random(seed)
    last = None
    for attempt in range(retries + 1):
        p = prime if attempt == 0 else random_prime(rng)
        field = PrimeField(p)
        try:
            red = [g.to_field(field) for g in gens]
        except FieldError:
            continue
        minors = [m for m in jacobian_minors(red) if not m.is_zero()]
        inv = InverseSystem(red + minors, field)
        hs = []
        for d in range(max_degree + 1):
            h = inv.hilbert(d)
            hs.append(h)
            if h == 0:
                return SmoothnessReport(True, d, hs, p)
        last = SmoothnessReport(False, None, hs, p)
    return last


# ---------------------------------------------------- graded free modules

def _block_sizes(degs, t):
    return [dim_graded(t - a) if t >= a else 0 for a in degs]


def module_dim(degs, t):
    return sum(_block_sizes(degs, t))


def split_element(vec, degs, t):
    out, o = [], 0
    for n in _block_sizes(degs, t):
        out.append(vec[o:o + n] if n else None)
        o += n
    return out


class GradedMap:
    """A map of graded free modules given by forms images[k][l] (source k, target l)."""

    def __init__(self, src, tgt, images, field):
        self.src = list(src)
        self.tgt = list(tgt)
        self.images = images
        self.field = field
        self._mats = {}

    def matrix(self, t):
        if t in self._mats:
            return self._mats[t]
        rows = module_dim(self.tgt, t)
        cols = []
        for k, a in enumerate(self.src):
            if t < a:
                continue
            blocks = []
            for l, b in enumerate(self.tgt):
                if t < b:
                    continue
                f = self.images[k][l]
                if f is None:
                    blocks.append(np.zeros((dim_graded(t - b), dim_graded(t - a)), dtype=np.int64))
                else:
                    blocks.append(multiplication_matrix(f, t - a))
            cols.append(np.vstack(blocks) if blocks else np.zeros((0, dim_graded(t - a)), dtype=np.int64))
        m = np.hstack(cols) if cols else np.zeros((rows, 0), dtype=np.int64)
        self._mats[t] = m
        return m


def _vector_to_images(vec, tgt, t, field):
    out = []
    for blk, b in zip(split_element(vec, tgt, t), tgt):
        if blk is None or not np.any(blk):
            out.append(None)
        else:
            out.append(GradedForm(t - b, blk, field))
    return out


class _MulCache:
    def __init__(self):
        self.store = {}

    def get(self, f, t):
        key = (id(f), t)
        m = self.store.get(key)
        if m is None:
            m = multiplication_matrix(f, t)
            self.store[key] = (m, f)
            return m
        return m[0]


def module_multiply(f, vec, degs, t, p, cache=None):
    """f (a form) times a module element of degree t: an element of degree t + deg f."""
    a = f.degree
    out = []
    for blk, b in zip(split_element(vec, degs, t), degs):
        if blk is None:
            if t + a >= b:
                out.append(np.zeros(dim_graded(t + a - b), dtype=np.int64))
            continue
        m = cache.get(f, t - b) if cache is not None else multiplication_matrix(f, t - b)
        out.append(kernels.matmul_mod(m, blk.reshape(-1, 1), p).ravel())
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


class Solver:
    """Fixed linear right inverse of a matrix M on its image.

    A seeded random projection S = R M (rank(S) = rank(M) with high
    probability) is brought to reduced echelon form E S, tracking E.  A
    solve returns x supported on the pivot columns with x[pivots] = E R y,
    so solutions are linear in y.  Every solution is checked against M, so
    an unlucky projection surfaces as an error, never as a wrong lift.
    Different seeds give different splittings.
    """

    def __init__(self, m, field, seed=0):
        p = field.p
        self.p = p
        self.m = np.ascontiguousarray(m % p)
        nr, nc = self.m.shape
        rng = np.random.default_rng(seed)
        k = min(nr, nc)
        proj = rng.integers(0, p, size=(k, nr), dtype=np.int64)
        s = kernels.matmul_mod(proj, self.m, p)
        aug = np.hstack([s, np.eye(k, dtype=np.int64)])
        red, piv = kernels.rref_mod(aug, p)
        self.cols = [c for c in piv if c < nc]
        r = len(self.cols)
        self.rank = r
        self.w = kernels.matmul_mod(red[:r, nc:], proj, p)

    def solve(self, y):
        """Solution of M x = y; y may be a vector or a matrix of right-hand sides."""
        p = self.p
        y = np.asarray(y, dtype=np.int64) % p
        col = y.ndim == 1
        ym = y.reshape(-1, 1) if col else y
        x = np.zeros((self.m.shape[1], ym.shape[1]), dtype=np.int64)
        x[self.cols] = kernels.matmul_mod(self.w, ym, p)
        if not np.array_equal(kernels.matmul_mod(self.m, x, p), ym):
            raise LiftingError("right-hand side not in the image")
        return x.ravel() if col else x


# ------------------------------------------------------------- resolution

@dataclass
class Resolution:
    """Minimal graded free resolution data of I_A over GF(p), as maps d0..d3."""

    field: object
    maps: list
    degrees: list
    exactness: list

    @property
    def betti(self):
        out = []
        for degs in self.degrees:
            table = {}
            for a in degs:
                table[a] = table.get(a, 0) + 1
            out.append(table)
        return out


def _minimal_generators(dmap, t_range, field):
    """Minimal generators of ker(dmap) in the given degrees: list of (degree, vector)."""
    p = field.p
    gens = []
    for t in t_range:
        m = dmap.matrix(t)
        if m.shape[1] == 0:
            continue
        ker = kernel(m, field, ncols=m.shape[1]) if m.shape[0] else Subspace.full(m.shape[1], field)
        if ker.dim == 0:
            continue
        # module generated so far, in degree t
        prev = []
        cache = _MulCache()
        for (a, v) in gens:
            for mono in _monomial_forms(t - a, field):
                prev.append(module_multiply(mono, v, dmap.src, a, p, cache))
        span = Subspace.span(np.vstack(prev) if prev else [], m.shape[1], field)
        for vec in ker.basis:
            bigger = Subspace.span(np.vstack([span.basis, vec]) if span.dim else vec.reshape(1, -1), m.shape[1], field)
            if bigger.dim > span.dim:
                gens.append((t, vec))
                span = bigger
        if span.dim != ker.dim:
            raise LiftingError("kernel generation bookkeeping failed in degree %d" % t)
    return gens


_MONO_CACHE = {}


def _monomial_forms(d, field):
    key = (d, field.p)
    if key not in _MONO_CACHE:
        out = []
        for i in range(dim_graded(d)):
            c = np.zeros(dim_graded(d), dtype=np.int64)
            c[i] = 1
            out.append(GradedForm(d, c, field))
        _MONO_CACHE[key] = out
    return _MONO_CACHE[key]


def resolve_points(gens0, reg, field, length=4):
    """Resolution of the ideal generated by gens0 (a generating set of I_A).

    ``reg`` is the regularity of I_A, so the k-th syzygy module is generated
    in degrees <= reg + k.  Exactness is verified one degree further.
    """
    p = field.p
    degs0 = [g.degree for g in gens0]
    d0 = GradedMap(degs0, [0], [[g] for g in gens0], field)
    maps = [d0]
    degrees = [degs0]
    exactness = []
    cur = d0
    for k in range(1, length):
        lo = min(cur.src) + 1
        hi = reg + k
        gens = _minimal_generators(cur, range(lo, hi + 1), field)
        if not gens:
            break
        src = [a for a, _ in gens]
        images = [_vector_to_images(v, cur.src, a, field) for a, v in gens]
        nxt = GradedMap(src, cur.src, images, field)
        t = hi + 1
        ker_dim = kernel(cur.matrix(t), field, ncols=cur.matrix(t).shape[1]).dim if cur.matrix(t).shape[0] else cur.matrix(t).shape[1]
        img = rank(nxt.matrix(t), field) if nxt.matrix(t).size else 0
        exactness.append((t, img, ker_dim))
        if img != ker_dim:
            raise LiftingError("resolution not exact in degree %d (%d vs %d)" % (t, img, ker_dim))
        maps.append(nxt)
        degrees.append(src)
        cur = nxt
    # the last map must be injective where it matters
    t = reg + length
    m = cur.matrix(t)
    if m.shape[1] and rank(m, field) != m.shape[1]:
        raise LiftingError("last map of the resolution is not injective in degree %d" % t)
    return Resolution(field, maps, degrees, exactness)


# ----------------------------------------------------------- the family

@dataclass
class FinalTestSystem:
    matrix: np.ndarray
    raw_rows: int
    provenance: list
    rank: int
    kernel: Subspace
    splitting: int


class ResidueFamily:
    """Cubics F in (I_A)_3 modulo (Q1,Q2,Q3) and the lifted residue generators.

    Built over GF(p) from rational data: ``quadrics`` and ``cubic_basis`` are
    rational forms; the parameter lambda in field^8 stands for
    F = sum lambda_k cubic_basis[k].
    """

    def __init__(self, points, quadrics, cubic_basis, field=None, splittings=(0, 1)):
        self.field = field or PrimeField(DEFAULT_PRIME)
        f = self.field
        self.points = points
        self.quadrics_q = list(quadrics)
        self.cubics_q = list(cubic_basis)
        self.quadrics = [q.to_field(f) for q in quadrics]
        self.cubics = [c.to_field(f) for c in cubic_basis]
        gens0 = self.quadrics + self.cubics
        self.regularity = regularity_degree(points)
        self.resolution = resolve_points(gens0, self.regularity, f)
        self.splittings = tuple(splittings)
        self._solvers = {}
        self.lifted = {s: self._lift_all(s) for s in self.splittings}

    @property
    def nparams(self):
        return len(self.cubics)

    def _solver(self, k, t, split):
        key = (k, t, split)
        if key not in self._solvers:
            m = self.resolution.maps[k].matrix(t)
            self._solvers[key] = Solver(m, self.field, seed=1000 * split + 10 * k + t)
        return self._solvers[key]

    def _lift_all(self, split):
        """For each basis cubic G_k: the components of the last comparison map."""
        f = self.field
        p = f.p
        res = self.resolution
        if len(res.maps) < 4:
            raise LiftingError("resolution too short for the comparison")
        deg0, deg1, deg2, deg3 = res.degrees[:4]
        cache = _MulCache()

        def unit(degs, t, idx):
            v = np.zeros(module_dim(degs, t), dtype=np.int64)
            off = sum(_block_sizes(degs, t)[:idx])
            v[off] = 1
            return v

        qs = self.quadrics
        gs = self.cubics
        nq = len(qs)
        tq, tg = qs[0].degree, 3

        def mul(f, v, degs, t):
            return module_multiply(f, v, degs, t, p, cache)

        def batch(cols):
            return np.stack(cols, axis=1) % p

        # first map: the generators themselves
        a1q = [unit(deg0, tq, i) for i in range(nq)]
        a1g = [unit(deg0, tg, nq + kk) for kk in range(len(gs))]
        # pairs: quadric-quadric pairs do not depend on the cubic
        a2q = {}
        for a, b in itertools.combinations(range(nq), 2):
            y = mul(qs[a], a1q[b], deg0, tq) - mul(qs[b], a1q[a], deg0, tq)
            a2q[(a, b)] = self._solver(1, 2 * tq, split).solve(y % p)
        t2 = tq + tg
        a2g = {}
        for a in range(nq):
            y = batch([mul(qs[a], a1g[kk], deg0, tg) - mul(g, a1q[a], deg0, tq) for kk, g in enumerate(gs)])
            a2g[a] = self._solver(1, t2, split).solve(y)
        # triples
        t3q = 3 * tq
        y = (mul(qs[0], a2q[(1, 2)], deg1, 2 * tq) - mul(qs[1], a2q[(0, 2)], deg1, 2 * tq)
             + mul(qs[2], a2q[(0, 1)], deg1, 2 * tq))
        a3q = self._solver(2, t3q, split).solve(y % p)
        t3 = 2 * tq + tg
        a3g = {}
        for a, b in itertools.combinations(range(nq), 2):
            y = batch([mul(qs[a], a2g[b][:, kk], deg1, t2) - mul(qs[b], a2g[a][:, kk], deg1, t2)
                       + mul(g, a2q[(a, b)], deg1, 2 * tq) for kk, g in enumerate(gs)])
            a3g[(a, b)] = self._solver(2, t3, split).solve(y)
        # the last map
        t4 = 3 * tq + tg
        y = batch([mul(qs[0], a3g[(1, 2)][:, kk], deg2, t3) - mul(qs[1], a3g[(0, 2)][:, kk], deg2, t3)
                   + mul(qs[2], a3g[(0, 1)][:, kk], deg2, t3) - mul(g, a3q, deg2, t3q)
                   for kk, g in enumerate(gs)])
        a4 = self._solver(3, t4, split).solve(y)
        return [split_element(a4[:, kk], deg3, t4) for kk in range(len(gs))]

    def lift_cubic(self, lam, splitting=None):
        """Residue generators (beyond F) of degree 9 - deg(F3 generator), linear in lambda."""
        f = self.field
        p = f.p
        lam = [f.reduce(x) for x in lam]
        if not any(lam):
            raise ValueError("lambda = 0 gives no cubic")
        split = self.splittings[0] if splitting is None else splitting
        total = sum(self.quadrics[0].degree for _ in self.quadrics) + 3
        deg3 = self.resolution.degrees[3]
        out = []
        for k, a in enumerate(deg3):
            acc = np.zeros(dim_graded(total - a), dtype=np.int64)
            for kk, l in enumerate(lam):
                if l:
                    blk = self.lifted[split][kk][k]
                    if blk is not None:
                        acc = (acc + l * blk) % p
            out.append(GradedForm(total - a, acc, f))
        return out

    def cubic(self, lam):
        f = self.field
        acc = GradedForm.zero(3, f)
        for l, g in zip(lam, self.cubics):
            acc = acc + g.scale(l)
        return acc

    def cubic_rational(self, lam):
        acc = GradedForm.zero(3, QQ)
        for l, g in zip(lam, self.cubics_q):
            acc = acc + g.scale(l)
        return acc

    def residue_piece(self, lam, d):
        """Oracle: (I_Z : I_A)_d computed directly for Z = (Q, F(lambda))."""
        gens = self.quadrics + [self.cubic(lam)]
        return colon_piece(gens, self.points, d, field=self.field, a_degree=self.regularity)

    def build_mateqns(self, t, splitting=None):
        """The final-test system: rows <T, g*x_j> for g = F(lambda) and the lifted cubics."""
        f = self.field
        p = f.p
        split = self.splittings[0] if splitting is None else splitting
        tf = t.to_field(f)
        w = np.array(apolar_weights(4), dtype=np.int64) % p
        tw = tf.coeffs * w % p
        deg3 = self.resolution.degrees[3]
        total = 2 * len(self.quadrics) + 3
        rows, prov = [], []
        xs = [GradedForm.variable(j, f) for j in range(NVARS)]
        for j in range(NVARS):
            rows.append([int(kernels.matmul_mod((g * xs[j]).coeffs.reshape(1, -1), tw.reshape(-1, 1), p)[0, 0]) for g in self.cubics])
            prov.append(("F", j))
        for k, a in enumerate(deg3):
            if total - a + 1 != 4:
                continue
            for j in range(NVARS):
                row = []
                for kk in range(self.nparams):
                    blk = self.lifted[split][kk][k]
                    if blk is None:
                        row.append(0)
                        continue
                    g = GradedForm(total - a, blk, f) * xs[j]
                    row.append(int(kernels.matmul_mod(g.coeffs.reshape(1, -1), tw.reshape(-1, 1), p)[0, 0]))
                rows.append(row)
                prov.append(("lift%d" % k, j))
        m = np.array(rows, dtype=np.int64) % p
        red, piv = kernels.rref_mod(m, p)
        ker = kernel(m, f, ncols=self.nparams)
        return FinalTestSystem(red, len(rows), prov, len(piv), ker, split)


def cubic_complement(points, quadrics, field=None):
    """Rational cubics in (I_A)_3 completing (quadrics)*R_1 to a basis.

    Candidates are the echelon basis vectors of (I_A)_3 over QQ; selection
    is done modulo p, and independence modulo p implies independence over QQ.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    i3 = ideal_piece(points, 3, QQ)
    cands = i3.forms()
    base = []
    for q in quadrics:
        for j in range(NVARS):
            base.append((q * GradedForm.variable(j)).to_field(field).coeffs)
    span = Subspace.span(np.vstack(base) if base else [], dim_graded(3), field)
    chosen = []
    for c in cands:
        bigger = Subspace.span(np.vstack([span.basis, c.to_field(field).coeffs]) if span.dim else c.to_field(field).coeffs.reshape(1, -1), dim_graded(3), field)
        if bigger.dim > span.dim:
            chosen.append(c)
            span = bigger
    return chosen, span.dim, i3.dim


# ------------------------------------------------------ residue route

@dataclass
class ResidueSystem:
    matrix: list
    rank: int
    kernel: list
    kappas: list


def euler_jacobi_system(weights, points, quadrics, cubic_basis):
    """Exact system mu_i * sum_k lambda_k kappa_k(P_i) = c over QQ.

    Unknowns (lambda_1..lambda_m, c).  A nonzero solution with c != 0 is a
    cubic F for which T = sum mu_i v4(P_i) lies in span v4(A) ∩ span v4(B),
    B the residue of A in (quadrics, F).
    """
    kap = [[residue_kappa(list(quadrics) + [g], p, QQ) for g in cubic_basis] for p in points]
    m = []
    for mu, row in zip(weights, kap):
        m.append([Fraction(mu) * k for k in row] + [Fraction(-1)])
    rk = rank_rational(m)
    ker = kernel(m, QQ).basis
    return ResidueSystem(m, rk, [list(v) for v in ker], kap)


def residue_form(gens, points, multipliers=None, field=QQ):
    """sum_P m(P)/kappa(P) v4(P) as a quartic."""
    w = residue_weights(gens, points, field, multipliers)
    acc = None
    for wt, p in zip(w, points):
        v = veronese(p, 4, field)
        term = GradedForm(4, v, field).scale(wt)
        acc = term if acc is None else acc + term
    return acc, w


def orthogonal_to_piece(t, piece):
    """Whether <g, T> = 0 for every g in the piece (over the piece's field)."""
    f = piece.field
    tf = t.to_field(f)
    p = f.p
    w = np.array(apolar_weights(piece.degree), dtype=np.int64) % p
    if piece.dim == 0:
        return True
    vals = kernels.matmul_mod(piece.space.basis, (tf.coeffs * w % p).reshape(-1, 1), p)
    return not np.any(vals)
