"""Numeric recovery of a second decomposition as explicit complex points.

The quotient R_d / I_d of a reduced zero-dimensional scheme of length r
is identified with functions on its points once h(d) = h(d+1) = r.
Multiplication by x_i / h (h a random linear form) is then diagonal in the
basis of point evaluations; its eigenvalues are P_i / h(P).  The five
operators are diagonalized simultaneously through the eigenvectors of a
random combination.  Nothing here feeds a certification decision.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .poly import NVARS, dim_graded, monomials, multinomial, shift_index

GAP = 1e-6
RESIDUAL = 1e-8
RETRIES = 5


class NumericFailure(RuntimeError):
    """Clustered spectrum, rank drop or residual above tolerance (code NUMERIC_FAILURE)."""

    code = "NUMERIC_FAILURE"


# ------------------------------------------------------------ numeric forms

@dataclass
class FloatForm:
    degree: int
    coeffs: np.ndarray

    @classmethod
    def of(cls, f):
        c = scaled_floats(f.coeffs)
        n = np.max(np.abs(c))
        if n == 0:
            raise ValueError("zero form")
        return cls(f.degree, c / n)

    @property
    def norm(self):
        return float(np.linalg.norm(self.coeffs))


def scaled_floats(values):
    """Rationals as floats after a common power-of-two scaling (safe for huge entries)."""
    vals = [Fraction(v) for v in values]
    sizes = [v.numerator.bit_length() - v.denominator.bit_length() for v in vals if v]
    if not sizes:
        return np.zeros(len(vals))
    shift = max(sizes)
    scale = Fraction(2) ** shift
    return np.array([float(v / scale) for v in vals], dtype=np.float64)


def _as_float_forms(gens):
    return [g if isinstance(g, FloatForm) else FloatForm.of(g) for g in gens]


_MON_CACHE = {}


def _exponents(d):
    if d not in _MON_CACHE:
        _MON_CACHE[d] = np.array(monomials(d), dtype=np.int64).reshape(-1, NVARS)
    return _MON_CACHE[d]


def monomial_vector(points, d):
    """Rows: values of the degree-d monomials at each (complex) point."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.complex128))
    e = _exponents(d)
    return np.prod(pts[:, None, :] ** e[None, :, :], axis=2)


def evaluate_forms(forms, points):
    """Matrix (len(points) x len(forms)) of form values."""
    forms = _as_float_forms(forms)
    out = np.empty((len(points), len(forms)), dtype=np.complex128)
    for k, f in enumerate(forms):
        out[:, k] = monomial_vector(points, f.degree) @ f.coeffs
    return out


def normalize_points(points):
    """Each point divided by its largest-modulus coordinate (conjugation compatible)."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.complex128))
    k = np.argmax(np.abs(pts), axis=1)
    return pts / pts[np.arange(len(pts)), k][:, None]


def residuals(forms, points):
    """max_g |g(P)| / (||g|| ||P||^deg) for each point."""
    forms = _as_float_forms(forms)
    pts = normalize_points(points)
    vals = np.abs(evaluate_forms(forms, pts))
    pn = np.linalg.norm(pts, axis=1)
    scale = np.array([[f.norm * pn_i ** f.degree for f in forms] for pn_i in pn])
    return np.max(vals / scale, axis=1) if forms else np.zeros(len(pts))


# -------------------------------------------------------- numeric pieces

def _mult_rows(f, d):
    """Matrix (dim R_{d} x dim R_{d - deg f}) of g -> f*g, as float."""
    from .poly import mult_table
    t = d - f.degree
    table = mult_table(f.degree, t)
    m = np.zeros((dim_graded(d), dim_graded(t)), dtype=np.result_type(f.coeffs, np.float64))
    cols = np.arange(dim_graded(t))
    for j in np.flatnonzero(f.coeffs):
        m[table[j], cols] += f.coeffs[j]
    return m


def _row_space(m, rtol=1e-10):
    """Orthonormal row-space basis and its orthogonal complement (as columns)."""
    if m.shape[0] == 0:
        return np.zeros((0, m.shape[1])), np.eye(m.shape[1])
    u, s, vt = np.linalg.svd(m, full_matrices=True)
    rk = int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0
    return vt[:rk], vt[rk:].T


def ideal_span(gens, d):
    """Rows spanning (gens)_d: every generator times every monomial of complementary degree."""
    gens = _as_float_forms(gens)
    blocks = [_mult_rows(g, d).T for g in gens if g.degree <= d]
    if not blocks:
        return np.zeros((0, dim_graded(d)))
    return np.vstack(blocks)


def piece(gens, d, rtol=1e-10):
    """(basis rows of I_d, complement columns)."""
    return _row_space(ideal_span(gens, d), rtol)


def points_piece(points, d, rtol=1e-10):
    """Rows spanning the forms of degree d vanishing at the points (numerically)."""
    v = monomial_vector(normalize_points(points), d)
    _, null = _row_space(v, rtol)
    return null.T


def colon_rows(z_gens, a_rows, e, d, rtol=1e-10):
    """Rows spanning (I_Z : I_A)_d, given rows spanning (I_A)_e (I_A generated in degree <= e)."""
    _, comp = piece(z_gens, d + e, rtol)
    proj = comp.T
    blocks = []
    for row in a_rows:
        blocks.append(proj @ _mult_rows(FloatForm(e, np.asarray(row)), d + e))
    _, null = _row_space(np.vstack(blocks), rtol)
    return null.T


# ------------------------------------------------------------- extraction

@dataclass
class Extraction:
    points: np.ndarray
    residual: float
    gap: float
    degree: int
    attempts: int


def _quotient_degree(gens, r, max_degree):
    last = None
    for d in range(1, max_degree + 1):
        basis, comp = piece(gens, d)
        if comp.shape[1] == r:
            if last is not None and last[0] == d - 1:
                return d - 1, last[1], comp
            last = (d, comp)
        else:
            last = None
    raise NumericFailure("Hilbert function does not stabilize at %d by degree %d" % (r, max_degree))


def _mult_operator(coeffs, d, n_d, n_d1):
    """Quotient map R_d/I_d -> R_{d+1}/I_{d+1} of multiplication by a linear form."""
    m = np.zeros((dim_graded(d + 1), dim_graded(d)))
    for i, c in enumerate(coeffs):
        if c:
            m[shift_index(i, d + 1), np.arange(dim_graded(d))] += c
    return n_d1.T @ m @ n_d


def _newton(forms, pts, steps=3):
    """Gauss-Newton polish of each point on the system of generators (affine chart)."""
    grads = [[_partial(f, i) for i in range(NVARS)] for f in forms]
    out = []
    for p in pts:
        k = int(np.argmax(np.abs(p)))
        x = p / p[k]
        for _ in range(steps):
            f = np.array([monomial_vector(x, g.degree)[0] @ g.coeffs for g in forms])
            jac = np.array([[monomial_vector(x, dg.degree)[0] @ dg.coeffs if dg is not None else 0.0
                             for dg in row] for row in grads])
            jac = np.delete(jac, k, axis=1)
            step, *_ = np.linalg.lstsq(jac, -f, rcond=None)
            x = x + np.insert(step, k, 0.0)
        out.append(x)
    return np.array(out)


def _partial(f, i):
    if f.degree == 0:
        return None
    src = _exponents(f.degree)
    idx = {tuple(m): j for j, m in enumerate(_exponents(f.degree - 1))}
    c = np.zeros(dim_graded(f.degree - 1))
    for j, m in enumerate(src):
        if m[i] > 0 and f.coeffs[j]:
            mm = m.copy()
            mm[i] -= 1
            c[idx[tuple(mm)]] += m[i] * f.coeffs[j]
    return FloatForm(f.degree - 1, c)


def extract_points(gens, r, seed=0, gap=GAP, residual=RESIDUAL, retries=RETRIES, max_degree=10):
    """The r points of the reduced scheme defined by ``gens``.

    Raises NumericFailure on clustered spectra (after ``retries`` draws),
    singular multiplier, or a generator residual above ``residual``.
    """
    forms = _as_float_forms(gens)
    d, n_d, n_d1 = _quotient_degree(forms, r, max_degree)
    rng = np.random.default_rng(seed)
    xs = [_mult_operator(np.eye(NVARS)[i], d, n_d, n_d1) for i in range(NVARS)]
    last = None
    for attempt in range(1, retries + 1):
        h = rng.standard_normal(NVARS)
        hm = _mult_operator(h, d, n_d, n_d1)
        if np.linalg.cond(hm) > 1e12:
            last = "multiplier form is a zero divisor"
            continue
        ops = [np.linalg.solve(hm, x) for x in xs]
        c = rng.standard_normal(NVARS)
        comb = sum(ci * op for ci, op in zip(c, ops))
        vals, vecs = np.linalg.eig(comb)
        diffs = np.abs(vals[:, None] - vals[None, :])
        np.fill_diagonal(diffs, np.inf)
        scale = max(1.0, float(np.max(np.abs(vals))))
        g = float(np.min(diffs)) / scale if r > 1 else np.inf
        if g < gap:
            last = "clustered eigenvalues (gap %.2e)" % g
            continue
        inv = np.linalg.inv(vecs)
        pts = np.array([[(inv[j] @ op @ vecs[:, j]) for op in ops] for j in range(r)])
        pts = normalize_points(_newton(forms, pts))
        res = float(np.max(residuals(forms, pts)))
        if res >= residual:
            last = "generator residual %.2e" % res
            continue
        return Extraction(pts, res, g, d, attempt)
    raise NumericFailure(last or "extraction failed")


# ----------------------------------------------------------- validation

def conjugate_pairing(points, tol=1e-6):
    """True when the set is closed under complex conjugation (to ``tol``)."""
    pts = normalize_points(points)
    used = set()
    for i, p in enumerate(pts):
        if i in used:
            continue
        d = np.linalg.norm(pts - np.conj(p)[None, :], axis=1)
        cands = [j for j in np.argsort(d) if d[j] < tol and (j not in used or j == i)]
        if not cands:
            return False
        j = int(cands[0])
        used.update((i, j))
    return True


def match_points(points, reference, tol=1e-6):
    """Indices of ``points`` that coincide projectively with some reference point."""
    pts = normalize_points(points)
    ref = normalize_points(reference)
    return [i for i, p in enumerate(pts) if np.min(np.linalg.norm(ref - p[None, :], axis=1)) < tol]


def veronese_rows(points, d=4):
    mult = np.array([multinomial(m) for m in monomials(d)], dtype=np.float64)
    return monomial_vector(normalize_points(points), d) * mult[None, :]


def numeric_weights(form, points):
    """Least-squares weights with T = sum w_i v4(P_i); returns (weights, relative residual)."""
    t = scaled_floats(form.coeffs)
    t = t / np.max(np.abs(t))
    v = veronese_rows(points)
    w, *_ = np.linalg.lstsq(v.T, t.astype(np.complex128), rcond=None)
    res = float(np.linalg.norm(v.T @ w - t) / np.linalg.norm(t))
    return w, res


@dataclass
class SecondDecomposition:
    points: np.ndarray
    weights: np.ndarray
    generator_residual: float
    ideal_residual: float
    weight_residual: float
    conjugate_pairs: bool

    def ok(self, residual=RESIDUAL):
        w = np.abs(self.weights)
        return bool(self.generator_residual < residual and self.ideal_residual < residual
                    and self.weight_residual < residual and np.all(w > residual * np.max(w))
                    and self.conjugate_pairs)

    def to_dict(self):
        return {"points": [[_cstr(z) for z in p] for p in self.points],
                "weights": [_cstr(z) for z in self.weights],
                "generator_residual": self.generator_residual,
                "ideal_residual": self.ideal_residual,
                "weight_residual": self.weight_residual,
                "conjugate_pairs": self.conjugate_pairs}


def _cstr(z, tol=1e-12):
    z = complex(z)
    re = z.real if abs(z.real) > tol * abs(z) else 0.0
    im = z.imag if abs(z.imag) > tol * abs(z) else 0.0
    return "%.12g%+.12gi" % (re + 0.0, im + 0.0)


def residual_scheme(link_gens, remove, r, form, seed=0, gap=GAP, residual=RESIDUAL, drop=None, colon_degree=None):
    """Points of the complete intersection ``link_gens`` minus ``remove`` (and minus ``drop``).

    ``drop`` is an optional predicate on normalized points (e.g. a hyperplane
    through extra linked points).  With ``colon_degree`` e the residual points
    are also checked against a numeric basis of (I_B)_3, obtained as the
    colon of the link by the degree-e forms through all removed points.
    """
    forms = _as_float_forms(link_gens)
    total = None
    for d in range(1, 12):
        _, comp = piece(forms, d)
        if total is not None and comp.shape[1] == total:
            break
        total = comp.shape[1]
    ext = extract_points(forms, total, seed=seed, gap=gap, residual=residual)
    pts = ext.points
    gone = set(match_points(pts, remove))
    if len(gone) != len(remove):
        raise NumericFailure("only %d of the %d linked points were found" % (len(gone), len(remove)))
    if drop is not None:
        gone.update(i for i, p in enumerate(pts) if drop(p))
    keep = [i for i in range(len(pts)) if i not in gone]
    if len(keep) != r:
        raise NumericFailure("expected %d residual points, found %d" % (r, len(keep)))
    b = pts[keep]
    ideal_res = 0.0
    if colon_degree is not None:
        a_rows = points_piece(pts[sorted(gone)], colon_degree)
        rows = colon_rows(forms, a_rows, colon_degree, 3)
        if rows.shape[0] != dim_graded(3) - min(r, dim_graded(3)):
            raise NumericFailure("numeric colon has dimension %d" % rows.shape[0])
        ideal_res = _rows_residual(rows, b)
    w, wres = numeric_weights(form, b)
    return SecondDecomposition(b, w, float(np.max(residuals(forms, b))), ideal_res, wres, conjugate_pairing(b))


def _rows_residual(rows, points):
    pts = normalize_points(points)
    vals = np.abs(monomial_vector(pts, 3) @ rows.T)
    scale = np.linalg.norm(rows, axis=1)[None, :] * np.linalg.norm(pts, axis=1)[:, None] ** 3
    return float(np.max(vals / scale))


def _parse_forms(rows, degree):
    from .fields import to_rational
    from .poly import GradedForm
    return [GradedForm(degree, [to_rational(c) for c in row]) for row in rows]


def _float_points(points):
    return np.array([scaled_floats(p.coords) for p in points])


def second_decomposition_12(decomp, witness, seed=0, gap=GAP, residual=RESIDUAL):
    """B = CI(Q1, Q2, Q3, F*) minus A from a NOT_IDENTIFIABLE witness of the r = 12 test."""
    gens = _parse_forms(witness["quadrics"], 2) + _parse_forms([witness["cubic"]], 3)
    return residual_scheme(gens, _float_points(decomp.points), 12, decomp.form, seed=seed, gap=gap,
                           residual=residual, colon_degree=3)


def second_decomposition_13(decomp, data, seed=0, gap=GAP, residual=RESIDUAL):
    """B = CI(Q1, Q2, C1, C2) minus A minus W for a constructed r = 13 instance.

    W is the part of the link on the hyperplane Lambda = 0; A misses it.
    """
    gens = _parse_forms(data["quadrics"], 2) + _parse_forms(data["linking_cubics"], 3)
    lam = scaled_floats(data["hyperplane"])
    lam = lam / np.linalg.norm(lam)

    def on_hyperplane(p):
        return abs(p @ lam) < 1e-6 * np.linalg.norm(p)

    return residual_scheme(gens, _float_points(decomp.points), 13, decomp.form, seed=seed, gap=gap,
                           residual=residual, drop=on_hyperplane, colon_degree=4)
