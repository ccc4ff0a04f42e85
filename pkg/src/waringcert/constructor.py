"""Seeded generators of test instances.

* generic instances: random integer points in general position;
* non-identifiable r = 12: T = sum_A v4(P)/kappa(P) for a complete
  intersection Z = (Q1, Q2, Q3, F) through A, so that T also lies in the
  span of v4(B) for the residual set B = Z minus A;
* non-identifiable r = 13: A is linked through W (ten points on a
  hyperplane section of the quartic surface through A) inside a complete
  intersection Y of type (2,2,3,3); the residual B has 13 points and
  T = sum_A Lambda(P)/kappa_Y(P) v4(P) lies in span v4(A) ∩ span v4(B);
* non-disjoint r = 13: a non-identifiable r = 12 instance plus one point.
"""

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .criteria import kruskal_rank
from .decomposition import Decomposition
from .fields import DEFAULT_PRIME, QQ, PrimeField, rational_str
from .liaison import (NotProperError, certify_ci, cubic_complement, residue_weights,
                      singular_locus_empty)
from .linalg import kernel, rank, solve, transpose
from .pointsets import (GradedIdealPiece, InverseSystem, PointSet, colon_piece, ideal_piece)
from .poly import NVARS, GradedForm, ProjectivePoint, compose_linear, dim_graded, evaluate, monomials

BOX = 15000


class ConstructionError(RuntimeError):
    """The retry budget was exhausted without a sufficiently general draw."""


@dataclass
class Instance:
    decomposition: Decomposition
    kind: str
    seed: int
    data: dict = dc_field(default_factory=dict)

    @property
    def points(self):
        return self.decomposition.points

    @property
    def weights(self):
        return self.decomposition.weights

    @property
    def form(self):
        return self.decomposition.form


def _forms_str(forms):
    return [[rational_str(c) for c in f.coeffs] for f in forms]


def _normalized(weights):
    w0 = weights[0]
    return [Fraction(w) / w0 for w in weights]


# ------------------------------------------------------------ generic

def _draw_point(rng, box):
    while True:
        c = [rng.randint(-box, box) for _ in range(NVARS)]
        if any(c):
            return ProjectivePoint(c)


def random_points(r, seed, box=BOX, budget=20):
    """r integer points with k1 = min(5, r) and k2 = min(15, r); deterministic per seed."""
    if r > 21:
        raise ValueError("r must be at most 21")
    rng = random.Random(seed)
    for _ in range(budget):
        pts = []
        while len(pts) < r:
            p = _draw_point(rng, box)
            if p not in pts:
                pts.append(p)
        a = PointSet(pts)
        if kruskal_rank(a, 1) == min(5, r) and kruskal_rank(a, 2) == min(15, r):
            return a
    raise ConstructionError("no general point set after %d draws" % budget)


def generic_instance(r, seed, box=BOX):
    a = random_points(r, seed, box)
    rng = random.Random(seed + 7919)
    weights = [rng.choice([-1, 1]) * rng.randint(1, 9) for _ in range(r)]
    return Instance(Decomposition.build(a, weights), "generic", seed, {})


# ------------------------------------------------------- r = 12 witness

def make_nonidentifiable_12(seed, box=BOX, budget=10, prime=DEFAULT_PRIME):
    """(T, A) with a second decomposition B of length 12, B = CI(Q1,Q2,Q3,F) minus A."""
    rng = random.Random(seed)
    field = PrimeField(prime)
    for attempt in range(budget):
        a = random_points(12, rng.randrange(2**31), box)
        quadrics = ideal_piece(a, 2, QQ).forms()
        if len(quadrics) != 3:
            continue
        cubics, _, _ = cubic_complement(a, quadrics, field)
        lam = [rng.randint(-9, 9) for _ in cubics]
        if not any(lam):
            continue
        f = GradedForm.zero(3, QQ)
        for l, g in zip(lam, cubics):
            f = f + g.scale(l)
        gens = quadrics + [f]
        try:
            ci = certify_ci(gens, prime=prime)
        except NotProperError:
            continue
        if not singular_locus_empty(gens, prime=prime).smooth:
            continue
        weights = _normalized(residue_weights(gens, list(a)))
        b4 = colon_piece(gens, a, 4, field=field)
        a4 = ideal_piece(a, 4, field)
        union = a4.space + b4.space
        if b4.dim != 58 or union.dim != 69:
            continue
        data = {"quadrics": _forms_str(quadrics), "cubic": _forms_str([f])[0],
                "cubic_basis": _forms_str(cubics), "cubic_parameters": lam,
                "ci_hilbert": ci.hilbert}
        return Instance(Decomposition.build(a, weights), "nonid12", seed, data)
    raise ConstructionError("no non-identifiable 12-point instance after %d attempts" % budget)


def make_nondisjoint_13(seed, box=BOX, budget=10):
    """A non-identifiable 12-term expression plus a generic 13th term (appended last)."""
    base = make_nonidentifiable_12(seed, box)
    rng = random.Random(seed + 104729)
    pts = list(base.points)
    for _ in range(budget):
        p = _draw_point(rng, box)
        if p in pts:
            continue
        a = PointSet(pts + [p])
        if kruskal_rank(a, 1) == 5 and kruskal_rank(a, 2) == 13:
            w = rng.choice([-1, 1]) * rng.randint(1, 9)
            data = dict(base.data)
            data["planted_point"] = 12
            return Instance(Decomposition.build(a, list(base.weights) + [w]), "nondisjoint13", seed, data)
    raise ConstructionError("no 13th point in general position")


# ------------------------------------------------------- r = 13 witness

def fourth_point(p1, p2, p3, quadrics):
    """The fourth intersection point of two quadrics with the plane through p1, p2, p3.

    On the plane a p1 + b p2 + c p3 each quadric through the three points
    restricts to alpha bc + beta ac + gamma ab; with (u, v, w) the cross
    product of the two coefficient vectors the fourth point is
    vw p1 + uw p2 + uv p3.
    """
    vecs = []
    for q in quadrics:
        def at(x, y):
            return evaluate(q, [xi + yi for xi, yi in zip(x, y)])
        vecs.append((at(p2, p3), at(p1, p3), at(p1, p2)))
    (a1, b1, c1), (a2, b2, c2) = vecs
    u, v, w = b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2
    if u * v * w == 0:
        return None
    coords = [v * w * x + u * w * y + u * v * z for x, y, z in zip(p1, p2, p3)]
    if all(c == 0 for c in coords):
        return None
    pt = ProjectivePoint(ProjectivePoint(coords).integral())
    if any(evaluate(q, pt) != 0 for q in quadrics):
        raise ArithmeticError("fourth point is not on the quadrics")
    return pt


def _restrict(f):
    """Drop the monomials containing y4 (restriction to the hyperplane y4 = 0)."""
    coeffs = [c if m[4] == 0 else Fraction(0) for m, c in zip(monomials(f.degree), f.coeffs)]
    return GradedForm(f.degree, coeffs, QQ)


def _split_through_e0e1(f):
    """f = y2*a1 + y3*a2 + y0*y1*h for f (no y4) vanishing at e0 and e1."""
    d = f.degree
    a1, a2, h = {}, {}, {}
    for m, c in f.terms().items():
        if m[2] > 0:
            a1[(m[0], m[1], m[2] - 1, m[3], m[4])] = c
        elif m[3] > 0:
            a2[(m[0], m[1], m[2], m[3] - 1, m[4])] = c
        elif m[0] > 0 and m[1] > 0:
            h[(m[0] - 1, m[1] - 1, m[2], m[3], m[4])] = c
        else:
            raise ArithmeticError("form does not vanish at the coordinate points")
    return [GradedForm.from_terms(a1, d - 1), GradedForm.from_terms(a2, d - 1), GradedForm.from_terms(h, d - 2)]


def det3(m):
    out = None
    for perm in itertools.permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        term = m[0][perm[0]] * m[1][perm[1]] * m[2][perm[2]]
        term = term.scale(sign)
        out = term if out is None else out + term
    return out


def _combination(forms, coeffs):
    out = None
    for c, f in zip(coeffs, forms):
        if c:
            out = f.scale(c) if out is None else out + f.scale(c)
    return out


def _random_nonzero_coeffs(rng, n, bound=9):
    while True:
        c = [rng.randint(-bound, bound) for _ in range(n)]
        if any(c):
            return c


def make_nonidentifiable_13(seed, box=BOX, budget=10, prime=DEFAULT_PRIME):
    """(T, A) with A 13 general points and a disjoint second decomposition B of length 13."""
    rng = random.Random(seed)
    field = PrimeField(prime)
    for attempt in range(budget):
        a = random_points(13, rng.randrange(2**31), box)
        quadrics = [_primitive(f) for f in ideal_piece(a, 2, QQ).forms()]
        if len(quadrics) != 2:
            continue
        p = fourth_point(a[0], a[1], a[2], quadrics)
        q = fourth_point(a[3], a[4], a[5], quadrics)
        if p is None or q is None or p == q or p in list(a) or q in list(a):
            continue
        extra = [_draw_point(rng, box) for _ in range(3)]
        phi = [[c[i] for c in (p, q) + tuple(extra)] for i in range(NVARS)]
        phi_inv_rows = _inverse_rows(phi)
        if phi_inv_rows is None:
            continue
        lam_form = GradedForm.linear(_integral(phi_inv_rows[4]), QQ)
        if any(evaluate(lam_form, pt) == 0 for pt in a):
            continue
        basis3 = [_primitive(f) for f in ideal_piece(a, 3, QQ).forms()]
        through = kernel([[evaluate(f, pt) for f in basis3] for pt in (p, q)], QQ, ncols=len(basis3))
        kcoef = [rng.randint(-9, 9) for _ in range(through.dim)]
        k = _combination(basis3, _combination_vectors(through.vectors(), kcoef))
        if k is None:
            continue
        gens_y = [_restrict(compose_linear(f, phi)) for f in quadrics + [k]]
        try:
            mat = [_split_through_e0e1(g) for g in gens_y]
        except ArithmeticError:
            continue
        dm = det3(mat)
        if dm is None or dm.is_zero():
            continue
        d_lift = _lift_restriction(basis3, dm, phi)
        if d_lift is None:
            continue
        xs = [GradedForm.variable(j, QQ) for j in range(NVARS)]
        aw3 = [qq * x for qq in quadrics for x in xs] + [k, d_lift]
        if rank(np.vstack([f.to_field(field).coeffs for f in aw3]), field) != 12:
            continue
        c1 = _combination(aw3, _random_nonzero_coeffs(rng, len(aw3)))
        c2 = _combination(aw3, _random_nonzero_coeffs(rng, len(aw3)))
        ygens = quadrics + [c1, c2]
        try:
            ci = certify_ci(ygens, prime=prime)
        except NotProperError:
            continue
        if not singular_locus_empty(ygens, prime=prime).smooth:
            continue
        mult = [evaluate(lam_form, pt) for pt in a]
        weights = _normalized(residue_weights(ygens, list(a), QQ, multipliers=mult))
        data = {"quadrics": _forms_str(quadrics), "linking_cubics": _forms_str([c1, c2]),
                "hyperplane": [rational_str(c) for c in lam_form.coeffs],
                "residual_generators": _forms_str([lam_form, quadrics[0], quadrics[1], k, d_lift]),
                "section_points": [[rational_str(c) for c in pt.coords] for pt in (p, q)],
                "ci_hilbert": ci.hilbert}
        return Instance(Decomposition.build(a, weights), "nonid13", seed, data)
    raise ConstructionError("no non-identifiable 13-point instance after %d attempts" % budget)


def _inverse_rows(m):
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        k = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if k is None:
            return None
        aug[c], aug[k] = aug[k], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _integral(coeffs):
    return list(ProjectivePoint(coeffs).integral())


def _combination_vectors(vecs, coeffs):
    out = [Fraction(0)] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        out = [o + c * x for o, x in zip(out, v)]
    return out


def _primitive(f):
    """f scaled to coprime integer coefficients."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = math.gcd(*ints)
    return GradedForm(f.degree, [Fraction(v // g) for v in ints], QQ)


def _lift_restriction(basis, target, phi):
    """A cubic D in span(basis) whose restriction D(phi y)|_{y4=0} equals ``target``."""
    images = [_restrict(compose_linear(f, phi)) for f in basis]
    cols = [i for i, m in enumerate(monomials(3)) if m[4] == 0]
    mat = [[img.coeffs[c] for img in images] for c in cols]
    sol = solve(mat, [target.coeffs[c] for c in cols], QQ)
    if sol is None:
        return None
    return _combination(basis, sol)


# ------------------------------------------------------ verification data

def _piece_from_forms(forms, d, field):
    from .linalg import Subspace
    vecs = np.vstack([f.to_field(field).coeffs for f in forms]) if forms else []
    return GradedIdealPiece(d, Subspace.span(vecs, dim_graded(d), field))


def linkage_report_13(inst, prime=DEFAULT_PRIME):
    """Hilbert data of the double linkage behind a nonid13 instance (all modulo p)."""
    field = PrimeField(prime)
    a = inst.points
    parse = lambda rows, d: [GradedForm(d, [Fraction(c) for c in row], QQ) for row in rows]
    lam_form = GradedForm(1, [Fraction(c) for c in inst.data["hyperplane"]], QQ)
    rg = inst.data["residual_generators"]
    w_gens = [lam_form] + parse(rg[1:3], 2) + parse(rg[3:5], 3)
    ygens = parse(inst.data["quadrics"], 2) + parse(inst.data["linking_cubics"], 3)
    inv_w = InverseSystem([g.to_field(field) for g in w_gens], field)
    h_w = inv_w.hilbert_values(4)
    h_aw = []
    for d in range(5):
        ia = ideal_piece(a, d, field).space if d else None
        iw = inv_w.piece(d).space
        h_aw.append(1 if d == 0 else dim_graded(d) - ia.intersect(iw).dim)
    w3 = inv_w.piece(3)
    inv_y = InverseSystem([g.to_field(field) for g in ygens], field)
    h_z = [1] + [dim_graded(d) - colon_piece(ygens, w3, d, field=field, inverse_system=inv_y).dim
                 for d in range(1, 6)]
    aw4 = GradedIdealPiece(4, ideal_piece(a, 4, field).space.intersect(inv_w.piece(4).space))
    b_pieces = {d: colon_piece(ygens, aw4, d, field=field, inverse_system=inv_y) for d in range(1, 5)}
    h_b = [1] + [dim_graded(d) - b_pieces[d].dim for d in range(1, 5)]
    a4 = ideal_piece(a, 4, field)
    z4 = a4.space.intersect(b_pieces[4].space)
    # Cayley-Bacharach in degree 4 for Z = A u B
    lam_r = lam_form.to_field(field)
    lam_r3 = [(lam_r * GradedForm(3, c, field)).coeffs for c in np.eye(dim_graded(3), dtype=np.int64)]
    from .linalg import Subspace
    b_meets_hyperplane = (b_pieces[4].space + Subspace.span(np.vstack(lam_r3), dim_graded(4), field)).dim != 70
    lam_at_a = [evaluate(lam_form, p) for p in a]
    smooth = singular_locus_empty(ygens, prime=prime).smooth
    deleted = []
    for i in range(len(a)):
        sub = ideal_piece(a.without(i), 4, field).space.intersect(b_pieces[4].space)
        deleted.append(dim_graded(4) - sub.dim)
    return {
        "h_W": h_w, "Dh_W": [h_w[0]] + [h_w[d] - h_w[d - 1] for d in range(1, 5)],
        "h_AW": h_aw, "h_Z": h_z, "Dh_Z": [h_z[0]] + [h_z[d] - h_z[d - 1] for d in range(1, 6)],
        "h_B": h_b, "dim_IA4": a4.dim, "dim_IB4": b_pieces[4].dim, "h_Z4": dim_graded(4) - z4.dim,
        "orthogonal": _orth(inst.form, b_pieces[4]),
        "cb4_holds": bool(smooth and not b_meets_hyperplane and all(x != 0 for x in lam_at_a)),
        "h_Z_minus_A_point_4": deleted,
        "b_pieces": b_pieces,
    }


def _orth(t, piece):
    from .liaison import orthogonal_to_piece
    return orthogonal_to_piece(t, piece)
