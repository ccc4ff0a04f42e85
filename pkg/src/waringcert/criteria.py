"""Identifiability criteria: Kruskal ranks, Terracini spans and the condition battery.

Conditions on a decomposition A of T (notation of the certifier):

  (i)   A is non-redundant for T, i.e. v4(A) is linearly independent;
  (ii)  k1(A) = 5;
  (iii) k2(A) = r;
  (iv)  the base locus of the quadrics through A is finite;
  (iv') (iv) holds for every subset of A with 11 points;
  (v)   the quadrics through A cut an irreducible curve (r = 12).
"""

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kernels
from .fields import DEFAULT_PRIME, QQ, PrimeField
from .linalg import all_maximal_minors_nonzero, certified_rank, kernel
from .pointsets import (PointSet, base_locus, evaluation_matrix, ideal_piece, koszul_hvector,
                        veronese_matrix)
from .poly import GradedForm, dim_graded, veronese

IDENTIFIABLE = "IDENTIFIABLE"
INCONCLUSIVE = "INCONCLUSIVE"

CURVE_12 = (8, -4)


# ---------------------------------------------------------- Kruskal ranks

def _subset_rank_ok(rows, mod, sel, k, prime):
    if mod is not None and len(kernels.rref_mod(mod[list(sel)], prime)[1]) == k:
        return True
    return certified_rank([rows[i] for i in sel], expected=k, prime=prime, seed=len(sel)).rank == k


def kruskal_data(a, d, prime=DEFAULT_PRIME):
    """(k_d(A), witness): witness is a dependent (k+1)-subset, or None if k = len(A)."""
    rows = evaluation_matrix(a, d, QQ)
    l, n = len(rows), dim_graded(d)
    gf = PrimeField(prime)
    try:
        mod = evaluation_matrix(a, d, gf)
    except ArithmeticError:
        mod = None
    witness = None
    for k in range(min(l, n), 0, -1):
        if k == n and l > n:
            scan = all_maximal_minors_nonzero(rows, prime)
            bad = None if scan.all_nonzero else scan.witness
        else:
            bad = None
            for sel in itertools.combinations(range(l), k):
                if not _subset_rank_ok(rows, mod, sel, k, prime):
                    bad = sel
                    break
        if bad is None:
            return k, witness
        witness = tuple(bad)
    return 0, witness


def kruskal_rank(a, d, prime=DEFAULT_PRIME):
    """Largest k such that every k points of A have independent images under v_d."""
    if d < 1:
        raise ValueError("degree must be positive")
    return kruskal_data(a, d, prime)[0]


@dataclass
class KruskalRanks:
    values: dict
    witnesses: dict

    def __getitem__(self, d):
        return self.values[d]


def kruskal_ranks(a, degrees, prime=DEFAULT_PRIME):
    vals, wit = {}, {}
    for d in degrees:
        vals[d], wit[d] = kruskal_data(a, d, prime)
    return KruskalRanks(vals, wit)


# ------------------------------------------------------- non-redundancy

@dataclass
class RedundancyReport:
    nonredundant: bool
    veronese_rank: int
    redundant_point: int = None
    method: str = ""


def nonredundancy(points, prime=DEFAULT_PRIME):
    """Condition (i): v4(A) independent.  With nonzero weights this is equivalent
    to A being non-redundant; otherwise a point removable from the expression is named."""
    v = veronese_matrix(points, 4, QQ)
    cert = certified_rank(v, prime=prime)
    if cert.rank == len(points):
        return RedundancyReport(True, cert.rank, None, cert.method)
    rel = kernel([list(c) for c in zip(*v)], QQ).basis[0]
    j = next(i for i, c in enumerate(rel) if c)
    return RedundancyReport(False, cert.rank, j, cert.method)


class RedundantError(ValueError):
    def __init__(self, index):
        super().__init__("decomposition is redundant: point %d can be removed" % index)
        self.index = index


# ------------------------------------------------------ reshaped Kruskal

def partitions3(d):
    return [(a, b, d - a - b) for a in range(d, 0, -1) for b in range(min(a, d - a), 0, -1)
            if 1 <= d - a - b <= b]


@dataclass
class KruskalVerdict:
    verdict: str
    partition: tuple = None
    bound: object = None
    ranks: dict = dc_field(default_factory=dict)
    scanned: list = dc_field(default_factory=list)


def reshaped_kruskal(decomp, d=4, prime=DEFAULT_PRIME):
    """IDENTIFIABLE if some d = d1+d2+d3 has len(A) <= (k_d1 + k_d2 + k_d3 - 2)/2."""
    if d < 3:
        raise ValueError("reshaped Kruskal needs degree >= 3")
    pts = decomp.points
    red = nonredundancy(pts, prime)
    if not red.nonredundant:
        raise RedundantError(red.redundant_point)
    ks = {}
    best = None
    scanned = []
    for part in partitions3(d):
        for di in part:
            if di not in ks:
                ks[di] = kruskal_rank(pts, di, prime)
        val = sum(ks[di] for di in part) - 2
        scanned.append((part, val))
        if val >= 2 * len(pts) and best is None:
            best = (part, val)
    if best is not None:
        return KruskalVerdict(IDENTIFIABLE, best[0], best[1] / 2, ks, scanned)
    top = max(scanned, key=lambda s: s[1])
    return KruskalVerdict(INCONCLUSIVE, top[0], top[1] / 2, ks, scanned)


# ------------------------------------------------------------- Terracini

def tangent_rows(point, d, field=QQ):
    """The rows x_j * L^(d-1), j = 0..4, spanning the affine tangent space at v_d(P)."""
    base = GradedForm(d - 1, veronese(point, d - 1, field), field)
    return [(base * GradedForm.variable(j, field)).coeffs for j in range(5)]


@dataclass
class TerraciniReport:
    rank: int
    rows: int
    cols: int
    method: str

    @property
    def projective_dimension(self):
        return self.rank - 1

    @property
    def expected(self):
        return min(self.rows, self.cols)

    @property
    def maximal(self):
        return self.rank == self.expected


def terracini(a, d=4, prime=DEFAULT_PRIME):
    rows = []
    for p in a:
        rows.extend(list(r) for r in tangent_rows(p, d))
    cert = certified_rank(rows, prime=prime)
    return TerraciniReport(cert.rank, len(rows), dim_graded(d), cert.method)


def terracini_dim(a, d=4, prime=DEFAULT_PRIME):
    """Rank of the stacked tangent rows (affine dimension of the span)."""
    return terracini(a, d, prime).rank


@dataclass
class CriterionResult:
    verdict: str
    span_rank: int
    k1: int
    terracini: TerraciniReport
    failed: list


def quartic_2n1_criterion(decomp, prime=DEFAULT_PRIME):
    """Nine points: identifiable of rank 9 if v4(A) has rank 9, k1 = 5 and the
    tangent spaces span the expected 45 = 2n^2 + 3n + 1 dimensions (n = 4)."""
    pts = decomp.points
    if len(pts) != 9:
        raise ValueError("the 2n+1 criterion needs exactly 9 points, got %d" % len(pts))
    span = certified_rank(veronese_matrix(pts, 4, QQ), prime=prime).rank
    k1 = kruskal_rank(pts, 1, prime)
    ter = terracini(pts, 4, prime)
    failed = []
    if span != 9:
        failed.append("span")
    if k1 != 5:
        failed.append("k1")
    if ter.rank != 2 * 16 + 3 * 4 + 1:
        failed.append("terracini")
    return CriterionResult(IDENTIFIABLE if not failed else INCONCLUSIVE, span, k1, ter, failed)


# -------------------------------------------------------- base loci

@dataclass
class FinitenessReport:
    finite: bool
    length: int = None
    describe: str = ""
    ci_certified: bool = False


def quadrics_mod(a, field):
    return ideal_piece(a, 2, field).forms()


def base_locus_of(a, prime=DEFAULT_PRIME, seed=0, tries=3):
    """Base locus of the quadrics through A over GF(p).

    Finiteness is certified by four random quadrics of the system forming a
    complete intersection (Koszul Hilbert function (1,4,6,4,1)); the length
    is read off the Hilbert function on the probe window.
    """
    from .liaison import NotProperError, certify_ci

    field = PrimeField(prime)
    qs = quadrics_mod(a, field)
    rep = base_locus(qs, field=field)
    ci_ok = False
    if len(qs) >= 4:
        rng = random.Random(seed)
        for _ in range(tries):
            combos = []
            for _k in range(4):
                acc = GradedForm.zero(2, field)
                for q in qs:
                    acc = acc + q.scale(rng.randrange(1, prime))
                combos.append(acc)
            try:
                certify_ci(combos, prime=prime, retries=0, extra=0)
                ci_ok = True
                break
            except NotProperError:
                continue
    finite = rep.verdict == "finite" and ci_ok
    return FinitenessReport(finite, rep.length, rep.describe(), ci_ok), rep


# ------------------------------------------------------ condition battery

@dataclass
class ConditionReport:
    flags: dict = dc_field(default_factory=dict)
    evidence: dict = dc_field(default_factory=dict)

    def ok(self, *names):
        return all(self.flags.get(n) for n in names)

    def failed(self):
        return [k for k, v in self.flags.items() if not v]


class SubsetCache:
    """Base-locus reports keyed by the canonical coordinates of a point subset."""

    def __init__(self, prime=DEFAULT_PRIME):
        self.prime = prime
        self.store = {}

    def get(self, pts):
        key = tuple(sorted(tuple(p.canonical()) if hasattr(p, "canonical") else tuple(p) for p in pts))
        if key not in self.store:
            self.store[key] = base_locus_of(pts, self.prime)[0]
        return self.store[key]


def subset_finiteness(points, sizes, cache=None, prime=DEFAULT_PRIME, max_length=16):
    """(iv) on every subset of the given sizes; returns (ok, details, first failure)."""
    cache = cache or SubsetCache(prime)
    details = []
    for s in sizes:
        for sel in itertools.combinations(range(len(points)), s):
            rep = cache.get(points.subset(sel))
            ok = rep.finite and (rep.length is None or rep.length <= max_length)
            details.append((sel, rep.describe if rep else None))
            if not ok:
                return False, details, sel
    return True, details, None


def curve_condition(points, prime=DEFAULT_PRIME, max_degree=14):
    """(v): the quadrics through A cut a smooth (hence irreducible) curve 8t - 4."""
    from .liaison import singular_locus_empty

    field = PrimeField(prime)
    qs = quadrics_mod(points, field)
    rep = base_locus(qs, field=field)
    curve = rep.verdict == "curve" and rep.hilbert_polynomial == CURVE_12
    smooth = singular_locus_empty(qs, max_degree=max_degree, prime=prime) if len(qs) == 3 else None
    ok = bool(curve and smooth is not None and smooth.smooth)
    return ok, {"base_locus": rep.describe(), "window": dict(rep.window or {}),
                "smooth": bool(smooth and smooth.smooth),
                "singular_locus_vanishing_degree": smooth.vanishing_degree if smooth else None}


def condition_battery(decomp, level="iv", prime=DEFAULT_PRIME, cache=None, with_terracini=True):
    """Evaluate (i)-(iii) and the requested base-locus level: "iv", "iv'" or "v".

    "v" evaluates (iv') and (v) together (the r = 12 algorithm); "iv" with
    subsets=True semantics is handled by the certifier.
    """
    pts = decomp.points
    r = len(pts)
    rep = ConditionReport()
    red = nonredundancy(pts, prime)
    rep.flags["i"] = red.nonredundant
    rep.evidence["i"] = {"veronese_rank": red.veronese_rank, "method": red.method,
                         "redundant_point": red.redundant_point}
    k1, w1 = kruskal_data(pts, 1, prime)
    rep.flags["ii"] = k1 == 5
    rep.evidence["ii"] = {"k1": k1, "dependent_subset": w1}
    scan = all_maximal_minors_nonzero(evaluation_matrix(pts, 1, QQ), prime)
    rep.evidence["ii"]["maximal_minors"] = {"checked": scan.checked, "total": scan.total,
                                            "all_nonzero": scan.all_nonzero}
    k2, w2 = kruskal_data(pts, 2, prime)
    rep.flags["iii"] = k2 == r
    rep.evidence["iii"] = {"k2": k2, "dependent_subset": w2}
    scan = all_maximal_minors_nonzero(evaluation_matrix(pts, 2, QQ), prime)
    rep.evidence["iii"]["maximal_minors"] = {"checked": scan.checked, "total": scan.total,
                                             "all_nonzero": scan.all_nonzero}
    if with_terracini:
        ter = terracini(pts, 4, prime)
        rep.flags["terracini"] = ter.maximal
        rep.evidence["terracini"] = {"rank": ter.rank, "rows": ter.rows, "cols": ter.cols,
                                     "projective_dimension": ter.projective_dimension}
    if not rep.ok("i", "ii", "iii"):
        return rep
    cache = cache or SubsetCache(prime)
    if level == "iv":
        fr = cache.get(pts)
        rep.flags["iv"] = fr.finite
        rep.evidence["iv"] = {"base_locus": fr.describe, "length": fr.length, "ci_certified": fr.ci_certified}
    if level in ("iv'", "v"):
        sizes = [11] if r > 11 else [r]
        ok, details, bad = subset_finiteness(pts, sizes, cache, prime)
        rep.flags["iv'"] = ok
        rep.evidence["iv'"] = {"subsets_checked": len(details), "first_failure": bad,
                               "lengths": sorted({d for _, d in details})}
    if level == "v":
        ok, ev = curve_condition(pts, prime)
        rep.flags["v"] = ok
        rep.evidence["v"] = ev
    return rep

