"""Certification of Waring expressions of quartics in five variables.

``certify`` dispatches on the length r of the expression and returns a
:class:`Verdict` with rank status, identifiability and an evidence trail.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .criteria import (IDENTIFIABLE as CRIT_IDENTIFIABLE, SubsetCache, condition_battery,
                       quartic_2n1_criterion, reshaped_kruskal, subset_finiteness, terracini)
from .decomposition import Decomposition, InputError, NotInSpanError, recover_weights
from .fields import DEFAULT_PRIME, QQ, PrimeField, rational_str
from .liaison import (LiftingError, NotProperError, ResidueFamily, certify_ci, cubic_complement,
                      euler_jacobi_system, orthogonal_to_piece, singular_locus_empty)
from .pointsets import ideal_piece
from .poly import dim_graded

RANK_CERTIFIED = "RANK_CERTIFIED"
INCONCLUSIVE = "INCONCLUSIVE"
IDENTIFIABLE = "IDENTIFIABLE"
NOT_IDENTIFIABLE = "NOT_IDENTIFIABLE"
UNDETERMINED = "UNDETERMINED"
CANNOT_HANDLE = "CANNOT_HANDLE"

MAX_R = 13
EXPECTED_BETTI_12 = [{2: 3, 3: 8}, {4: 27}, {5: 24}, {6: 7}]
ABOVE_RANGE_MESSAGE = ("r >= 14: a quartic in five variables with a decomposition of length "
                       "r >= 14 is never identifiable, since the 14-secant variety is defective; "
                       "nothing to certify")

__all__ = ["Decomposition", "Verdict", "certify", "recover_weights", "NotInSpanError", "InputError"]


@dataclass
class Verdict:
    r: int
    rank_status: str
    rank: int = None
    identifiability: str = CANNOT_HANDLE
    reason: str = ""
    witness: dict = None
    evidence: dict = dc_field(default_factory=dict)

    def summary(self):
        rank = "%s(%d)" % (self.rank_status, self.rank) if self.rank is not None else self.rank_status
        out = "%s + %s" % (rank, self.identifiability)
        return out + (" (%s)" % self.reason if self.reason else "")

    def to_dict(self):
        return {"r": self.r, "rank_status": self.rank_status, "rank": self.rank,
                "identifiability": self.identifiability, "reason": self.reason,
                "witness": _jsonable(self.witness), "evidence": _jsonable(self.evidence)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return rational_str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


# ------------------------------------------------------------ dispatch

def certify(decomp, prime=DEFAULT_PRIME, cache=None):
    """Certify rank and identifiability of a Decomposition (1 <= r <= 13)."""
    r = decomp.r
    if r < 1:
        raise InputError("empty expression")
    if r > MAX_R:
        raise InputError(ABOVE_RANGE_MESSAGE)
    cache = cache or SubsetCache(prime)
    if r <= 8:
        return _certify_small(decomp, prime)
    if r == 9:
        return _certify_9(decomp, prime)
    if r in (10, 11):
        return _certify_10_11(decomp, prime, cache)
    if r == 12:
        return certify_12(decomp, prime, cache)
    return _certify_13(decomp, prime, cache)


def _terracini_evidence(pts, prime):
    ter = terracini(pts, 4, prime)
    return ter.maximal, {"rank": ter.rank, "rows": ter.rows, "cols": ter.cols,
                         "projective_dimension": ter.projective_dimension}


def _certify_small(decomp, prime):
    from .criteria import RedundantError

    r = decomp.r
    try:
        kv = reshaped_kruskal(decomp, 4, prime)
    except RedundantError as exc:
        return Verdict(r, INCONCLUSIVE, None, CANNOT_HANDLE, str(exc),
                       evidence={"redundant_point": exc.index})
    ter_ok, ter_ev = _terracini_evidence(decomp.points, prime)
    ev = {"kruskal": {"partition": kv.partition, "bound": str(kv.bound), "ranks": kv.ranks,
                      "verdict": kv.verdict}, "terracini": ter_ev}
    if kv.verdict == CRIT_IDENTIFIABLE and ter_ok:
        return Verdict(r, RANK_CERTIFIED, r, IDENTIFIABLE, "", evidence=ev)
    reason = "reshaped Kruskal bound not met" if kv.verdict != CRIT_IDENTIFIABLE else "tangent spaces are deficient"
    return Verdict(r, INCONCLUSIVE, None, CANNOT_HANDLE, reason, evidence=ev)


def _certify_9(decomp, prime):
    res = quartic_2n1_criterion(decomp, prime)
    ev = {"span_rank": res.span_rank, "k1": res.k1,
          "terracini": {"rank": res.terracini.rank, "rows": res.terracini.rows,
                        "projective_dimension": res.terracini.projective_dimension},
          "failed": res.failed}
    if res.verdict == CRIT_IDENTIFIABLE:
        return Verdict(9, RANK_CERTIFIED, 9, IDENTIFIABLE, "", evidence=ev)
    return Verdict(9, INCONCLUSIVE, None, CANNOT_HANDLE, "criterion failed: " + ", ".join(res.failed), evidence=ev)


def _certify_10_11(decomp, prime, cache):
    r = decomp.r
    rep = condition_battery(decomp, "iv", prime, cache)
    ev = {"conditions": rep.flags, "details": rep.evidence}
    if not rep.ok("i", "ii", "iii"):
        return Verdict(r, INCONCLUSIVE, None, CANNOT_HANDLE, "failed: " + ", ".join(rep.failed()), evidence=ev)
    if not rep.ok("iv", "terracini"):
        return Verdict(r, RANK_CERTIFIED, r, CANNOT_HANDLE, "failed: " + ", ".join(rep.failed()), evidence=ev)
    ok, details, bad = subset_finiteness(decomp.points, range(9, r), cache, prime)
    ev["subsets"] = {"checked": len(details), "first_failure": bad}
    if not ok:
        return Verdict(r, RANK_CERTIFIED, r, CANNOT_HANDLE, "a subset has an infinite base locus", evidence=ev)
    return Verdict(r, RANK_CERTIFIED, r, IDENTIFIABLE, "", evidence=ev)


# ------------------------------------------------------------- r = 12

def _final_test(decomp, prime, quadrics=None):
    """The final test: mapping-cone and residue routes, compared.

    Returns (identifiability, reason, witness, evidence).
    """
    pts = decomp.points
    field = PrimeField(prime)
    quadrics = quadrics or ideal_piece(pts, 2, QQ).forms()
    cubics, span_dim, i3_dim = cubic_complement(pts, quadrics, field)
    ev = {"cubic_parameters": len(cubics), "cubics_through_A": i3_dim}
    if len(quadrics) != 3 or len(cubics) != 8:
        return CANNOT_HANDLE, "unexpected ideal shape", None, ev
    try:
        fam = ResidueFamily(pts, quadrics, cubics, field)
    except (LiftingError, ArithmeticError) as exc:
        return CANNOT_HANDLE, "lifting failed: %s" % exc, None, ev
    ev["betti"] = [{str(k): v for k, v in sorted(b.items())} for b in fam.resolution.betti]
    if fam.resolution.betti != EXPECTED_BETTI_12:
        return CANNOT_HANDLE, "resolution of I_A is not the generic one", None, ev
    systems = [fam.build_mateqns(decomp.form, s) for s in fam.splittings]
    ev["mateqns"] = {"raw_rows": systems[0].raw_rows, "rank": [s.rank for s in systems],
                     "kernel_dim": [s.kernel.dim for s in systems], "prime": prime}
    invariant = all(s.kernel == systems[0].kernel for s in systems)
    ev["mateqns"]["kernel_invariant"] = invariant
    if not invariant:
        return CANNOT_HANDLE, "final-test kernel depends on the lifting splitting", None, ev
    ej = euler_jacobi_system(decomp.weights, list(pts), quadrics, cubics)
    ev["residue_system"] = {"rows": len(ej.matrix), "cols": len(ej.matrix[0]), "rank": ej.rank}
    mrank = systems[0].rank
    if ej.rank == 9 and mrank == 8:
        return IDENTIFIABLE, "", None, ev
    if ej.rank == 8 and mrank == 7:
        vec = ej.kernel[0]
        lam, c = vec[:8], vec[8]
        if c == 0:
            return CANNOT_HANDLE, "degenerate residue solution", None, ev
        k = next(i for i, x in enumerate(lam) if x)
        lam = [x / lam[k] for x in lam]
        mod = np.array([field.reduce(x) for x in lam], dtype=np.int64)
        if not systems[0].kernel.contains(mod):
            return CANNOT_HANDLE, "the two final-test routes disagree on the kernel", None, ev
        witness, confirm = _confirm_witness(decomp, fam, quadrics, lam, field)
        ev["oracle"] = confirm
        if not confirm["confirmed"]:
            return CANNOT_HANDLE, "oracle refuted the alternative decomposition", None, ev
        return NOT_IDENTIFIABLE, "", witness, ev
    return CANNOT_HANDLE, "final-test ranks: residue system %d, MatEqns %d" % (ej.rank, mrank), None, ev


def _confirm_witness(decomp, fam, quadrics, lam, field):
    cubic = fam.cubic_rational(lam)
    out = {}
    try:
        ci = certify_ci(list(quadrics) + [cubic], prime=field.p)
        out["complete_intersection_h"] = ci.hilbert
    except NotProperError as exc:
        out["complete_intersection_h"] = None
        out["confirmed"] = False
        out["failure"] = str(exc)
        return None, out
    smooth = singular_locus_empty(list(quadrics) + [cubic], prime=field.p)
    out["reduced"] = smooth.smooth
    mod_lam = [field.reduce(x) for x in lam]
    b4 = fam.residue_piece(mod_lam, 4)
    a4 = ideal_piece(decomp.points, 4, field)
    both = a4.space.intersect(b4.space)
    out["residue_dims"] = {str(d): fam.residue_piece(mod_lam, d).dim for d in (1, 2, 3)}
    out["residue_dims"]["4"] = b4.dim
    out["intersection_dim_4"] = both.dim
    out["orthogonal"] = orthogonal_to_piece(decomp.form, b4)
    out["confirmed"] = bool(smooth.smooth and b4.dim == 58 and both.dim == 47 and out["orthogonal"])
    witness = {"cubic_parameters": [rational_str(x) for x in lam],
               "cubic": [rational_str(x) for x in cubic.coeffs],
               "quadrics": [[rational_str(x) for x in q.coeffs] for q in quadrics]}
    dims = out["residue_dims"]
    witness["residue_hilbert"] = [1] + [dim_graded(d) - dims[str(d)] for d in (1, 2, 3, 4)]
    return witness, out


def certify_12(decomp, prime=DEFAULT_PRIME, cache=None):
    r = decomp.r
    if r != 12:
        raise InputError("the twelve-point algorithm needs r = 12")
    rep = condition_battery(decomp, "v", prime, cache)
    ev = {"conditions": rep.flags, "details": rep.evidence}
    if not rep.ok("i", "ii", "iii"):
        return Verdict(r, INCONCLUSIVE, None, CANNOT_HANDLE, "failed: " + ", ".join(rep.failed()), evidence=ev)
    failed = [k for k in ("terracini", "iv'", "v") if not rep.flags.get(k)]
    if failed:
        return Verdict(r, RANK_CERTIFIED, r, CANNOT_HANDLE, "failed: " + ", ".join(failed), evidence=ev)
    ident, reason, witness, fev = _final_test(decomp, prime)
    ev["final_test"] = fev
    return Verdict(r, RANK_CERTIFIED, r, ident, reason, witness, ev)


# ------------------------------------------------------------- r = 13

def _certify_13(decomp, prime, cache):
    r = decomp.r
    rep = condition_battery(decomp, "iv'", prime, cache)
    ev = {"conditions": rep.flags, "details": rep.evidence}
    if not rep.ok("i", "ii", "iii", "iv'"):
        return Verdict(r, INCONCLUSIVE, None, CANNOT_HANDLE, "failed: " + ", ".join(rep.failed()), evidence=ev)
    subs = []
    found = None
    unhandled = None
    for i in range(r):
        sub = decomp.without(i)
        v = certify_12(sub, prime, cache)
        mat = v.evidence.get("final_test", {}).get("mateqns", {})
        subs.append({"removed": i, "identifiability": v.identifiability, "reason": v.reason,
                     "mateqns_rank": mat.get("rank"), "kernel_invariant": mat.get("kernel_invariant")})
        if v.identifiability == NOT_IDENTIFIABLE and found is None:
            found = (i, v)
        elif v.identifiability == CANNOT_HANDLE and unhandled is None:
            unhandled = (i, v)
    ev["subproblems"] = subs
    if found is not None:
        i, v = found
        witness = dict(v.witness)
        witness["removed_point"] = i
        return Verdict(r, RANK_CERTIFIED, r, NOT_IDENTIFIABLE,
                       "the expression without point %d has a second decomposition" % i, witness, ev)
    if unhandled is not None:
        return Verdict(r, RANK_CERTIFIED, r, CANNOT_HANDLE,
                       "subproblem without point %d: %s" % (unhandled[0], unhandled[1].reason), evidence=ev)
    return Verdict(r, RANK_CERTIFIED, r, UNDETERMINED,
                   "no alternative decomposition meets A; the disjoint family test is out of scope", evidence=ev)
