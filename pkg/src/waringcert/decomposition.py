"""Waring expressions T = sum lambda_i L_i^4 and exact weight recovery."""

from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, to_rational
from .linalg import certified_rank, rank_rational, solve, transpose
from .pointsets import PointSet, veronese_matrix
from .poly import GradedForm, ProjectivePoint, as_point, veronese


class InputError(ValueError):
    """Rejected input (zero weight, repeated point, wrong sizes, r too large)."""


class NotInSpanError(ValueError):
    """T is not a combination of the given fourth powers."""

    def __init__(self, rank_points, rank_augmented):
        super().__init__("form is outside the span: rank %d -> %d after adding T" % (rank_points, rank_augmented))
        self.rank_points = rank_points
        self.rank_augmented = rank_augmented


def weighted_form(points, weights, degree=4):
    acc = GradedForm.zero(degree, QQ)
    for p, w in zip(points, weights):
        acc = acc + GradedForm(degree, veronese(p, degree, QQ), QQ).scale(w)
    return acc


@dataclass
class Decomposition:
    points: PointSet
    weights: list
    form: GradedForm

    @classmethod
    def build(cls, points, weights, form=None):
        pts = points if isinstance(points, PointSet) else PointSet([as_point(p) for p in points])
        ws = [to_rational(w) for w in weights]
        if len(ws) != len(pts):
            raise InputError("%d points but %d weights" % (len(pts), len(ws)))
        for i, w in enumerate(ws):
            if w == 0:
                raise InputError("weight %d is zero" % i)
        t = weighted_form(pts, ws)
        if form is not None:
            given = form if isinstance(form, GradedForm) else GradedForm(4, [to_rational(c) for c in form], QQ)
            if given != t:
                raise InputError("the stored form differs from the weighted sum of fourth powers")
        return cls(pts, ws, t)

    @property
    def r(self):
        return len(self.points)

    def without(self, i):
        """The expression T - lambda_i L_i^4 on the remaining points."""
        idx = [j for j in range(self.r) if j != i]
        return Decomposition.build(self.points.subset(idx), [self.weights[j] for j in idx])


def recover_weights(t, a):
    """Unique lambda with T = sum lambda_i v4(P_i), exactly over QQ.

    Raises ValueError when v4(A) is dependent and NotInSpanError (with the
    two ranks as certificate) when T is outside the span.
    """
    pts = a if isinstance(a, PointSet) else PointSet([as_point(p) for p in a])
    v = veronese_matrix(pts, 4, QQ)
    cert = certified_rank(v)
    if cert.rank < len(pts):
        raise ValueError("v4(A) is linearly dependent (rank %d < %d)" % (cert.rank, len(pts)))
    coeffs = t.coeffs if isinstance(t, GradedForm) else [to_rational(c) for c in t]
    sol = solve(transpose(v), list(coeffs), QQ)
    if sol is None:
        r2 = rank_rational([list(r) for r in v] + [list(coeffs)])
        raise NotInSpanError(cert.rank, r2)
    return [Fraction(x) for x in sol]
