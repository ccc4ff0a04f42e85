from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from waringcert.fields import QQ, PrimeField
from waringcert.linalg import (Subspace, all_maximal_minors_nonzero, certified_rank, det_rational, kernel,
                               left_kernel, mat_vec, rank, rank_rational, rref, solve, transpose)

GF = PrimeField()
small = st.integers(-6, 6)
rat_matrix = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(rat_matrix)
@settings(max_examples=80, deadline=None)
def test_kernel_vectors_are_annihilated(m):
    ker = kernel(m, QQ, ncols=len(m[0]))
    assert ker.dim + rank_rational(m) == len(m[0])
    for v in ker.vectors():
        assert all(x == 0 for x in mat_vec(m, v, QQ))


@given(rat_matrix)
@settings(max_examples=80, deadline=None)
def test_modular_rank_never_exceeds_rational(m):
    assert rank(m, GF) <= rank_rational(m)
    assert certified_rank(m).rank == rank_rational(m)


def test_rref_is_canonical():
    m = [[2, 4, 6], [1, 2, 4]]
    red, piv = rref(m, QQ)
    assert piv == [0, 2]
    assert red[0] == (1, 2, 0) and red[1] == (0, 0, 1)


def test_solve_and_inconsistency():
    m = [[1, 2], [3, 4]]
    x = solve(m, [5, 6], QQ)
    assert mat_vec(m, x, QQ) == [5, 6]
    assert solve([[1, 1], [1, 1]], [1, 2], QQ) is None
    xm = solve(m, [5, 6], GF)
    assert list(mat_vec(m, xm, GF)) == [5, 6]


def test_determinant_exact():
    assert det_rational([[Fraction(1, 2), 3], [4, 5]]) == Fraction(5, 2) - 12
    assert det_rational([[1, 2], [2, 4]]) == 0


def test_subspace_operations():
    u = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    v = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    assert (u + v).dim == 3
    w = u.intersect(v)
    assert w.dim == 1 and w.contains([0, 5, 0])
    assert not w.contains([1, 0, 0])
    assert u.to_field(GF).dim == 2
    assert u.intersect(v).to_field(GF) == u.to_field(GF).intersect(v.to_field(GF))
    with pytest.raises(ValueError):
        u + Subspace.zero(4)


def test_left_kernel_and_transpose():
    m = [[1, 2], [2, 4], [0, 1]]
    lk = left_kernel(m, QQ)
    assert lk.dim == 1
    assert transpose(transpose(m)) == m


def test_maximal_minor_scan_finds_vanishing_minor():
    m = [[1, 0], [0, 1], [1, 1], [2, 2]]
    scan = all_maximal_minors_nonzero(m)
    assert not scan
    assert scan.witness == (2, 3)
    good = all_maximal_minors_nonzero([[1, 0], [0, 1], [1, 1], [1, 2]])
    assert good and good.checked == good.total == 6


def test_certified_rank_falls_back_to_exact_when_prime_divides():
    p = GF.p
    m = [[p, 0], [0, 1]]
    cert = certified_rank(m)
    assert cert.rank == 2
    assert np.asarray(rank(m, GF)) == 1
