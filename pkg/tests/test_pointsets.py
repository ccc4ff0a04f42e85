import pytest
from hypothesis import given, settings, strategies as st

from waringcert.fields import QQ, PrimeField
from waringcert.pointsets import (InverseSystem, PointSet, base_locus, cayley_bacharach, cb_inequality,
                                  ci_socle_degree, colon_piece, hilbert_data, ideal_piece, koszul_hvector,
                                  linkage_hvector, min_generator_count, regularity_degree)
from waringcert.poly import GradedForm, dim_graded

GF = PrimeField()


@pytest.mark.parametrize("r", [9, 10, 11, 12, 13])
def test_generic_hilbert_function(generic_points, r):
    hd = hilbert_data(generic_points[r], 4, GF)
    assert hd.first_difference[:3] == [1, 4, r - 5]
    assert hd.values[3] == r


@pytest.mark.parametrize("r,counts", [(9, (6, 0)), (10, (5, 0)), (11, (4, 4)), (12, (3, 8)), (13, (2, 12))])
def test_generator_counts(generic_points, r, counts):
    pts = generic_points[r]
    assert (min_generator_count(pts, 2, GF), min_generator_count(pts, 3, GF)) == counts


def test_ideal_piece_vanishes_on_points(generic_points):
    pts = generic_points[12]
    for f in ideal_piece(pts, 2, QQ).forms():
        assert all(f(p) == 0 for p in pts)
    assert regularity_degree(pts) == 3


def test_repeated_points_rejected():
    with pytest.raises(ValueError):
        PointSet([[1, 0, 0, 0, 0], [2, 0, 0, 0, 0]])


@pytest.mark.parametrize("degrees,expected", [((2, 2, 2, 3), [1, 4, 7, 7, 4, 1]),
                                               ((2, 2, 3, 3), [1, 4, 8, 10, 8, 4, 1]),
                                               ((2, 2, 2, 2), [1, 4, 6, 4, 1])])
def test_koszul_hvectors(degrees, expected):
    assert koszul_hvector(degrees) == expected
    assert sum(expected) == __import__("math").prod(degrees)


def test_koszul_partial_sum():
    assert sum(koszul_hvector((2, 2, 2, 3))[:5]) == 23


def test_linkage_formula():
    # twelve points in CI(2,2,2,3) and thirteen in CI(2,2,3,3)
    assert linkage_hvector([1, 4, 7, 7, 4, 1], [1, 4, 7], 5) == [1, 4, 7]
    assert linkage_hvector([1, 4, 8, 10, 8, 4, 1], [1, 4, 8], 6)[:3] == [1, 4, 8]
    with pytest.raises(ValueError):
        linkage_hvector([1, 4, 6, 4, 1], [1, 4, 7], 4)


degree_lists = st.lists(st.integers(1, 4), min_size=4, max_size=4)


@given(degree_lists)
@settings(max_examples=60, deadline=None)
def test_cb_inequality_holds_for_complete_intersections(degrees):
    hv = koszul_hvector(degrees)
    s = ci_socle_degree(degrees)
    i = s - 1
    for j in range(0, i + 2):
        assert cb_inequality(hv, i, j)


def test_cb_inequality_detects_failure():
    assert not cb_inequality([1, 4, 1], 2, 1)


def test_cayley_bacharach_on_small_sets():
    pts = PointSet([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]])
    assert not cayley_bacharach(pts, 1)
    four = PointSet([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [1, 1, 0, 0, 0], [1, 2, 0, 0, 0]])
    assert cayley_bacharach(four, 2)


def test_inverse_system_matches_direct_computation(generic_points):
    pts = generic_points[10]
    gens = ideal_piece(pts, 2, GF).forms()
    inv = InverseSystem(gens, GF)
    assert inv.hilbert_values(5) == [1, 5, 10, 10, 10, 10]
    assert all(inv.contains(f) for f in ideal_piece(pts, 3, GF).forms())


def test_base_locus_lengths(generic_points):
    assert base_locus(ideal_piece(generic_points[9], 2, GF), field=GF).length == 9
    assert base_locus(ideal_piece(generic_points[10], 2, GF), field=GF).length == 10
    assert base_locus(ideal_piece(generic_points[11], 2, GF), field=GF).length == 16
    curve = base_locus(ideal_piece(generic_points[12], 2, GF), field=GF)
    assert curve.describe() == "curve(8, 8t-4)"


def test_colon_recovers_the_residual_set(generic_points):
    # 24 points cut by four quadrics through 12 of them leave the other 12
    pts = generic_points[12]
    quads = ideal_piece(pts, 2, QQ).forms()
    from waringcert.liaison import cubic_complement
    cubics, _, _ = cubic_complement(pts, quads, GF)
    gens = quads + [cubics[0]]
    b3 = colon_piece(gens, pts, 3, field=GF)
    assert dim_graded(3) - b3.dim == 12
