from fractions import Fraction

import numpy as np
import pytest

from waringcert.extract import (FloatForm, NumericFailure, conjugate_pairing, extract_points, match_points,
                                normalize_points, numeric_weights, scaled_floats, second_decomposition_12,
                                second_decomposition_13)
from waringcert.fields import QQ
from waringcert.pointsets import PointSet, ideal_piece
from waringcert.poly import GradedForm


def test_two_rational_points_are_recovered():
    pts = PointSet([[1, 2, 0, -1, 3], [2, -1, 1, 1, 0]])
    gens = ideal_piece(pts, 1, QQ).forms() + ideal_piece(pts, 2, QQ).forms()
    ext = extract_points(gens, 2)
    truth = normalize_points(np.array([[1, 2, 0, -1, 3], [2, -1, 1, 1, 0]], dtype=float))
    got = ext.points
    idx = match_points(got, truth, tol=1e-12)
    assert sorted(idx) == [0, 1]
    assert ext.residual < 1e-12


def test_clustered_spectrum_is_reported():
    # a double point: the scheme x1^2, x2, x3, x4 has length 2 but one support point
    gens = [GradedForm.monomial((0, 0, 1, 0, 0)), GradedForm.monomial((0, 0, 0, 1, 0)),
            GradedForm.monomial((0, 0, 0, 0, 1)), GradedForm.monomial((0, 2, 0, 0, 0))]
    with pytest.raises(NumericFailure) as exc:
        extract_points(gens, 2)
    assert exc.value.code == "NUMERIC_FAILURE"


def test_scaled_floats_handle_huge_rationals():
    big = [Fraction(3**4000, 7**3000), Fraction(-(3**4000), 7**3000 * 2)]
    x = scaled_floats(big)
    assert np.all(np.isfinite(x)) and x[0] == pytest.approx(-2 * x[1])


def test_conjugate_pairing():
    p = np.array([[1, 1j, 0, 0, 0], [1, -1j, 0, 0, 0], [1, 2, 3, 4, 5]])
    assert conjugate_pairing(p)
    assert not conjugate_pairing(p[:2] * np.array([[1], [1j]]) + np.array([[0, 0, 1, 0, 0], [0, 0, 0, 0, 0]]))


def test_numeric_weights_recover_the_expression(twelve):
    pts = np.array([[float(c) for c in p.coords] for p in twelve.points])
    w, res = numeric_weights(twelve.form, pts)
    # weights refer to unit-max points and a unit-max form: equal weights up to those scalings
    ratio = w / np.max(np.abs(pts), axis=1) ** 4
    assert res < 1e-12
    assert np.allclose(ratio / ratio[0], 1.0, rtol=1e-8)


def test_second_decomposition_twelve(nonid12, nonid12_verdicts):
    for s, inst in nonid12.items():
        sd = second_decomposition_12(inst.decomposition, nonid12_verdicts[s].witness)
        assert sd.ok()
        assert len(sd.points) == 12 and sd.generator_residual < 1e-8
        assert not match_points(sd.points, normalize_points(np.array(
            [scaled_floats(p.coords) for p in inst.points])), tol=1e-6)


def test_second_decomposition_thirteen(nonid13):
    sd = second_decomposition_13(nonid13.decomposition, nonid13.data)
    assert sd.ok() and len(sd.points) == 13


def test_float_form_is_scaled_to_unit_max():
    f = FloatForm.of(GradedForm.monomial((1, 0, 0, 0, 0), 3) + GradedForm.monomial((0, 1, 0, 0, 0), 4))
    assert np.max(np.abs(f.coeffs)) == 1.0 and f.norm == pytest.approx(1.25)
