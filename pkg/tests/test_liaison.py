import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from waringcert.certifier import EXPECTED_BETTI_12
from waringcert.fields import QQ, PrimeField
from waringcert.liaison import (LiftingError, NotProperError, ResidueFamily, Solver, certify_ci, cubic_complement,
                                euler_jacobi_system, jacobian_minors, orthogonal_to_piece, residue_form,
                                residue_kappa, singular_locus_empty)
from waringcert.pointsets import ideal_piece
from waringcert.poly import GradedForm

GF = PrimeField()


def _xs():
    return [GradedForm.variable(i) for i in range(5)]


def test_ci_certificate_and_rejection():
    x = _xs()
    gens = [x[1] * x[1] - x[0] * x[0], x[2] * x[2] - x[0] * x[0], x[3] * x[3] - x[0] * x[0],
            x[4] * x[4] * x[4] - x[0] * x[0] * x[0]]
    ci = certify_ci(gens)
    assert ci.length == 24 and ci.socle_degree == 5
    assert singular_locus_empty(gens).smooth
    with pytest.raises(NotProperError):
        certify_ci([gens[0], gens[0], gens[1], gens[3]], retries=0)


def test_singular_complete_intersection_detected():
    x = _xs()
    # a double point: x1^2 with x2, x3, x4 meets at (1:0:0:0:0) with multiplicity two
    gens = [x[1] * x[1], x[2] * x[0], x[3] * x[0], x[4] * x[4] * x[0]]
    assert not singular_locus_empty(gens, max_degree=8).smooth


def test_jacobian_minors_of_coordinate_forms():
    x = _xs()
    minors = jacobian_minors(x[:4])
    assert sum(not m.is_zero() for m in minors) == 1


def test_residue_kappa_scales_with_the_point():
    x = _xs()
    gens = [x[1] * x[1] - x[0] * x[0], x[2] * x[2] - x[0] * x[0], x[3] * x[3] - x[0] * x[0],
            x[4] * x[4] * x[4] - x[0] * x[0] * x[0]]
    p = [1, 1, 1, 1, 1]
    k1 = residue_kappa(gens, p)
    k2 = residue_kappa(gens, [2] * 5)
    # kappa(tP) = t^(sum d_i - 5) kappa(P) with sum d_i - 5 = 4
    assert k2 == 16 * k1 and k1 != 0


def test_solver_is_linear_and_checked():
    rng = np.random.default_rng(0)
    m = rng.integers(0, 50, size=(6, 9)).astype(np.int64)
    m[5] = (m[0] + m[1]) % GF.p
    s = Solver(m, GF, seed=3)
    assert s.rank == 5
    y1 = (m @ rng.integers(0, 9, size=9)) % GF.p
    y2 = (m @ rng.integers(0, 9, size=9)) % GF.p
    x = s.solve(np.stack([y1, y2], axis=1))
    assert np.array_equal(s.solve((y1 + y2) % GF.p), (x[:, 0] + x[:, 1]) % GF.p)
    with pytest.raises(LiftingError):
        s.solve(np.eye(6, dtype=np.int64)[5])


@pytest.fixture(scope="module")
def family(nonid12):
    inst = nonid12[1]
    pts = inst.points
    quads = ideal_piece(pts, 2, QQ).forms()
    cubics, _, _ = cubic_complement(pts, quads, GF)
    return inst, ResidueFamily(pts, quads, cubics, GF), quads, cubics


def test_resolution_of_twelve_points(family):
    _, fam, _, cubics = family
    assert len(cubics) == 8
    assert fam.resolution.betti == EXPECTED_BETTI_12
    assert all(fam.resolution.exactness)


def test_mateqns_kernel_invariance(family):
    inst, fam, _, _ = family
    systems = [fam.build_mateqns(inst.form, s) for s in fam.splittings]
    assert [s.rank for s in systems] == [7, 7]
    assert systems[0].kernel == systems[1].kernel
    assert systems[0].raw_rows == 40


def test_residue_route_agrees(family):
    inst, fam, quads, cubics = family
    ej = euler_jacobi_system(inst.weights, list(inst.points), quads, cubics)
    assert ej.rank == 8
    lam = ej.kernel[0][:8]
    k = next(i for i, v in enumerate(lam) if v)
    mod = np.array([GF.reduce(v / lam[k]) for v in lam], dtype=np.int64)
    mat = fam.build_mateqns(inst.form, 0)
    assert mat.kernel.contains(mod)
    assert orthogonal_to_piece(inst.form, fam.residue_piece(mod, 4))


@given(st.lists(st.integers(1, GF.p - 1), min_size=8, max_size=8))
@settings(max_examples=20, deadline=None)
def test_random_cubics_fail_the_oracle(family, lam):
    inst, fam, _, _ = family
    mat = fam.build_mateqns(inst.form, 0)
    vec = np.array(lam, dtype=np.int64)
    if mat.kernel.contains(vec):
        return
    assert not orthogonal_to_piece(inst.form, fam.residue_piece(vec, 4))


def test_residue_form_lies_in_both_spans(family):
    inst, _, quads, _ = family
    gens = quads + [GradedForm(3, [QQ(c) for c in inst.data["cubic"]])]
    t, w = residue_form(gens, list(inst.points))
    assert t.scale(inst.weights[0] / w[0]) == inst.form
