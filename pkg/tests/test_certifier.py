import json

import pytest

from waringcert import constructor
from waringcert.certifier import (CANNOT_HANDLE, IDENTIFIABLE, INCONCLUSIVE, NOT_IDENTIFIABLE, RANK_CERTIFIED,
                                  UNDETERMINED, certify, certify_12)
from waringcert.decomposition import Decomposition, InputError, NotInSpanError, recover_weights


@pytest.mark.parametrize("r", [5, 8, 9, 10, 11])
def test_generic_expressions_are_identifiable(r):
    v = certify(constructor.generic_instance(r, 20 + r).decomposition)
    assert (v.rank_status, v.rank, v.identifiability) == (RANK_CERTIFIED, r, IDENTIFIABLE)


def test_twelve_point_example(twelve_verdict):
    v = twelve_verdict
    assert v.summary() == "RANK_CERTIFIED(12) + IDENTIFIABLE"
    ft = v.evidence["final_test"]
    assert ft["mateqns"]["rank"] == [8, 8] and ft["mateqns"]["kernel_invariant"]
    assert ft["residue_system"]["rank"] == 9


def test_verdict_is_json_serializable(twelve_verdict):
    text = json.dumps(twelve_verdict.to_dict(), sort_keys=True)
    assert json.loads(text)["identifiability"] == IDENTIFIABLE


def test_nonidentifiable_twelve(nonid12_verdicts):
    for v in nonid12_verdicts.values():
        assert v.identifiability == NOT_IDENTIFIABLE
        assert v.evidence["final_test"]["oracle"]["confirmed"]
        assert v.witness["residue_hilbert"] == [1, 5, 12, 12, 12]


def test_special_position_is_not_certified():
    pts = list(constructor.random_points(11, 9).points)
    pts.append([a + b for a, b in zip(pts[0].coords, pts[1].coords)])
    v = certify(Decomposition.build(pts, [1] * 12))
    assert v.rank_status == INCONCLUSIVE and v.identifiability == CANNOT_HANDLE


def test_range_and_input_checks():
    with pytest.raises(InputError):
        certify(constructor.generic_instance(14, 1).decomposition)
    with pytest.raises(InputError):
        certify_12(constructor.generic_instance(11, 1).decomposition)
    with pytest.raises(InputError):
        Decomposition.build([[1, 0, 0, 0, 0]], [0])
    with pytest.raises(InputError):
        Decomposition.build([[1, 0, 0, 0, 0]], [1, 2])


def test_weight_recovery(twelve):
    assert recover_weights(twelve.form, twelve.points) == [1] * 12
    other = Decomposition.build(constructor.random_points(12, 5), [1] * 12)
    with pytest.raises(NotInSpanError) as exc:
        recover_weights(other.form, twelve.points)
    assert exc.value.rank_augmented == 13


def test_per_point_reduction(nondisjoint13_verdict, generic13_verdict):
    v = nondisjoint13_verdict
    assert v.identifiability == NOT_IDENTIFIABLE and v.witness["removed_point"] == 12
    flagged = [s["removed"] for s in v.evidence["subproblems"] if s["identifiability"] == NOT_IDENTIFIABLE]
    assert flagged == [12]
    assert generic13_verdict.rank_status == RANK_CERTIFIED
    assert generic13_verdict.identifiability == UNDETERMINED


def test_kernel_invariance_on_every_subproblem(nondisjoint13_verdict, generic13_verdict):
    for v in (nondisjoint13_verdict, generic13_verdict):
        for s in v.evidence["subproblems"]:
            assert s["kernel_invariant"] is True
