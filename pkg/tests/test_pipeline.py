import pytest

from bocskit import io as bio
from bocskit.bocs import construct_bocs
from bocskit.pipeline import (PipelineError, indecomposables_up_to,
                              roundtrip_bocs, run_pipeline)
from bocskit.quiver import (Quiver, RelationSet, build_algebra, example_a2,
                            example_dual_numbers, example_jordan3,
                            example_semisimple_pair)


@pytest.fixture(scope="module")
def reports():
    out = {}
    out["e0"] = run_pipeline(example_semisimple_pair(), mode="pdelta")
    out["e1"] = run_pipeline(example_dual_numbers(), mode="pdelta")
    out["e2"] = run_pipeline(example_a2(), mode="delta")
    out["e3"] = run_pipeline(example_jordan3(), mode="pdelta")
    return out


def test_fixture_pipelines_pass(reports):
    for name, rep in reports.items():
        assert rep.ok, name
        verdicts = rep.doc["verdicts"]
        assert verdicts["morita_compare"]["verdict"] == "isomorphic"
        assert verdicts["standard_check"]["ok"]
        assert verdicts["homological_check"]["ok"]


def test_fixture_bocs_classes(reports):
    assert reports["e1"].doc["bocs"]["bocs_class"] == "one-cyclic directed"
    assert reports["e3"].doc["bocs"]["bocs_class"] == "one-cyclic directed"
    assert reports["e2"].doc["bocs"]["bocs_class"] == "directed"
    assert reports["e0"].doc["bocs"]["bocs_class"] == "directed"


def test_fixture_right_algebra_dims(reports):
    assert reports["e1"].doc["right_algebra"]["dim"] == 2
    assert reports["e3"].doc["right_algebra"]["dim"] == 3
    assert reports["e2"].doc["right_algebra"]["dim"] == 3
    assert reports["e0"].doc["right_algebra"]["dim"] == 2


def test_reports_are_byte_identical(reports):
    again = run_pipeline(example_dual_numbers(), mode="pdelta")
    assert again.emit() == reports["e1"].emit()
    parsed = bio.parse(reports["e1"].emit())
    assert isinstance(parsed, bio.ReportDocument)
    assert bio.emit(parsed.doc) == reports["e1"].emit()


def test_timing_not_in_canonical_emit(reports):
    rep = reports["e2"]
    assert rep.timing
    assert "timing" not in rep.doc


def test_mode_not_admitted_fails_with_stage():
    # a two-cycle with rad^2 = 0 is not filtered in either mode
    from bocskit.quiver import Relation
    q = Quiver(2, [("a", 1, 2), ("b", 2, 1)])
    rels = RelationSet(q, [Relation(q, [(1, 1, ("a", "b"))]),
                           Relation(q, [(1, 2, ("b", "a"))])])
    alg = build_algebra(q, rels)
    with pytest.raises(PipelineError, match="mode not admitted") as exc:
        run_pipeline(alg, mode="pdelta")
    assert exc.value.stage == "classify"
    assert exc.value.error_object()["stage"] == "classify"


def test_indecomposables_enumeration():
    assert [list(M.dims) for M in
            indecomposables_up_to(example_dual_numbers(), 4)] == [[1], [2]]
    assert [list(M.dims) for M in
            indecomposables_up_to(example_jordan3(), 4)] == [[1], [2], [3]]
    assert [list(M.dims) for M in
            indecomposables_up_to(example_a2(), 4)] == \
        [[0, 1], [1, 0], [1, 1]]
    # the bound trims the list
    assert [list(M.dims) for M in
            indecomposables_up_to(example_jordan3(), 2)] == [[1], [2]]


def test_roundtrip_bocs_reingested_identical():
    b = construct_bocs(example_dual_numbers(), mode="pdelta", r_max=5)
    rep = roundtrip_bocs(b)
    b2 = bio.doc_to_bocs(bio.bocs_to_doc(b))
    rep2 = roundtrip_bocs(b2)
    assert rep.emit() == rep2.emit()
    assert rep.doc["right_algebra"]["dim"] == 2


def test_roundtrip_bocs_hand_authored_shape():
    q = Quiver(2, [("a", 2, 1)])
    alg = build_algebra(q, RelationSet(q, []))
    b = construct_bocs(alg, mode="delta", r_max=4)
    assert b.d == {(2, 1): 1}
    rep = roundtrip_bocs(b)
    assert rep.doc["right_algebra"]["dim"] == 3
    assert rep.doc["classification"] in (
        "quasi-hereditary", "delta-and-pdelta-filtered", "pdelta-filtered")


def test_roundtrip_bocs_trivial():
    b = construct_bocs(example_semisimple_pair(), mode="pdelta", r_max=4)
    rep = roundtrip_bocs(b)
    assert rep.doc["right_algebra"]["dim"] == 2
    assert rep.doc["bocs"]["d"] == []
