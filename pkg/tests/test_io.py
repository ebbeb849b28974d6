import pytest

from bocskit import io as bio
from bocskit.bocs import classify_bocs, construct_bocs
from bocskit.burt_butler import right_algebra, standard_check
from bocskit.quiver import (example_a2, example_dual_numbers,
                            example_jordan3, example_semisimple_pair)


@pytest.fixture(scope="module")
def fixture_algebras():
    return {
        "e0": (example_semisimple_pair(), [1, 2]),
        "e1": (example_dual_numbers(), [1]),
        "e2": (example_a2(), [1, 2]),
        "e3": (example_jordan3(), [1]),
    }


def test_algebra_roundtrip(fixture_algebras):
    for name, (alg, order) in fixture_algebras.items():
        doc = bio.algebra_to_doc(alg, order)
        text = bio.emit(doc)
        parsed = bio.parse(text)
        assert isinstance(parsed, bio.AlgebraDocument)
        alg2, order2 = parsed.build()
        assert order2 == order
        assert alg2.dim == alg.dim
        assert bio.emit(bio.algebra_to_doc(alg2, order2)) == text


def test_emit_is_deterministic(fixture_algebras):
    alg, order = fixture_algebras["e2"]
    a = bio.emit(bio.algebra_to_doc(alg, order))
    b = bio.emit(bio.algebra_to_doc(example_a2(), [1, 2]))
    assert a == b
    assert bio.algebra_digest(bio.algebra_to_doc(alg, order)) == \
        bio.algebra_digest(bio.algebra_to_doc(example_a2(), [1, 2]))


def test_bocs_roundtrip_supports_category_and_classification():
    b = construct_bocs(example_a2(), mode="delta", r_max=5)
    doc = bio.bocs_to_doc(b)
    text = bio.emit(doc)
    parsed = bio.parse(text)
    assert isinstance(parsed, bio.BocsDocument)
    b2 = parsed.build()
    assert bio.emit(bio.bocs_to_doc(b2)) == text
    assert classify_bocs(b2).label == "directed"
    r = right_algebra(b2)
    assert r.R.dim == 3
    assert standard_check(r)["ok"]


def test_bocs_roundtrip_one_cyclic():
    b = construct_bocs(example_jordan3(), mode="pdelta", r_max=5)
    doc = bio.bocs_to_doc(b)
    assert doc["bocs_class"] == "one-cyclic directed"
    b2 = bio.parse(bio.emit(doc)).build()
    assert classify_bocs(b2).label == "one-cyclic directed"
    assert right_algebra(b2).R.dim == 3


def test_parse_reads_files(tmp_path, fixture_algebras):
    alg, order = fixture_algebras["e1"]
    path = tmp_path / "e1.json"
    path.write_text(bio.emit(bio.algebra_to_doc(alg, order)))
    parsed = bio.parse(str(path))
    alg2, _ = parsed.build()
    assert alg2.dim == 2


def test_parse_error_reports_position():
    with pytest.raises(ValueError, match=r"parse error at line \d+ column \d+"):
        bio.parse('{"schema": "bocskit/algebra", ')


def test_unknown_version_rejected():
    with pytest.raises(ValueError, match="unknown version"):
        bio.parse('{"schema": "bocskit/algebra", "version": 99}')


def test_schema_violations_carry_pointers(fixture_algebras):
    alg, order = fixture_algebras["e2"]
    good = bio.algebra_to_doc(alg, order)

    bad = dict(good)
    bad["schema"] = "bocskit/unknown"
    with pytest.raises(ValueError, match="schema violation at /schema"):
        bio.parse(bio.emit(bad))

    bad = dict(good)
    bad["order"] = [1, 1]
    with pytest.raises(ValueError, match="schema violation at /order"):
        bio.doc_to_algebra(bad)

    bad = dict(good)
    bad["arrows"] = [{"name": "a", "source": 1, "target": 5}]
    with pytest.raises(ValueError,
                       match="schema violation at /arrows/0/target"):
        bio.doc_to_algebra(bad)

    bad = dict(good)
    bad["relations"] = [{"terms": [{"coefficient": "x", "path": ["a"]}]}]
    with pytest.raises(ValueError, match="schema violation at /relations"):
        bio.doc_to_algebra(bad)


def test_bocs_document_validation():
    b = construct_bocs(example_dual_numbers(), mode="pdelta", r_max=5)
    good = bio.bocs_to_doc(b)
    bad = dict(good)
    bad["mode"] = "other"
    with pytest.raises(ValueError, match="schema violation at /mode"):
        bio.doc_to_bocs(bad)
    bad = dict(good)
    bad["w_block"] = [[1, 9] for _ in good["w_block"]]
    with pytest.raises(ValueError, match="schema violation at /w_block"):
        bio.doc_to_bocs(bad)
