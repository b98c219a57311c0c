import json
from fractions import Fraction as F

import pytest

from prodviab import documents, viability
from prodviab.core import ValidationErrors, build_z_matrix


def test_parse_rational():
    assert documents.parse_rational("3/4") == F(3, 4)
    assert documents.parse_rational("-2") == F(-2)
    assert documents.parse_rational("+5/10") == F(1, 2)
    assert documents.parse_rational(7) == F(7)


@pytest.mark.parametrize(
    "bad", ["", "1.5", "1/2/3", "a", "1/-2", None, 1.5, "1/0", "2 / 3"]
)
def test_parse_rational_rejects(bad):
    with pytest.raises(documents.ParseError):
        documents.parse_rational(bad)


def test_round_trip(ex_cyclic_coherent, ex_incoherent_loop, ex_acyclic_cv):
    for sys in (ex_cyclic_coherent, ex_incoherent_loop, ex_acyclic_cv):
        doc = documents.system_to_document(sys)
        back = documents.system_from_document(json.loads(json.dumps(doc)))
        assert documents.system_to_document(back) == doc
        assert build_z_matrix(back).rows == build_z_matrix(sys).rows


def test_good_order_is_canonicalised():
    doc = {
        "goods": [
            {"id": "tool", "kind": "intermediate"},
            {"id": "bread", "kind": "consumption"},
        ],
        "plans": {
            "bread": {"output": "2", "inputs": {"tool": "1"}},
            "tool": {"output": "1", "inputs": {}},
        },
        "population": {"bread": 1, "tool": 1},
    }
    sys = documents.system_from_document(doc)
    assert sys.labels == ("bread", "tool")
    assert sys.ell_c == 1 and sys.ell_p == 1


def test_unknown_keys_rejected():
    doc = {
        "goods": [{"id": "x", "kind": "consumption"}],
        "plans": {"x": {"output": "1", "inputs": {}}},
        "population": {"x": 1},
        "extra": True,
    }
    with pytest.raises(documents.ParseError, match="unknown keys"):
        documents.system_from_document(doc)
    doc.pop("extra")
    doc["plans"]["x"]["note"] = "hi"
    with pytest.raises(documents.ParseError, match="unknown keys"):
        documents.system_from_document(doc)


@pytest.mark.parametrize(
    "mutate,message",
    [
        (lambda d: d.pop("goods"), "goods"),
        (lambda d: d["goods"].append({"id": "x", "kind": "consumption"}), "duplicate"),
        (lambda d: d["goods"][0].update(kind="other"), "kind"),
        (lambda d: d["plans"].pop("x"), "plans must cover"),
        (lambda d: d["plans"].update(y={"output": "1", "inputs": {}}), "plans must cover"),
        (lambda d: d["plans"]["x"]["inputs"].update(zz="1"), "unknown input"),
        (lambda d: d["population"].update(zz=1), "unknown good"),
        (lambda d: d["population"].update(x=0), "positive integer"),
        (lambda d: d["population"].update(x=True), "positive integer"),
    ],
)
def test_malformed_documents(mutate, message):
    doc = {
        "goods": [{"id": "x", "kind": "consumption"}],
        "plans": {"x": {"output": "1", "inputs": {}}},
        "population": {"x": 1},
    }
    mutate(doc)
    with pytest.raises(documents.ParseError, match=message):
        documents.system_from_document(doc)


def test_validation_errors_propagate():
    doc = {
        "goods": [{"id": "x", "kind": "consumption"}],
        "plans": {"x": {"output": "0", "inputs": {}}},
        "population": {"x": 1},
    }
    with pytest.raises(ValidationErrors):
        documents.system_from_document(doc)


def test_population_defaults_to_one():
    doc = {
        "goods": [{"id": "x", "kind": "consumption"}],
        "plans": {"x": {"output": "1", "inputs": {}}},
        "population": {},
    }
    sys = documents.system_from_document(doc)
    assert sys.population == (1,)


def test_report_document_is_json_serialisable(ex_viable_not_wcv):
    report = viability.classify(ex_viable_not_wcv)
    doc = documents.report_to_document(ex_viable_not_wcv, report)
    text = json.dumps(doc)
    parsed = json.loads(text)
    assert parsed["flags"]["v"]["verdict"] is True
    assert parsed["flags"]["wcv"]["verdict"] is False
    assert parsed["flags"]["wcv"]["witness"]["failing_vertex"] == "X"
    assert parsed["determinant"] == "4"


def test_report_document_witnesses(ex_cyclic_coherent, ex_incoherent_loop):
    r = viability.classify(ex_cyclic_coherent)
    doc = documents.report_to_document(ex_cyclic_coherent, r)
    assert doc["flags"]["acyclic"]["witness"]["cycle"] == ["X", "Y", "I"]
    assert doc["flags"]["acyclic"]["witness"]["product"] == "6"
    r2 = viability.classify(ex_incoherent_loop)
    doc2 = documents.report_to_document(ex_incoherent_loop, r2)
    assert doc2["flags"]["coherent"]["witness"]["conversion_cycle"] == [0, 1, 1, 0]
