import json

import pytest
from hypothesis import given, settings

from ordrel.dot import export_dot
from ordrel.duality import check_extension_preconditions, dual_rel_formula, space_duality
from ordrel.errors import (AntisymmetryViolation, NotMonotone, NotWeakeningClosed,
                           SchemaError, UnsupportedDocument)
from ordrel.io import Report, dump, parse, parse_many, serialize, serialize_many
from ordrel.lattice import DLSpan, chain_dl, validate_dl_morphism
from ordrel.poset import chain, identity_map
from ordrel.relations import empty_rel, identity_rel, total_rel
from ordrel.spans import cocomma, collage, comma, graph, make_square

from conftest import posets, relations


def roundtrip(doc):
    text = serialize(doc)
    again = parse(text)
    assert serialize(again) == text
    return again


def test_poset_emits_covers():
    text = json.dumps({"type": "poset", "elements": ["0", "1", "2"],
                       "le": [["0", "2"], ["0", "1"], ["1", "2"]]})
    doc = json.loads(serialize(parse(text)))
    assert doc["le"] == [["0", "1"], ["1", "2"]]
    assert parse(text) == chain(3)


def test_open_relation_is_closed():
    c2 = json.loads(serialize(chain(2)))
    text = json.dumps({"type": "rel", "dom": c2, "cod": c2, "pairs": [["1", "0"]],
                       "closed": False})
    doc = json.loads(serialize(parse(text)))
    assert doc["closed"] is True and len(doc["pairs"]) == 4
    with pytest.raises(NotWeakeningClosed):
        parse(text.replace("false", "true"))


def test_malformed_pair_path():
    c2 = json.loads(serialize(chain(2)))
    text = json.dumps({"type": "rel", "dom": c2, "cod": c2, "pairs": [["a"]]})
    with pytest.raises(SchemaError) as e:
        parse(text)
    assert e.value.path == "pairs[0]"


@pytest.mark.parametrize("obj, path", [
    ({"type": "poset", "elements": ["a", 3]}, "elements[1]"),
    ({"type": "poset", "elements": ["a"], "le": [["a", "b"]]}, "le[0][1]"),
    ({"type": "poset", "elements": ["a", "a"]}, "elements"),
    ({"type": "nope"}, "type"),
    ({"type": "map", "dom": {"type": "poset", "elements": ["a"]},
      "cod": {"type": "poset", "elements": ["b"]}, "graph": {"a": "c"}}, "graph.a"),
    ({"type": "span", "left": {"type": "poset", "elements": []}}, "left.type"),
])
def test_schema_paths(obj, path):
    with pytest.raises(SchemaError) as e:
        parse(json.dumps(obj))
    assert e.value.path == path


def test_semantic_errors_surface():
    with pytest.raises(AntisymmetryViolation):
        parse(json.dumps({"type": "poset", "elements": ["a", "b"],
                          "le": [["a", "b"], ["b", "a"]]}))
    c2 = json.loads(serialize(chain(2)))
    with pytest.raises(NotMonotone):
        parse(json.dumps({"type": "map", "dom": c2, "cod": c2,
                          "graph": {"0": "1", "1": "0"}}))


def test_invalid_json():
    with pytest.raises(SchemaError):
        parse("{")


def test_every_document_kind_roundtrips():
    c2, c3 = chain(2), chain(3)
    r = identity_rel(c2)
    a = chain_dl(["0", "a", "1"])
    two = chain_dl(["0", "1"])
    q = validate_dl_morphism(a, two, {"0": "0", "a": "0", "1": "1"})
    ident = validate_dl_morphism(a, a, {e: e for e in a.elements})
    g = graph(r)
    docs = [c2, a, identity_map(c3), q, r, dual_rel_formula(r), g, collage(r),
            DLSpan(ident, q), make_square(g, cocomma(g)),
            Report(tuple(check_extension_preconditions(space_duality(4), "space", 1, 1)))]
    for doc in docs:
        back = roundtrip(doc)
        assert type(back) is type(doc) or isinstance(back, type(doc))
    assert parse(serialize(r)) == r
    assert parse(serialize(q)) == q


def test_unicode_names_are_kept():
    text = serialize(chain(2, ["α", "β"]))
    assert "α" in text and "\\u" not in text


def test_parse_many():
    docs = parse_many(serialize_many([chain(2), chain(3)]))
    assert docs == [chain(2), chain(3)]
    with pytest.raises(SchemaError) as e:
        parse_many('[{"type": "poset", "elements": [1]}]')
    assert e.value.path == "[0].elements[0]"


def test_bare_report_array():
    rep = parse('[{"check": "c", "instance": "i", "pass": true}]')
    assert rep.passed and dump(rep)["entries"][0]["witness"] is None


@settings(max_examples=60, deadline=None)
@given(posets(5))
def test_poset_roundtrip(p):
    assert roundtrip(p) == p


@settings(max_examples=60, deadline=None)
@given(relations())
def test_relation_roundtrip(r):
    assert roundtrip(r) == r
    assert roundtrip(graph(r)) == graph(r)
    assert roundtrip(collage(r)) == collage(r)


def edges(text):
    lines = [ln for ln in text.splitlines() if "->" in ln]
    solid = [ln for ln in lines if "dashed" not in ln]
    dashed = [ln for ln in lines if "dashed" in ln]
    return solid, dashed


def test_dot_chain():
    text = export_dot(chain(3))
    assert text.startswith("digraph") and text.rstrip().endswith("}")
    assert len(edges(text)[0]) == 2


def test_dot_identity_collage():
    solid, dashed = edges(export_dot(identity_rel(chain(2))))
    assert len(solid) == 2 and len(dashed) == 2
    assert '"A:0" -> "B:0" [style=dashed];' in "\n".join(dashed)


def test_dot_empty_relation():
    solid, dashed = edges(export_dot(empty_rel(chain(2), chain(3))))
    assert len(solid) == 3 and not dashed


def test_dot_total_relation_keeps_one_cross_edge():
    _, dashed = edges(export_dot(total_rel(chain(2), chain(2))))
    assert dashed == ['  "A:1" -> "B:0" [style=dashed];']


def test_dot_span_and_cospan():
    r = identity_rel(chain(2))
    assert edges(export_dot(graph(r))) == edges(export_dot(r))
    assert edges(export_dot(comma(collage(r)))) == edges(export_dot(collage(r)))


def test_dot_quotes_names():
    text = export_dot(chain(2, ['a"b', "c"]))
    assert '"a\\"b" -> "c";' in text


def test_dot_rejects_maps():
    with pytest.raises(UnsupportedDocument):
        export_dot(identity_map(chain(2)))
    with pytest.raises(UnsupportedDocument):
        export_dot(Report(()))
