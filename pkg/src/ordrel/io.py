"""JSON documents for every value the command line reads or writes.

Documents are JSON objects tagged by ``"type"``. Order pairs and relation
pairs on input are generators; on output posets list only their covers and
relations list every pair, both sorted by name, so that
``serialize(parse(serialize(x)))`` is byte-identical to ``serialize(x)``.
"""
import json
from typing import Any, NamedTuple

import numpy as np

from .errors import SchemaError, UnsupportedDocument
from .lattice import (DLCospan, DLMorphism, DLRel, DLSpan, FinDL, make_dl_rel,
                      validate_dl, validate_dl_morphism)
from .poset import MonotoneMap, Poset, validate_poset
from .relations import WeakRel, weakening_closure
from .spans import Cospan, Span, Square, make_cospan, make_span, make_square


class Report(NamedTuple):
    """A list of ``{check, instance, pass, witness}`` entries."""
    entries: tuple

    @property
    def passed(self) -> bool:
        return all(e["pass"] for e in self.entries)


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _field(obj: dict, key: str, path: str, kind=None):
    if key not in obj:
        raise SchemaError(path, f"missing field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(_join(path, key), f"expected {kind.__name__}")
    return value


def _names(items, path: str) -> list[str]:
    if not isinstance(items, list):
        raise SchemaError(path, "expected a list of names")
    for i, e in enumerate(items):
        if not isinstance(e, str):
            raise SchemaError(_join(path, i), "element names must be strings")
    return items


def _pairs(items, path: str, left, right) -> list[tuple[str, str]]:
    if not isinstance(items, list):
        raise SchemaError(path, "expected a list of pairs")
    out = []
    for i, pair in enumerate(items):
        where = _join(path, i)
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError(where, "a pair is a two-element list")
        a, b = pair
        if not (isinstance(a, str) and isinstance(b, str)):
            raise SchemaError(where, "pair entries must be element names")
        if a not in left:
            raise SchemaError(_join(where, 0), f"unknown element {a!r}")
        if b not in right:
            raise SchemaError(_join(where, 1), f"unknown element {b!r}")
        out.append((a, b))
    return out


def _check_type(obj, want: str, path: str):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected a JSON object")
    got = obj.get("type")
    if got != want:
        raise SchemaError(_join(path, "type"), f"expected {want!r}, got {got!r}")


def _load_poset(obj, path: str) -> Poset:
    _check_type(obj, "poset", path)
    elements = _names(_field(obj, "elements", path), _join(path, "elements"))
    if len(set(elements)) != len(elements):
        dup = next(e for e in elements if elements.count(e) > 1)
        raise SchemaError(_join(path, "elements"), f"duplicate element {dup!r}")
    known = set(elements)
    pairs = _pairs(obj.get("le", []), _join(path, "le"), known, known)
    return validate_poset(elements, pairs)


def _load_dl(obj, path: str) -> FinDL:
    if isinstance(obj, dict) and obj.get("type") == "poset":
        return validate_dl(_load_poset(obj, path))
    _check_type(obj, "dl", path)
    return validate_dl(_load_poset(_field(obj, "poset", path), _join(path, "poset")))


def _load_map(obj, path: str):
    _check_type(obj, "map", path)
    graph = _field(obj, "graph", path, dict)
    if obj.get("dl", False):
        dom = _load_dl(_field(obj, "dom", path), _join(path, "dom"))
        cod = _load_dl(_field(obj, "cod", path), _join(path, "cod"))
        _map_names(graph, dom.carrier, cod.carrier, _join(path, "graph"))
        return validate_dl_morphism(dom, cod, graph)
    dom = _load_poset(_field(obj, "dom", path), _join(path, "dom"))
    cod = _load_poset(_field(obj, "cod", path), _join(path, "cod"))
    _map_names(graph, dom, cod, _join(path, "graph"))
    return MonotoneMap.from_dict(dom, cod, graph)


def _map_names(graph: dict, dom: Poset, cod: Poset, path: str):
    for a in dom.elements:
        if a not in graph:
            raise SchemaError(path, f"no image given for {a!r}")
    for a, b in graph.items():
        if not isinstance(b, str):
            raise SchemaError(_join(path, a), "images must be element names")
        if a not in dom:
            raise SchemaError(_join(path, a), "not an element of the domain")
        if b not in cod:
            raise SchemaError(_join(path, a), f"image {b!r} is not in the codomain")


def _load_rel(obj, path: str):
    _check_type(obj, "rel", path)
    dl = obj.get("dl", False)
    load = _load_dl if dl else _load_poset
    dom = load(_field(obj, "dom", path), _join(path, "dom"))
    cod = load(_field(obj, "cod", path), _join(path, "cod"))
    x, y = (dom.carrier, cod.carrier) if dl else (dom, cod)
    pairs = _pairs(_field(obj, "pairs", path), _join(path, "pairs"), set(x), set(y))
    if obj.get("closed", True):
        r = WeakRel.from_pairs(x, y, pairs)
    else:
        r = weakening_closure(x, y, pairs)
    return make_dl_rel(dom, cod, r) if dl else r


def _load_legs(obj, kind: str, path: str):
    _check_type(obj, kind, path)
    left = _load_map(_field(obj, "left", path), _join(path, "left"))
    right = _load_map(_field(obj, "right", path), _join(path, "right"))
    if isinstance(left, DLMorphism) != isinstance(right, DLMorphism):
        raise SchemaError(path, "legs must both be lattice maps or both be monotone maps")
    if isinstance(left, DLMorphism):
        (make_span if kind == "span" else make_cospan)(left.map, right.map)
        return (DLSpan if kind == "span" else DLCospan)(left, right)
    return (make_span if kind == "span" else make_cospan)(left, right)


def _load_report(obj, path: str) -> Report:
    entries = obj if isinstance(obj, list) else _field(obj, "entries", path, list)
    base = path if isinstance(obj, list) else _join(path, "entries")
    for i, e in enumerate(entries):
        where = _join(base, i)
        if not isinstance(e, dict):
            raise SchemaError(where, "expected a JSON object")
        for key in ("check", "instance", "pass"):
            _field(e, key, where)
    return Report(tuple({"check": e["check"], "instance": e["instance"],
                         "pass": e["pass"], "witness": e.get("witness")} for e in entries))


def load(obj: Any, path: str = ""):
    """Turn decoded JSON into a library value."""
    if isinstance(obj, list):
        return _load_report(obj, path)
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected a JSON object")
    kind = obj.get("type")
    if kind == "poset":
        return _load_poset(obj, path)
    if kind == "dl":
        return _load_dl(obj, path)
    if kind == "map":
        return _load_map(obj, path)
    if kind == "rel":
        return _load_rel(obj, path)
    if kind in ("span", "cospan"):
        return _load_legs(obj, kind, path)
    if kind == "square":
        span = _load_legs(_field(obj, "span", path), "span", _join(path, "span"))
        cospan = _load_legs(_field(obj, "cospan", path), "cospan", _join(path, "cospan"))
        span = span.span if isinstance(span, DLSpan) else span
        cospan = cospan.cospan if isinstance(cospan, DLCospan) else cospan
        return make_square(span, cospan)
    if kind == "report":
        return _load_report(obj, path)
    raise SchemaError(_join(path, "type"), f"unknown document type {kind!r}")


def parse(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("", f"invalid JSON: {e}") from None
    return load(obj)


def parse_many(text: str) -> list:
    """A JSON array of documents (a bare report array is not accepted here)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("", f"invalid JSON: {e}") from None
    if isinstance(obj, dict):
        return [load(obj)]
    if not isinstance(obj, list):
        raise SchemaError("", "expected a document or an array of documents")
    return [load(o, f"[{i}]") for i, o in enumerate(obj)]


def _poset_doc(p: Poset) -> dict:
    return {"type": "poset", "elements": list(p.elements),
            "le": [list(c) for c in sorted(p.covers())]}


def _dl_doc(a: FinDL) -> dict:
    return {"type": "dl", "poset": _poset_doc(a.carrier)}


def _map_doc(f) -> dict:
    if isinstance(f, DLMorphism):
        doc = _map_doc(f.map)
        doc["dom"], doc["cod"] = _dl_doc(f.dom), _dl_doc(f.cod)
        doc["dl"] = True
        return doc
    return {"type": "map", "dom": _poset_doc(f.dom), "cod": _poset_doc(f.cod),
            "graph": {a: f(a) for a in f.dom.elements}}


def _rel_doc(r) -> dict:
    if isinstance(r, DLRel):
        doc = _rel_doc(r.rel)
        doc["dom"], doc["cod"] = _dl_doc(r.dom), _dl_doc(r.cod)
        doc["dl"] = True
        return doc
    return {"type": "rel", "dom": _poset_doc(r.dom), "cod": _poset_doc(r.cod),
            "pairs": [list(p) for p in sorted(r.pairs())], "closed": True}


def _plain(value):
    # witnesses may hold tuples, frozensets or numpy scalars
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, np.generic):
        return value.item()
    return value


def dump(doc) -> Any:
    """Library value to plain JSON data."""
    if isinstance(doc, Poset):
        return _poset_doc(doc)
    if isinstance(doc, FinDL):
        return _dl_doc(doc)
    if isinstance(doc, (MonotoneMap, DLMorphism)):
        return _map_doc(doc)
    if isinstance(doc, (WeakRel, DLRel)):
        return _rel_doc(doc)
    if isinstance(doc, (Span, DLSpan)):
        return {"type": "span", "left": _map_doc(doc.left), "right": _map_doc(doc.right)}
    if isinstance(doc, (Cospan, DLCospan)):
        return {"type": "cospan", "left": _map_doc(doc.left), "right": _map_doc(doc.right)}
    if isinstance(doc, Square):
        return {"type": "square", "span": dump(doc.span), "cospan": dump(doc.cospan)}
    if isinstance(doc, Report):
        return {"type": "report", "entries": [_plain(e) for e in doc.entries]}
    raise UnsupportedDocument(f"cannot serialize {type(doc).__name__}")


def _flat(value) -> bool:
    # scalars, pairs and lists of pairs stay on one line
    if isinstance(value, list):
        return all(not isinstance(v, (list, dict)) or
                   (isinstance(v, list) and all(not isinstance(w, (list, dict)) for w in v))
                   for v in value)
    return not isinstance(value, dict)


def _format(value, indent: int) -> str:
    if _flat(value):
        return json.dumps(value, ensure_ascii=False)
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(value, list):
        items = [inner + _format(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_format(v, indent + 1)}"
             for k, v in value.items()]
    return "{\n" + ",\n".join(items) + "\n" + pad + "}" if items else "{}"


def to_text(data) -> str:
    return _format(data, 0) + "\n"


def serialize(doc) -> str:
    return to_text(dump(doc))


def serialize_many(docs) -> str:
    return to_text([dump(d) for d in docs])
