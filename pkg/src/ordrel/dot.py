"""Graphviz DOT rendering of posets and relations.

Posets become Hasse diagrams drawn bottom to top. A relation ``R: A -> B``
is drawn as its collage: ``A`` and ``B`` side by side with their own Hasse
edges solid, and a dashed edge ``a -> b`` for each cross pair that is a
cover in the collage order, i.e. the pairs of ``R`` not implied by others.
"""
import numpy as np

from .errors import UnsupportedDocument
from .lattice import DLCospan, DLRel, DLSpan, FinDL
from .poset import Poset, bool_matmul
from .relations import WeakRel
from .spans import Cospan, Span, rel_of_cospan, rel_of_span


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _cover_matrix(le: np.ndarray) -> np.ndarray:
    strict = le & ~np.eye(len(le), dtype=bool)
    return strict & ~bool_matmul(strict, strict)


def hasse_dot(p: Poset, name: str = "poset") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for e in p.elements:
        lines.append(f"  {_quote(e)};")
    for a, b in p.covers():
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def collage_dot(r: WeakRel, name: str = "collage") -> str:
    x, y = r.dom, r.cod
    n, m = len(x), len(y)
    le = np.zeros((n + m, n + m), dtype=bool)
    le[:n, :n] = x.le
    le[n:, n:] = y.le
    le[:n, n:] = r.m
    cov = _cover_matrix(le)
    ids = [_quote("A:" + a) for a in x.elements] + [_quote("B:" + b) for b in y.elements]
    labels = list(x.elements) + list(y.elements)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for tag, lo, hi in (("A", 0, n), ("B", n, n + m)):
        lines.append(f"  subgraph {_quote('cluster_' + tag)} {{")
        lines.append(f"    label={_quote(tag)};")
        for i in range(lo, hi):
            lines.append(f"    {ids[i]} [label={_quote(labels[i])}];")
        lines.append("  }")
    for i, j in np.argwhere(cov):
        style = "dashed" if i < n <= j else "solid"
        lines.append(f"  {ids[i]} -> {ids[j]} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(doc) -> str:
    """DOT text for a poset, lattice, relation, span or cospan."""
    if isinstance(doc, FinDL):
        doc = doc.carrier
    if isinstance(doc, DLRel):
        doc = doc.rel
    if isinstance(doc, DLSpan):
        doc = doc.span
    if isinstance(doc, DLCospan):
        doc = doc.cospan
    if isinstance(doc, Poset):
        return hasse_dot(doc)
    if isinstance(doc, WeakRel):
        return collage_dot(doc)
    if isinstance(doc, Span):
        return collage_dot(rel_of_span(doc), "span")
    if isinstance(doc, Cospan):
        return collage_dot(rel_of_cospan(doc), "cospan")
    raise UnsupportedDocument(f"no DOT rendering for {type(doc).__name__}")
