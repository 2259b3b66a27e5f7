"""Spans, cospans, comma and cocomma objects, and exact squares.

A span ``A <-p- W -q-> B`` represents the relation
``{(a, b) | a <= p(w) and q(w) <= b for some w}``; a cospan
``A -j-> C <-k- B`` represents ``{(a, b) | j(a) <= k(b)}``.
"""
from typing import Iterator, NamedTuple

import numpy as np

from .errors import NotLaxCommuting, TypeMismatch
from .poset import (MonotoneMap, Poset, all_maps, bool_matmul, classify_map,
                    compose, pair_name, reflect_preorder, subposet,
                    transitive_closure)
from .relations import WeakRel


class Span(NamedTuple):
    left: MonotoneMap
    right: MonotoneMap

    @property
    def apex(self) -> Poset:
        return self.left.dom

    @property
    def source(self) -> Poset:
        return self.left.cod

    @property
    def target(self) -> Poset:
        return self.right.cod


class Cospan(NamedTuple):
    left: MonotoneMap
    right: MonotoneMap

    @property
    def apex(self) -> Poset:
        return self.left.cod

    @property
    def source(self) -> Poset:
        return self.left.dom

    @property
    def target(self) -> Poset:
        return self.right.dom


def make_span(left: MonotoneMap, right: MonotoneMap) -> Span:
    if left.dom != right.dom:
        raise TypeMismatch("span legs must share their domain")
    return Span(left, right)


def make_cospan(left: MonotoneMap, right: MonotoneMap) -> Cospan:
    if left.cod != right.cod:
        raise TypeMismatch("cospan legs must share their codomain")
    return Cospan(left, right)


class Square(NamedTuple):
    """``j p <= k q`` where ``(p, q)`` is the span and ``(j, k)`` the cospan."""
    span: Span
    cospan: Cospan


def lax_violation(span: Span, cospan: Cospan) -> str | None:
    p, q = span
    j, k = cospan
    c = cospan.apex
    bad = ~c.le[j.idx[p.idx], k.idx[q.idx]]
    if bad.any():
        return span.apex.elements[int(np.flatnonzero(bad)[0])]
    return None


def make_square(span: Span, cospan: Cospan) -> Square:
    if span.source != cospan.source or span.target != cospan.target:
        raise TypeMismatch("span and cospan do not share their feet")
    w = lax_violation(span, cospan)
    if w is not None:
        raise NotLaxCommuting(f"square does not commute laxly at {w!r}", witness=w)
    return Square(span, cospan)


def rel_of_span(s: Span) -> WeakRel:
    p, q = s
    down = s.source.le[:, p.idx]  # a <= p(w)
    up = s.target.le[q.idx, :]  # q(w) <= b
    return WeakRel(s.source, s.target, bool_matmul(down, up), check=False)


def rel_of_cospan(c: Cospan) -> WeakRel:
    j, k = c
    return WeakRel(c.source, c.target, c.apex.le[np.ix_(j.idx, k.idx)], check=False)


def graph(r: WeakRel) -> Span:
    """Tabulate ``r``: apex is its set of pairs with the componentwise order."""
    rows, cols = np.nonzero(r.m)
    apex = Poset([pair_name(r.dom.elements[i], r.cod.elements[j]) for i, j in zip(rows, cols)],
                 r.dom.le[np.ix_(rows, rows)] & r.cod.le[np.ix_(cols, cols)], check=False)
    return Span(MonotoneMap(apex, r.dom, rows, check=False),
                MonotoneMap(apex, r.cod, cols, check=False))


def comma(c: Cospan) -> Span:
    return graph(rel_of_cospan(c))


def _cocomma_of(source: Poset, target: Poset, links: np.ndarray) -> Cospan:
    # preorder on L:A + R:B generated by both orders and the L->R links
    n, m = len(source), len(target)
    gen = np.zeros((n + m, n + m), dtype=bool)
    gen[:n, :n] = source.le
    gen[n:, n:] = target.le
    gen[:n, n:] = links
    names = ["L:" + a for a in source.elements] + ["R:" + b for b in target.elements]
    apex, cls = reflect_preorder(names, transitive_closure(gen))
    return Cospan(MonotoneMap(source, apex, cls[:n], check=False),
                  MonotoneMap(target, apex, cls[n:], check=False))


def cocomma(s: Span) -> Cospan:
    """Universal cospan ``(j, k)`` with ``j p <= k q``."""
    links = np.zeros((len(s.source), len(s.target)), dtype=bool)
    links[s.left.idx, s.right.idx] = True
    return _cocomma_of(s.source, s.target, links)


def collage(r: WeakRel) -> Cospan:
    return cocomma(graph(r))


def coinserter(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """Universal ``e: Y -> Q`` with ``e f <= e g``."""
    if f.dom != g.dom or f.cod != g.cod:
        raise TypeMismatch("coinserter needs a parallel pair")
    y = f.cod
    gen = y.le.copy()
    gen[f.idx, g.idx] = True
    quotient, cls = reflect_preorder(y.elements, transitive_closure(gen))
    return MonotoneMap(y, quotient, cls, check=False)


def inserter(j: MonotoneMap, k: MonotoneMap) -> MonotoneMap:
    """Inclusion of ``{x | j(x) <= k(x)}``."""
    if j.dom != k.dom or j.cod != k.cod:
        raise TypeMismatch("inserter needs a parallel pair")
    keep = [i for i in range(len(j.dom)) if j.cod.le[j.idx[i], k.idx[i]]]
    return MonotoneMap(subposet(j.dom, keep), j.dom, keep, check=False)


class Exactness(NamedTuple):
    exact: bool
    witness: tuple[str, str] | None


def is_exact(sq: Square) -> Exactness:
    """Exact when the span already produces every pair the cospan relates.

    The witness is the first pair ``(a, b)`` with ``j(a) <= k(b)`` that no
    apex element connects.
    """
    w = lax_violation(sq.span, sq.cospan)
    if w is not None:
        raise NotLaxCommuting(f"square does not commute laxly at {w!r}", witness=w)
    missing = rel_of_cospan(sq.cospan).m & ~rel_of_span(sq.span).m
    if missing.any():
        i, j = map(int, np.argwhere(missing)[0])
        return Exactness(False, (sq.span.source.elements[i], sq.span.target.elements[j]))
    return Exactness(True, None)


def span_comparison(s: Span) -> tuple[MonotoneMap, Span]:
    """The map from the apex of ``s`` into the apex of ``Comma(Cocomma(s))``."""
    closed = comma(cocomma(s))
    where = {(int(a), int(b)): t for t, (a, b) in enumerate(zip(closed.left.idx,
                                                               closed.right.idx))}
    idx = [where[int(a), int(b)] for a, b in zip(s.left.idx, s.right.idx)]
    return MonotoneMap(s.apex, closed.apex, idx), closed


def cospan_comparison(c: Cospan) -> tuple[MonotoneMap, Cospan]:
    """The map from the apex of ``Cocomma(Comma(c))`` into the apex of ``c``."""
    opened = cocomma(comma(c))
    idx = np.full(len(opened.apex), -1, dtype=np.intp)
    for leg, target in ((opened.left, c.left), (opened.right, c.right)):
        for src, cls in enumerate(leg.idx):
            image = target.idx[src]
            if idx[cls] >= 0 and idx[cls] != image:
                raise TypeMismatch("cocomma class has two different images")
            idx[cls] = image
    return MonotoneMap(opened.apex, c.apex, idx), opened


class SpanClass(NamedTuple):
    weakening_closed: bool
    embedding: bool
    graph: bool


class CospanClass(NamedTuple):
    bipartite: bool
    onto: bool
    collage: bool


def classify_span(s: Span) -> SpanClass:
    h, _ = span_comparison(s)
    surjective, embedding = classify_map(h)
    return SpanClass(surjective, embedding, surjective and embedding)


def classify_cospan(c: Cospan) -> CospanClass:
    h, _ = cospan_comparison(c)
    surjective, embedding = classify_map(h)
    return CospanClass(embedding, surjective, surjective and embedding)


def compose_spans(s: Span, t: Span) -> Span:
    """Compose through the comma object of the inner legs."""
    if s.target != t.source:
        raise TypeMismatch("spans do not compose")
    r, u = comma(Cospan(s.right, t.left))
    return Span(compose(s.left, r), compose(t.right, u))


def compose_cospans(c: Cospan, d: Cospan) -> Cospan:
    """Compose through the cocomma object of the inner legs."""
    if c.target != d.source:
        raise TypeMismatch("cospans do not compose")
    i, l = cocomma(Span(c.right, d.left))
    return Cospan(compose(i, c.left), compose(l, d.right))


def span_morphisms(s: Span, t: Span) -> Iterator[MonotoneMap]:
    """Maps ``h`` between apexes with ``t.left h = s.left`` and ``t.right h = s.right``."""
    for h in all_maps(s.apex, t.apex):
        if (np.array_equal(t.left.idx[h.idx], s.left.idx)
                and np.array_equal(t.right.idx[h.idx], s.right.idx)):
            yield h


def cospan_morphisms(c: Cospan, d: Cospan) -> Iterator[MonotoneMap]:
    """Maps ``h`` between apexes with ``h c.left = d.left`` and ``h c.right = d.right``."""
    for h in all_maps(c.apex, d.apex):
        if (np.array_equal(h.idx[c.left.idx], d.left.idx)
                and np.array_equal(h.idx[c.right.idx], d.right.idx)):
            yield h
