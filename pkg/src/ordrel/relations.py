"""Weakening relations between posets.

A weakening relation ``R: A -> B`` is a boolean matrix that is downward closed
in ``A`` and upward closed in ``B``: if ``a R b``, ``a' <= a`` and ``b <= b'``
then ``a' R b'``. Equivalently an upset of ``A^op x B``.
"""
from typing import Iterable, Iterator

import numpy as np

from .config import check_size, current_limits
from .errors import CompositionMismatch, NotAdjoint, NotWeakeningClosed, TypeMismatch
from .poset import (MonotoneMap, Poset, bool_matmul, mask_positions, opposite,
                    product)


def _closed(dom: Poset, cod: Poset, m: np.ndarray) -> np.ndarray:
    return bool_matmul(bool_matmul(dom.le, m), cod.le)


class WeakRel:
    __slots__ = ("dom", "cod", "m", "_hash")

    def __init__(self, dom: Poset, cod: Poset, m: np.ndarray, check: bool = True):
        m = np.ascontiguousarray(np.asarray(m, dtype=bool).reshape(len(dom), len(cod)))
        m.setflags(write=False)
        self.dom = dom
        self.cod = cod
        self.m = m
        self._hash = None
        if check:
            missing = _closed(dom, cod, m) & ~m
            if missing.any():
                i, j = map(int, np.argwhere(missing)[0])
                raise NotWeakeningClosed(
                    f"pair ({dom.elements[i]}, {cod.elements[j]}) is forced by weakening "
                    "but missing", witness=(dom.elements[i], cod.elements[j]))

    @classmethod
    def from_pairs(cls, dom: Poset, cod: Poset, pairs: Iterable[tuple[str, str]]) -> "WeakRel":
        return cls(dom, cod, _pair_matrix(dom, cod, pairs))

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.dom.elements[i], self.cod.elements[j]) for i, j in np.argwhere(self.m)]

    def __contains__(self, pair) -> bool:
        a, b = pair
        return bool(self.m[self.dom.position(a), self.cod.position(b)])

    def __len__(self) -> int:
        return int(self.m.sum())

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeakRel) and self.dom == other.dom
                and self.cod == other.cod and np.array_equal(self.m, other.m))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, self.m.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"WeakRel({self.pairs()})"

    def _same_type(self, other: "WeakRel"):
        if self.dom != other.dom or self.cod != other.cod:
            raise TypeMismatch("relations have different domain or codomain")

    def __le__(self, other: "WeakRel") -> bool:
        self._same_type(other)
        return not (self.m & ~other.m).any()

    def __ge__(self, other: "WeakRel") -> bool:
        return other <= self

    def __or__(self, other: "WeakRel") -> "WeakRel":
        self._same_type(other)
        return WeakRel(self.dom, self.cod, self.m | other.m, check=False)

    def __and__(self, other: "WeakRel") -> "WeakRel":
        self._same_type(other)
        return WeakRel(self.dom, self.cod, self.m & other.m, check=False)

    def image(self, mask: int) -> int:
        """Positions in the codomain related to some member of ``mask``."""
        row = np.zeros(len(self.cod), dtype=bool)
        for i in mask_positions(mask):
            row |= self.m[i]
        return sum(1 << int(j) for j in np.flatnonzero(row))


def _pair_matrix(dom: Poset, cod: Poset, pairs) -> np.ndarray:
    m = np.zeros((len(dom), len(cod)), dtype=bool)
    for a, b in pairs:
        m[dom.position(a), cod.position(b)] = True
    return m


def is_weakening_closed(dom: Poset, cod: Poset, pairs) -> bool:
    m = _pair_matrix(dom, cod, pairs)
    return not (_closed(dom, cod, m) & ~m).any()


def weakening_closure(dom: Poset, cod: Poset, pairs) -> WeakRel:
    # one pass suffices because both orders are reflexive and transitive
    return WeakRel(dom, cod, _closed(dom, cod, _pair_matrix(dom, cod, pairs)), check=False)


def empty_rel(dom: Poset, cod: Poset) -> WeakRel:
    return WeakRel(dom, cod, np.zeros((len(dom), len(cod)), dtype=bool), check=False)


def total_rel(dom: Poset, cod: Poset) -> WeakRel:
    return WeakRel(dom, cod, np.ones((len(dom), len(cod)), dtype=bool), check=False)


def identity_rel(p: Poset) -> WeakRel:
    """The order itself, which is the unit for composition."""
    return WeakRel(p, p, p.le, check=False)


def compose_rel(r: WeakRel, s: WeakRel) -> WeakRel:
    """``r`` then ``s``: the pairs ``(a, c)`` with ``a r b`` and ``b s c`` for some ``b``."""
    if r.cod != s.dom:
        raise CompositionMismatch("codomain of the first relation is not the domain "
                                  "of the second")
    return WeakRel(r.dom, s.cod, bool_matmul(r.m, s.m), check=False)


def companion(f: MonotoneMap) -> WeakRel:
    """``{(a, b) | f(a) <= b}``."""
    return WeakRel(f.dom, f.cod, f.cod.le[f.idx, :], check=False)


def conjoint(f: MonotoneMap) -> WeakRel:
    """``{(b, a) | b <= f(a)}``."""
    return WeakRel(f.cod, f.dom, f.cod.le[:, f.idx], check=False)


def restrict(r: WeakRel, f: MonotoneMap, g: MonotoneMap) -> WeakRel:
    """Pull ``r`` back along ``f`` and ``g``: ``{(a, b) | (f a, g b) in r}``."""
    if f.cod != r.dom or g.cod != r.cod:
        raise TypeMismatch("maps do not land in the relation's domain and codomain")
    return WeakRel(f.dom, g.dom, r.m[np.ix_(f.idx, g.idx)], check=False)


def recover_map_from_adjunction(r: WeakRel, s: WeakRel) -> MonotoneMap:
    """Given ``r: A -> B`` left adjoint to ``s: B -> A``, return the map they come from.

    The adjunction is checked through the unit ``Id_A <= r;s`` and the counit
    ``s;r <= Id_B``. The map sends ``a`` to the unique ``b`` with ``a r b`` and ``b s a``.
    """
    a_pos, b_pos = r.dom, r.cod
    if s.dom != b_pos or s.cod != a_pos:
        raise TypeMismatch("the candidate adjoints do not run in opposite directions")
    unit = compose_rel(r, s).m
    lost = a_pos.le & ~unit
    if lost.any():
        i, j = map(int, np.argwhere(lost)[0])
        raise NotAdjoint("unit fails", witness=(a_pos.elements[i], a_pos.elements[j]))
    counit = compose_rel(s, r).m
    extra = counit & ~b_pos.le
    if extra.any():
        i, j = map(int, np.argwhere(extra)[0])
        raise NotAdjoint("counit fails", witness=(b_pos.elements[i], b_pos.elements[j]))
    idx = []
    for i in range(len(a_pos)):
        both = np.flatnonzero(r.m[i] & s.m[:, i])
        if len(both) != 1:
            raise NotAdjoint(f"{len(both)} candidate images for {a_pos.elements[i]!r}",
                             witness=a_pos.elements[i])
        idx.append(int(both[0]))
    f = MonotoneMap(a_pos, b_pos, idx)
    if companion(f) != r or conjoint(f) != s:
        raise NotAdjoint("the adjoint pair is not the companion and conjoint of a map")
    return f


def surjection_embedding_criteria(f: MonotoneMap) -> tuple[bool, bool]:
    """Relational tests: surjective iff ``f^* ; f_* = Id_B``, embedding iff ``f_* ; f^* = Id_A``."""
    surj = compose_rel(conjoint(f), companion(f)) == identity_rel(f.cod)
    emb = compose_rel(companion(f), conjoint(f)) == identity_rel(f.dom)
    return surj, emb


def relation_space(dom: Poset, cod: Poset) -> Poset:
    """``A^op x B``, whose upsets are exactly the weakening relations."""
    return product(opposite(dom), cod)


def enumerate_relations(dom: Poset, cod: Poset, limit: int | None = None) -> Iterator[WeakRel]:
    """All weakening relations, in the upset order of ``A^op x B``."""
    bound = limit if limit is not None else current_limits().hom
    check_size("A^op x B", len(dom) * len(cod), bound)
    space = relation_space(dom, cod)
    for mask in space.upsets():
        yield WeakRel(dom, cod, space.vector_of(mask).reshape(len(dom), len(cod)), check=False)


def relation_stack(dom: Poset, cod: Poset, limit: int | None = None) -> np.ndarray:
    """All weakening relations as one boolean array of shape ``(count, |A|, |B|)``."""
    rels = [r.m for r in enumerate_relations(dom, cod, limit)]
    return np.stack(rels) if rels else np.zeros((0, len(dom), len(cod)), dtype=bool)
