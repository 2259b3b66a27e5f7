"""Finite bounded distributive lattices, their morphisms and relations."""
from typing import NamedTuple

import numpy as np

from .config import check_size, current_limits
from .errors import (EmptyLattice, NotADLRelation, NotAHomomorphism, NotALattice,
                     NotDistributive, TypeMismatch)
from .poset import MonotoneMap, Poset, all_maps, bool_matmul, chain, compose, product
from .relations import WeakRel
from .spans import Cospan, Span, comma


class FinDL:
    """A validated finite distributive lattice. Use ``validate_dl`` to build one."""

    __slots__ = ("carrier", "bottom", "top", "_meet", "_join", "_filters", "_complement")

    def __init__(self, carrier: Poset, bottom: int, top: int, meet: np.ndarray | None,
                 join: np.ndarray | None):
        self.carrier = carrier
        self.bottom = bottom
        self.top = top
        for t in (meet, join):
            if t is not None:
                t.setflags(write=False)
        self._meet = meet
        self._join = join
        self._filters = None
        self._complement = None

    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    @property
    def meet(self) -> np.ndarray:
        """``meet[x, y]`` is the position of the meet of positions ``x`` and ``y``."""
        if self._meet is None:
            self._meet, self._join = self._tables()
        return self._meet

    @property
    def join(self) -> np.ndarray:
        if self._join is None:
            self._meet, self._join = self._tables()
        return self._join

    def __len__(self) -> int:
        return len(self.carrier)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinDL) and self.carrier == other.carrier

    def __hash__(self) -> int:
        return hash(self.carrier)

    def __repr__(self) -> str:
        return f"FinDL({self.carrier!r})"

    @property
    def elements(self) -> tuple[str, ...]:
        return self.carrier.elements

    def position(self, name: str) -> int:
        return self.carrier.position(name)

    def complement(self) -> np.ndarray:
        """Complement of each element; raises if the lattice is not Boolean."""
        if self._complement is None:
            n = len(self)
            comp = np.full(n, -1, dtype=np.intp)
            for x in range(n):
                hits = np.flatnonzero((self.meet[x] == self.bottom) & (self.join[x] == self.top))
                if len(hits) != 1:
                    raise TypeMismatch(f"{self.elements[x]!r} has no complement",
                                       witness=self.elements[x])
                comp[x] = hits[0]
            self._complement = comp
        return self._complement


def _bound_table(le: np.ndarray, names, what: str) -> np.ndarray:
    # for each pair, the greatest common lower bound of ``le``
    n = le.shape[0]
    table = np.empty((n, n), dtype=np.intp)
    not_le_t = ~le.T
    for i in range(n):
        lower = le[:, i:i + 1] & le  # lower[k, j]: k below both i and j
        spoiled = bool_matmul(not_le_t, lower)  # some lower bound not below m
        best = lower & ~spoiled
        counts = best.sum(axis=0)
        if (counts != 1).any():
            j = int(np.flatnonzero(counts != 1)[0])
            raise NotALattice(f"{names[i]!r} and {names[j]!r} have no {what}",
                              witness=(names[i], names[j]))
        table[i] = best.argmax(axis=0)
    return table


def validate_dl(p: Poset) -> FinDL:
    if len(p) == 0:
        raise EmptyLattice("a bounded lattice needs at least one element")
    names = p.elements
    meet = _bound_table(p.le, names, "meet")
    join = _bound_table(p.le.T, names, "join")
    n = len(p)
    for a in range(n):
        lhs = meet[a][join]
        rhs = join[meet[a][:, None], meet[a][None, :]]
        bad = lhs != rhs
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            raise NotDistributive(
                f"{names[a]} meet ({names[b]} join {names[c]}) does not distribute",
                witness=(names[a], names[b], names[c]))
    bottom = int(np.flatnonzero(p.le.all(axis=1))[0])
    top = int(np.flatnonzero(p.le.all(axis=0))[0])
    return FinDL(p, bottom, top, meet, join)


def chain_dl(names) -> FinDL:
    return validate_dl(chain(len(names), names))


def product_dl(a: FinDL, b: FinDL) -> FinDL:
    n, m = len(a), len(b)
    carrier = product(a.carrier, b.carrier)

    def table(ta, tb):
        return (ta[:, None, :, None] * m + tb[None, :, None, :]).reshape(n * m, n * m)

    return FinDL(carrier, a.bottom * m + b.bottom, a.top * m + b.top,
                 table(a.meet, b.meet), table(a.join, b.join))


def sublattice(a: FinDL, positions) -> FinDL:
    """Restrict to positions closed under meet, join and containing both bounds."""
    positions = np.asarray(list(positions), dtype=np.intp)
    where = np.full(len(a), -1, dtype=np.intp)
    where[positions] = np.arange(len(positions))
    block = np.ix_(positions, positions)
    meet, join = where[a.meet[block]], where[a.join[block]]
    bottom, top = int(where[a.bottom]), int(where[a.top])
    if (meet < 0).any() or (join < 0).any() or bottom < 0 or top < 0:
        raise NotALattice("subset is not a bounded sublattice")
    carrier = Poset([a.elements[i] for i in positions],
                    a.carrier.le[np.ix_(positions, positions)], check=False)
    return FinDL(carrier, bottom, top, meet, join)


class DLMorphism(NamedTuple):
    dom: FinDL
    cod: FinDL
    map: MonotoneMap

    @property
    def idx(self) -> np.ndarray:
        return self.map.idx

    def __call__(self, name: str) -> str:
        return self.map(name)


def hom_violation(dom: FinDL, cod: FinDL, idx: np.ndarray):
    names = dom.elements
    if idx[dom.bottom] != cod.bottom:
        return "bottom", (names[dom.bottom],)
    if idx[dom.top] != cod.top:
        return "top", (names[dom.top],)
    for what, td, tc in (("meet", dom.meet, cod.meet), ("join", dom.join, cod.join)):
        bad = idx[td] != tc[idx[:, None], idx[None, :]]
        if bad.any():
            x, y = map(int, np.argwhere(bad)[0])
            return what, (names[x], names[y])
    return None


def validate_dl_morphism(dom: FinDL, cod: FinDL, f: MonotoneMap | dict) -> DLMorphism:
    if isinstance(f, dict):
        f = MonotoneMap.from_dict(dom.carrier, cod.carrier, f)
    if f.dom != dom.carrier or f.cod != cod.carrier:
        raise TypeMismatch("map does not run between the given lattices")
    v = hom_violation(dom, cod, f.idx)
    if v is not None:
        what, where = v
        raise NotAHomomorphism(f"{what} is not preserved at {where}", witness=where)
    return DLMorphism(dom, cod, f)


def compose_dl(g: DLMorphism, f: DLMorphism) -> DLMorphism:
    return DLMorphism(f.dom, g.cod, compose(g.map, f.map))


def dl_homs(dom: FinDL, cod: FinDL):
    """Every lattice homomorphism, by filtering the monotone maps."""
    for f in all_maps(dom.carrier, cod.carrier):
        if hom_violation(dom, cod, f.idx) is None:
            yield DLMorphism(dom, cod, f)


def prime_filter_members(a: FinDL) -> tuple[Poset, np.ndarray]:
    """Prime filters and their membership matrix (one row per filter).

    Every filter of a finite lattice is principal, so each candidate ``up(m)``
    with ``m`` not the bottom is tested for primality directly.
    """
    if a._filters is None:
        check_size("lattice", len(a), current_limits().algebra)
        le = a.carrier.le
        rows, names = [], []
        for m in range(len(a)):
            if m == a.bottom:
                continue
            f = le[m]
            # x join y in F while neither x nor y is
            if not (f[a.join] & ~f[:, None] & ~f[None, :]).any():
                rows.append(f)
                names.append("↑" + a.elements[m])
        members = (np.array(rows, dtype=bool).reshape(len(rows), len(a)))
        order = ~bool_matmul(members, ~members.T)
        members.setflags(write=False)
        a._filters = (Poset(names, order, check=False), members)
    return a._filters


def prime_filters(a: FinDL) -> Poset:
    """Prime filters ordered by inclusion, each named by its least element."""
    return prime_filter_members(a)[0]


class DLRel(NamedTuple):
    """A weakening relation between lattices that contains both bound pairs and
    is closed under componentwise meet and join."""
    dom: FinDL
    cod: FinDL
    rel: WeakRel

    def pairs(self):
        return self.rel.pairs()

    def __len__(self) -> int:
        return len(self.rel)


def dl_relation_violation(a: FinDL, b: FinDL, m: np.ndarray):
    if not m[a.bottom, b.bottom]:
        return "missing bottom pair", (a.elements[a.bottom], b.elements[b.bottom])
    if not m[a.top, b.top]:
        return "missing top pair", (a.elements[a.top], b.elements[b.top])
    ia, ib = np.nonzero(m)
    for what, ta, tb in (("meet", a.meet, b.meet), ("join", a.join, b.join)):
        closed = m[ta[np.ix_(ia, ia)], tb[np.ix_(ib, ib)]]
        if not closed.all():
            s, t = map(int, np.argwhere(~closed)[0])
            return (f"not closed under {what}",
                    ((a.elements[ia[s]], b.elements[ib[s]]),
                     (a.elements[ia[t]], b.elements[ib[t]])))
    return None


def is_dl_relation(a: FinDL, b: FinDL, r: WeakRel) -> bool:
    return dl_relation_violation(a, b, r.m) is None


def make_dl_rel(a: FinDL, b: FinDL, r: WeakRel) -> DLRel:
    if r.dom != a.carrier or r.cod != b.carrier:
        raise TypeMismatch("relation does not run between the given lattices")
    v = dl_relation_violation(a, b, r.m)
    if v is not None:
        raise NotADLRelation(f"{v[0]} at {v[1]}", witness=v[1])
    return DLRel(a, b, r)


def dl_relation_closure(a: FinDL, b: FinDL, seeds, negation_swap: bool = False) -> DLRel:
    """Least lattice relation containing ``seeds``.

    With ``negation_swap`` (Boolean algebras only, ``a`` equal to ``b``) the
    closure also applies ``x R y => not y R not x`` and the complement-pair
    rule ``x R y => not x R not y``.
    """
    if negation_swap:
        if a != b:
            raise TypeMismatch("the negation rule needs a single Boolean algebra")
        neg = a.complement()
    m = np.zeros((len(a), len(b)), dtype=bool)
    for x, y in seeds:
        m[a.position(x), b.position(y)] = True
    m[a.bottom, b.bottom] = m[a.top, b.top] = True
    while True:
        before = m.copy()
        m = bool_matmul(bool_matmul(a.carrier.le, m), b.carrier.le)
        ia, ib = np.nonzero(m)
        m[a.meet[np.ix_(ia, ia)], b.meet[np.ix_(ib, ib)]] = True
        m[a.join[np.ix_(ia, ia)], b.join[np.ix_(ib, ib)]] = True
        if negation_swap:
            ia, ib = np.nonzero(m)
            m[neg[ib], neg[ia]] = True
            m[neg[ia], neg[ib]] = True
        if np.array_equal(m, before):
            break
    return make_dl_rel(a, b, WeakRel(a.carrier, b.carrier, m))


class DLSpan(NamedTuple):
    left: DLMorphism
    right: DLMorphism

    @property
    def apex(self) -> FinDL:
        return self.left.dom

    @property
    def span(self) -> Span:
        return Span(self.left.map, self.right.map)


class DLCospan(NamedTuple):
    left: DLMorphism
    right: DLMorphism

    @property
    def apex(self) -> FinDL:
        return self.left.cod

    @property
    def cospan(self) -> Cospan:
        return Cospan(self.left.map, self.right.map)


def _pair_sublattice(a: FinDL, b: FinDL, rows, cols) -> FinDL:
    full = product_dl(a, b)
    return sublattice(full, [int(i) * len(b) + int(j) for i, j in zip(rows, cols)])


def dl_tabulate(r: DLRel) -> DLSpan:
    """The relation's pairs as a sublattice of the product, with the projections."""
    a, b = r.dom, r.cod
    rows, cols = np.nonzero(r.rel.m)
    apex = _pair_sublattice(a, b, rows, cols)
    return DLSpan(DLMorphism(apex, a, MonotoneMap(apex.carrier, a.carrier, rows, check=False)),
                  DLMorphism(apex, b, MonotoneMap(apex.carrier, b.carrier, cols, check=False)))


def dl_comma(c: DLCospan) -> DLSpan:
    """Comma object of a lattice cospan, which is a sublattice of the product."""
    s = comma(c.cospan)
    a, b = c.left.dom, c.right.dom
    apex = _pair_sublattice(a, b, s.left.idx, s.right.idx)
    return DLSpan(DLMorphism(apex, a, MonotoneMap(apex.carrier, a.carrier, s.left.idx,
                                                  check=False)),
                  DLMorphism(apex, b, MonotoneMap(apex.carrier, b.carrier, s.right.idx,
                                                  check=False)))
