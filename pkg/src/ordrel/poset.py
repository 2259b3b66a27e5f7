"""Finite posets and monotone maps.

A poset is a tuple of distinct element names plus a dense boolean matrix
``le`` with ``le[i, j]`` true iff element ``i`` is below element ``j``.
Subsets of a poset are handled internally as Python int bitmasks over the
element positions.
"""
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (AntisymmetryViolation, DuplicateElement, NotMonotone,
                     TypeMismatch, UnknownElement)


def bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Boolean matrix product (or of ands), routed through float BLAS."""
    if a.shape[-1] == 0:
        return np.zeros(a.shape[:-1] + b.shape[-1:], dtype=bool)
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0


def transitive_closure(m: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a square boolean matrix."""
    n = m.shape[0]
    c = m.copy() | np.eye(n, dtype=bool)
    for k in range(n):
        c |= c[:, k:k + 1] & c[k:k + 1, :]
    return c


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.ascontiguousarray(m, dtype=bool)
    m.setflags(write=False)
    return m


class Poset:
    """A finite partial order. Build one with ``validate_poset`` or the helpers below."""

    __slots__ = ("elements", "le", "index", "_hash", "_upsets", "_masks")

    def __init__(self, elements: Sequence[str], le: np.ndarray, check: bool = True):
        elements = tuple(elements)
        index = {}
        for i, e in enumerate(elements):
            if not isinstance(e, str):
                raise TypeMismatch(f"element names must be strings, got {e!r}")
            if e in index:
                raise DuplicateElement(f"duplicate element {e!r}", witness=e)
            index[e] = i
        le = np.asarray(le, dtype=bool).reshape(len(elements), len(elements))
        self.elements = elements
        self.le = _frozen(le)
        self.index = index
        self._hash = None
        self._upsets = None
        self._masks = None
        if check:
            self._check_axioms()

    def _check_axioms(self):
        n = len(self)
        le = self.le
        if not le.diagonal().all():
            i = int(np.flatnonzero(~le.diagonal())[0])
            raise ValueError(f"order is not reflexive at {self.elements[i]!r}")
        both = le & le.T & ~np.eye(n, dtype=bool)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise AntisymmetryViolation(
                f"{self.elements[i]!r} and {self.elements[j]!r} are below each other",
                witness=(self.elements[i], self.elements[j]))
        if (bool_matmul(le, le) & ~le).any():
            raise ValueError("order is not transitive")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, name) -> bool:
        return name in self.index

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poset) and self.elements == other.elements
                and np.array_equal(self.le, other.le))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.elements, self.le.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poset({list(self.elements)}, covers={self.covers()})"

    def position(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}", witness=name) from None

    def leq(self, a: str, b: str) -> bool:
        return bool(self.le[self.position(a), self.position(b)])

    def cover_matrix(self) -> np.ndarray:
        strict = self.le & ~np.eye(len(self), dtype=bool)
        return strict & ~bool_matmul(strict, strict)

    def covers(self) -> list[tuple[str, str]]:
        return [(self.elements[i], self.elements[j]) for i, j in np.argwhere(self.cover_matrix())]

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.elements[i], self.elements[j]) for i, j in np.argwhere(self.le)]

    # subsets as bitmasks

    def masks(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Bitmasks of the principal upsets and principal downsets."""
        if self._masks is None:
            up = tuple(sum(1 << int(j) for j in np.flatnonzero(row)) for row in self.le)
            down = tuple(sum(1 << int(i) for i in np.flatnonzero(col)) for col in self.le.T)
            self._masks = (up, down)
        return self._masks

    def upsets(self) -> tuple[int, ...]:
        """All upsets as bitmasks, ordered by size and then by member positions."""
        if self._upsets is None:
            up, down = self.masks()
            found = []

            def grow(undecided, chosen):
                if not undecided:
                    found.append(chosen)
                    return
                i = (undecided & -undecided).bit_length() - 1
                grow(undecided & ~up[i], chosen | up[i])
                grow(undecided & ~down[i], chosen)

            grow((1 << len(self)) - 1, 0)
            found.sort(key=lambda m: (bin(m).count("1"), mask_positions(m)))
            self._upsets = tuple(found)
        return self._upsets

    def is_upset(self, mask: int) -> bool:
        up = self.masks()[0]
        return all(up[i] & ~mask == 0 for i in mask_positions(mask))

    def up_closure(self, mask: int) -> int:
        up = self.masks()[0]
        out = 0
        for i in mask_positions(mask):
            out |= up[i]
        return out

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << self.position(name)
        return m

    def names_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.elements[i] for i in mask_positions(mask))

    def vector_of(self, mask: int) -> np.ndarray:
        return np.array([(mask >> i) & 1 for i in range(len(self))], dtype=bool)

    def set_literal(self, mask: int) -> str:
        return "{" + ",".join(self.elements[i] for i in mask_positions(mask)) + "}"


def mask_positions(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def validate_poset(elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> Poset:
    """Close the generating pairs reflexively and transitively and check antisymmetry."""
    elements = list(elements)
    index = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateElement(f"duplicate element {e!r}", witness=e)
        index[e] = i
    n = len(elements)
    gen = np.zeros((n, n), dtype=bool)
    for a, b in pairs:
        for x in (a, b):
            if x not in index:
                raise UnknownElement(f"pair ({a!r}, {b!r}) mentions unknown element {x!r}",
                                     witness=x)
        gen[index[a], index[b]] = True
    return Poset(elements, transitive_closure(gen))


def chain(n: int, names: Sequence[str] | None = None) -> Poset:
    names = list(names) if names is not None else [str(i) for i in range(n)]
    return Poset(names, np.triu(np.ones((n, n), dtype=bool)))


def discrete(names: Sequence[str] | int) -> Poset:
    if isinstance(names, int):
        names = [str(i) for i in range(names)]
    return Poset(names, np.eye(len(names), dtype=bool))


def opposite(p: Poset) -> Poset:
    return Poset(p.elements, p.le.T, check=False)


def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


def product(p: Poset, q: Poset) -> Poset:
    """Componentwise order on pairs, listed with the left coordinate varying slowest."""
    names = [pair_name(a, b) for a in p.elements for b in q.elements]
    return Poset(names, np.kron(p.le, q.le).astype(bool), check=False)


def subposet(p: Poset, positions: Sequence[int]) -> Poset:
    positions = list(positions)
    return Poset([p.elements[i] for i in positions], p.le[np.ix_(positions, positions)],
                 check=False)


def disjoint_union(p: Poset, q: Poset, left: str = "L:", right: str = "R:") -> Poset:
    n, m = len(p), len(q)
    le = np.zeros((n + m, n + m), dtype=bool)
    le[:n, :n] = p.le
    le[n:, n:] = q.le
    return Poset([left + a for a in p.elements] + [right + b for b in q.elements], le,
                 check=False)


def reflect_preorder(names: Sequence[str], pre: np.ndarray) -> tuple[Poset, np.ndarray]:
    """Poset reflection of a preorder given by a reflexive-transitive matrix.

    Returns the quotient poset and, for each original position, the position of
    its class. A class is named by its lexicographically least member and the
    classes are listed in order of first appearance.
    """
    n = len(names)
    same = pre & pre.T
    cls = np.full(n, -1, dtype=int)
    reps = []
    for i in range(n):
        if cls[i] < 0:
            members = np.flatnonzero(same[i])
            cls[members] = len(reps)
            reps.append(members)
    k = len(reps)
    le = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(k):
            le[a, b] = pre[reps[a][0], reps[b][0]]
    labels = [min(names[i] for i in members) for members in reps]
    return Poset(labels, le, check=False), cls


class MonotoneMap:
    """A monotone map, stored as the codomain position of each domain element."""

    __slots__ = ("dom", "cod", "idx", "_hash")

    def __init__(self, dom: Poset, cod: Poset, idx: Sequence[int], check: bool = True):
        self.dom = dom
        self.cod = cod
        arr = np.asarray(idx, dtype=np.intp).reshape(len(dom))
        arr.setflags(write=False)
        self.idx = arr
        self._hash = None
        if check:
            if len(dom) and (arr.min() < 0 or arr.max() >= len(cod)):
                raise UnknownElement("map sends an element outside its codomain")
            bad = dom.le & ~cod.le[np.ix_(arr, arr)]
            if bad.any():
                i, j = map(int, np.argwhere(bad)[0])
                a, b = dom.elements[i], dom.elements[j]
                raise NotMonotone(f"{a!r} <= {b!r} but their images are not ordered",
                                  witness=(a, b))

    @classmethod
    def from_dict(cls, dom: Poset, cod: Poset, graph: dict) -> "MonotoneMap":
        missing = [a for a in dom.elements if a not in graph]
        if missing:
            raise UnknownElement(f"map is undefined on {missing[0]!r}", witness=missing[0])
        extra = [a for a in graph if a not in dom]
        if extra:
            raise UnknownElement(f"map is defined on unknown element {extra[0]!r}",
                                 witness=extra[0])
        return cls(dom, cod, [cod.position(graph[a]) for a in dom.elements])

    def __call__(self, name: str) -> str:
        return self.cod.elements[self.idx[self.dom.position(name)]]

    def as_dict(self) -> dict[str, str]:
        return {a: self.cod.elements[i] for a, i in zip(self.dom.elements, self.idx)}

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonotoneMap) and self.dom == other.dom
                and self.cod == other.cod and np.array_equal(self.idx, other.idx))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, self.idx.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"MonotoneMap({self.as_dict()})"

    def preimage(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.idx):
            if (mask >> int(j)) & 1:
                out |= 1 << i
        return out

    def image(self, mask: int) -> int:
        out = 0
        for i in mask_positions(mask):
            out |= 1 << int(self.idx[i])
        return out


def identity_map(p: Poset) -> MonotoneMap:
    return MonotoneMap(p, p, np.arange(len(p)), check=False)


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """``g`` after ``f``."""
    if f.cod != g.dom:
        raise TypeMismatch("cannot compose: codomain and domain differ")
    return MonotoneMap(f.dom, g.cod, g.idx[f.idx], check=False)


class MapClass(NamedTuple):
    surjective: bool
    embedding: bool


def classify_map(f: MonotoneMap) -> MapClass:
    """Surjective, and order-embedding (``f a <= f b`` implies ``a <= b``)."""
    surjective = len(set(f.idx.tolist())) == len(f.cod)
    reflected = f.cod.le[np.ix_(f.idx, f.idx)]
    return MapClass(surjective, bool(np.array_equal(reflected, f.dom.le)))


def is_iso(f: MonotoneMap) -> bool:
    c = classify_map(f)
    return c.surjective and c.embedding


def factorize(f: MonotoneMap) -> tuple[MonotoneMap, MonotoneMap]:
    """Split ``f`` as a surjection onto its image followed by the image inclusion."""
    positions = sorted(set(f.idx.tolist()))
    img = subposet(f.cod, positions)
    where = {j: k for k, j in enumerate(positions)}
    e = MonotoneMap(f.dom, img, [where[int(j)] for j in f.idx], check=False)
    m = MonotoneMap(img, f.cod, positions, check=False)
    return e, m


def all_maps(dom: Poset, cod: Poset) -> Iterator[MonotoneMap]:
    """Every monotone map, by backtracking along a linear extension of the domain."""
    n = len(dom)
    order = sorted(range(n), key=lambda i: int(dom.le[:, i].sum()))
    assign = [-1] * n

    def extend(k):
        if k == n:
            yield MonotoneMap(dom, cod, assign, check=False)
            return
        i = order[k]
        for j in range(len(cod)):
            ok = True
            for t in order[:k]:
                if dom.le[t, i] and not cod.le[assign[t], j]:
                    ok = False
                    break
            if ok:
                assign[i] = j
                yield from extend(k + 1)
        assign[i] = -1

    yield from extend(0)
