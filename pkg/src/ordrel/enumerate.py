"""Exhaustive generators for small instances."""
import itertools
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .config import check_size
from .poset import Poset, all_maps, bool_matmul

MAX_ENUMERATED = 5


def enumerate_posets(n: int, names: Sequence[str] | None = None,
                     up_to_iso: bool = False) -> Iterator[Poset]:
    """Every partial order on ``n`` labelled elements.

    Each unordered pair is independently left incomparable or ordered one of
    two ways, and only the transitive choices are kept. With ``up_to_iso`` one
    representative per isomorphism class is kept (the first one generated).
    """
    check_size("enumerated poset", n, MAX_ENUMERATED)
    names = list(names) if names is not None else [str(i) for i in range(n)]
    if len(names) != n:
        raise ValueError("need exactly n names")
    pairs = list(itertools.combinations(range(n), 2))
    eye = np.eye(n, dtype=bool)
    seen = set()
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        le = eye.copy()
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                le[i, j] = True
            elif c == 2:
                le[j, i] = True
        if (bool_matmul(le, le) & ~le).any():
            continue
        if up_to_iso:
            key = canonical_form(le)
            if key in seen:
                continue
            seen.add(key)
        yield Poset(names, le, check=False)


def canonical_form(le: np.ndarray) -> bytes:
    """Least byte string of the order matrix over all relabellings."""
    n = le.shape[0]
    best = None
    for perm in itertools.permutations(range(n)):
        key = le[np.ix_(perm, perm)].tobytes()
        if best is None or key < best:
            best = key
    return best if best is not None else b""


def posets_up_to(n: int, up_to_iso: bool = False) -> list[Poset]:
    return [p for k in range(n + 1) for p in enumerate_posets(k, up_to_iso=up_to_iso)]


@lru_cache(maxsize=None)
def enumerate_lattices(max_n: int) -> tuple:
    """Distributive lattices with 1 to ``max_n`` elements, one per isomorphism class."""
    from .errors import OrdRelError
    from .lattice import validate_dl
    found = []
    for n in range(1, max_n + 1):
        for p in enumerate_posets(n, up_to_iso=True):
            try:
                found.append(validate_dl(p))
            except OrdRelError:
                pass
    return tuple(found)


def describe(p: Poset) -> str:
    """Short label such as ``[0,1,2; 0<1 0<2]``."""
    covers = " ".join(f"{a}<{b}" for a, b in p.covers())
    return f"[{','.join(p.elements)}; {covers}]" if covers else f"[{','.join(p.elements)}]"


def space_instances(max_size: int = 3, square_size: int = 2):
    """Maps and exact squares over small posets, one poset per isomorphism class.

    Squares come from every weakening relation (tabulation against collage),
    every cospan (comma square) and every span (cocomma square); the last two
    only up to ``square_size`` since their count grows fast.
    """
    from .relations import enumerate_relations
    from .spans import Cospan, Span, cocomma, comma, graph
    reps = posets_up_to(max_size, up_to_iso=True)
    small = posets_up_to(square_size, up_to_iso=True)
    maps = [(f"map {describe(x)}->{describe(y)} {f.as_dict()}", f)
            for x in reps for y in reps for f in all_maps(x, y)]
    squares = []
    for x in reps:
        for y in reps:
            for r in enumerate_relations(x, y, limit=len(x) * len(y)):
                s = graph(r)
                c = cocomma(s)
                squares.append((f"tabulation {describe(x)}->{describe(y)} {r.pairs()}",
                                (s.left, s.right, c.left, c.right)))
    for a, b, c in itertools.product(small, repeat=3):
        for j in all_maps(a, c):
            for k in all_maps(b, c):
                s = comma(Cospan(j, k))
                squares.append((f"comma {describe(a)}->{describe(c)}<-{describe(b)} "
                                f"{j.as_dict()} {k.as_dict()}", (s.left, s.right, j, k)))
    for a, b, w in itertools.product(small, repeat=3):
        for p in all_maps(w, a):
            for q in all_maps(w, b):
                c = cocomma(Span(p, q))
                squares.append((f"cocomma {describe(a)}<-{describe(w)}->{describe(b)} "
                                f"{p.as_dict()} {q.as_dict()}", (p, q, c.left, c.right)))
    return maps, squares


def algebra_instances(max_size: int = 3, lattices=None):
    """Homomorphisms and exact squares over lattices with at most ``max_size`` elements,
    or over the given ``lattices``."""
    from .duality import dl_cocomma_via_duality
    from .lattice import (DLCospan, DLSpan, dl_comma, dl_homs, dl_tabulate,
                          is_dl_relation, DLRel)
    from .relations import enumerate_relations
    lats = enumerate_lattices(max_size) if lattices is None else tuple(lattices)

    def label(a):
        return describe(a.carrier)

    maps = [(f"hom {label(a)}->{label(b)} {f.map.as_dict()}", f)
            for a in lats for b in lats for f in dl_homs(a, b)]
    squares = []
    for a in lats:
        for b in lats:
            for r in enumerate_relations(a.carrier, b.carrier, limit=len(a) * len(b)):
                if not is_dl_relation(a, b, r):
                    continue
                s = dl_tabulate(DLRel(a, b, r))
                c = dl_cocomma_via_duality(s, verify=False)
                squares.append((f"tabulation {label(a)}->{label(b)} {r.pairs()}",
                                (s.left, s.right, c.left, c.right)))
    for a, b, c in itertools.product(lats, repeat=3):
        for j in dl_homs(a, c):
            for k in dl_homs(b, c):
                s = dl_comma(DLCospan(j, k))
                squares.append((f"comma {label(a)}->{label(c)}<-{label(b)} "
                                f"{j.map.as_dict()} {k.map.as_dict()}",
                                (s.left, s.right, j, k)))
    for a, b, w in itertools.product(lats, repeat=3):
        for p in dl_homs(w, a):
            for q in dl_homs(w, b):
                c = dl_cocomma_via_duality(DLSpan(p, q), verify=False)
                squares.append((f"cocomma {label(a)}<-{label(w)}->{label(b)} "
                                f"{p.map.as_dict()} {q.map.as_dict()}",
                                (p, q, c.left, c.right)))
    return maps, squares
