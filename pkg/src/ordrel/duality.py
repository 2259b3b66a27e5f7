"""Duality between finite posets and finite distributive lattices, lifted to relations.

A poset ``X`` goes to its lattice of upsets ``2^X`` and a monotone map to
inverse image. A lattice ``A`` goes to its poset of prime filters and a
homomorphism to inverse image. Both are contravariant on maps, so a
weakening relation ``X -> Y`` turns into a lattice relation ``2^X -> 2^Y``
once it is written as a span or cospan of maps.

The fast routes below apply the functor to the legs and compare the images
inside the dual apex by inclusion, which is how that apex is ordered. They
never list the dual apex itself. ``materialize=True`` builds every object
explicitly and exists so the two can be checked against each other.
"""
from functools import lru_cache
from typing import Callable, Literal, NamedTuple

import numpy as np

from .config import check_size, current_limits
from .errors import IsoFailure, NotAnEmbedding, OrdRelError, TypeMismatch
from .lattice import (DLCospan, DLMorphism, DLRel, DLSpan, FinDL, compose_dl,
                      dl_homs, dl_tabulate, make_dl_rel, prime_filter_members,
                      validate_dl_morphism)
from .poset import MonotoneMap, Poset, bool_matmul, classify_map, is_iso
from .relations import (WeakRel, companion, conjoint, recover_map_from_adjunction,
                        restrict)
from .spans import (Cospan, Span, Square, cocomma, comma, graph, is_exact,
                    lax_violation, rel_of_cospan, rel_of_span)

Direction = Literal["space->algebra", "algebra->space"]
SPACE_TO_ALGEBRA = "space->algebra"
ALGEBRA_TO_SPACE = "algebra->space"


def _row_masks(rows: np.ndarray) -> list[int]:
    return [sum(1 << int(i) for i in np.flatnonzero(row)) for row in rows]


class UpsetLattice(FinDL):
    """``2^X``: upsets of ``X`` under inclusion, named by brace literals like ``{a,c}``.

    Meet and join are intersection and union; their tables are built on first use.
    """

    __slots__ = ("base", "masks", "vectors", "lookup")

    def _tables(self):
        m = np.array(self.masks, dtype=object)
        look = np.vectorize(self.lookup.__getitem__, otypes=[np.intp])
        return look(m[:, None] & m[None, :]), look(m[:, None] | m[None, :])


def upset_matrix(x: Poset) -> np.ndarray:
    """Membership matrix of the upsets of ``x``, one row per upset."""
    masks = x.upsets()
    out = np.zeros((len(masks), len(x)), dtype=bool)
    for r, m in enumerate(masks):
        out[r] = x.vector_of(m)
    return out


@lru_cache(maxsize=1024)
def _upset_lattice(x: Poset) -> UpsetLattice:
    masks = x.upsets()
    vectors = upset_matrix(x)
    names = [x.set_literal(m) for m in masks]
    if len(set(names)) != len(names):
        raise TypeMismatch("element names make two upset labels collide")
    le = ~bool_matmul(vectors, ~vectors.T)
    lat = UpsetLattice(Poset(names, le, check=False), 0, len(masks) - 1, None, None)
    vectors.setflags(write=False)
    lat.base = x
    lat.masks = masks
    lat.vectors = vectors
    lat.lookup = {m: i for i, m in enumerate(masks)}
    return lat


def dual_space(x: Poset, max_size: int | None = None) -> UpsetLattice:
    check_size("poset", len(x), current_limits(max_size).space)
    return _upset_lattice(x)


def dual_map_space(f: MonotoneMap, max_size: int | None = None) -> DLMorphism:
    """Inverse image ``2^Y -> 2^X`` of ``f: X -> Y``."""
    src, dst = dual_space(f.cod, max_size), dual_space(f.dom, max_size)
    pre = _row_masks(src.vectors[:, f.idx])
    idx = [dst.lookup[m] for m in pre]
    return DLMorphism(src, dst, MonotoneMap(src.carrier, dst.carrier, idx, check=False))


def dual_algebra(a: FinDL) -> Poset:
    return prime_filter_members(a)[0]


def dual_map_algebra(g: DLMorphism) -> MonotoneMap:
    """Inverse image ``PF(A) -> PF(B)`` of ``g: B -> A``."""
    src, src_members = prime_filter_members(g.cod)
    dst, dst_members = prime_filter_members(g.dom)
    lookup = {row.tobytes(): i for i, row in enumerate(dst_members)}
    pre = src_members[:, g.idx]
    try:
        idx = [lookup[row.tobytes()] for row in pre]
    except KeyError:
        raise TypeMismatch("inverse image of a prime filter is not a prime filter; "
                           "is the map a lattice homomorphism?") from None
    return MonotoneMap(src, dst, idx, check=False)


def unit_space(x: Poset) -> MonotoneMap:
    """``x |-> {U | x in U}``, from ``X`` to the prime filters of ``2^X``."""
    lat = dual_space(x)
    pf, members = prime_filter_members(lat)
    lookup = {row.tobytes(): i for i, row in enumerate(members)}
    idx = []
    for i in range(len(x)):
        row = np.ascontiguousarray(lat.vectors[:, i])
        if row.tobytes() not in lookup:
            raise IsoFailure(f"{x.elements[i]!r} does not give a prime filter",
                             witness=x.elements[i])
        idx.append(lookup[row.tobytes()])
    eta = MonotoneMap(x, pf, idx)
    if not is_iso(eta):
        raise IsoFailure("unit on the space side is not an isomorphism")
    return eta


def unit_algebra(a: FinDL) -> DLMorphism:
    """``a |-> {F | a in F}``, from ``A`` to the upsets of its prime filters."""
    pf, members = prime_filter_members(a)
    lat = dual_space(pf, max_size=max(len(pf), current_limits().space))
    idx = [lat.lookup[m] for m in _row_masks(members.T)]
    eta = MonotoneMap(a.carrier, lat.carrier, idx)
    if not is_iso(eta):
        raise IsoFailure("unit on the algebra side is not an isomorphism")
    return validate_dl_morphism(a, lat, eta)


class DualityWitness(NamedTuple):
    unit_space: MonotoneMap
    unit_algebra: DLMorphism


def unit_isos(x: Poset, a: FinDL) -> DualityWitness:
    return DualityWitness(unit_space(x), unit_algebra(a))


# relations


def dual_rel_matrices(x: Poset, y: Poset, stack: np.ndarray) -> np.ndarray:
    """Batched ``{(A, B) | R[A] <= B}`` for a stack of relation matrices ``(N, |X|, |Y|)``."""
    ux, uy = dual_space(x).vectors, dual_space(y).vectors
    stack = np.asarray(stack, dtype=np.float32)
    if len(x) == 0 or len(y) == 0:
        # every upset pair qualifies: the image of an upset of nothing is empty,
        # and an empty codomain has only the empty upset
        return np.ones((stack.shape[0], len(ux), len(uy)), dtype=bool)
    image = np.tensordot(stack, ux.astype(np.float32), axes=([1], [1])) > 0  # (N, |Y|, kX)
    escapes = np.tensordot(image.astype(np.float32), (~uy).astype(np.float32),
                           axes=([1], [1]))  # (N, kX, kY)
    return escapes == 0


def _dl_rel(x: Poset, y: Poset, m: np.ndarray) -> DLRel:
    a, b = dual_space(x), dual_space(y)
    return make_dl_rel(a, b, WeakRel(a.carrier, b.carrier, m))


def dual_rel_formula(r: WeakRel) -> DLRel:
    """Pairs of upsets ``(A, B)`` with ``R[A]`` inside ``B``."""
    return _dl_rel(r.dom, r.cod, dual_rel_matrices(r.dom, r.cod, r.m[None])[0])


def _need_dl(r) -> DLRel:
    if not isinstance(r, DLRel):
        raise TypeMismatch("the algebra side expects a lattice relation")
    return r


def _need_space(r) -> WeakRel:
    if not isinstance(r, WeakRel):
        raise TypeMismatch("the space side expects a weakening relation between posets")
    return r


def _pf_rel(r: DLRel, m: np.ndarray) -> WeakRel:
    return WeakRel(dual_algebra(r.dom), dual_algebra(r.cod), m)


def dual_rel_via_span(r, direction: Direction, materialize: bool = False):
    """Tabulate ``r`` as a span, dualize both legs, read off the cospan's relation."""
    if direction == SPACE_TO_ALGEBRA:
        r = _need_space(r)
        p, q = graph(r)
        if materialize:
            big = max(len(p.dom), current_limits().space)
            jp, kq = dual_map_space(p, big), dual_map_space(q, big)
            got = rel_of_cospan(Cospan(jp.map, kq.map))
            return _dl_rel(r.dom, r.cod, got.m)
        ux, uy = dual_space(r.dom).vectors, dual_space(r.cod).vectors
        left, right = ux[:, p.idx], uy[:, q.idx]  # p^-1(A), q^-1(B) inside the apex
        return _dl_rel(r.dom, r.cod, ~bool_matmul(left, ~right.T))
    if direction == ALGEBRA_TO_SPACE:
        r = _need_dl(r)
        if materialize:
            t = dl_tabulate(r)
            got = rel_of_cospan(Cospan(dual_map_algebra(t.left), dual_map_algebra(t.right)))
            return _pf_rel(r, got.m)
        fa, fb = prime_filter_members(r.dom)[1], prime_filter_members(r.cod)[1]
        rows, cols = np.nonzero(r.rel.m)
        left, right = fa[:, rows], fb[:, cols]  # p^-1(x), q^-1(y) inside the apex
        return _pf_rel(r, ~bool_matmul(left, ~right.T))
    raise ValueError(f"unknown direction {direction!r}")


def dual_rel_via_cospan(r, direction: Direction, materialize: bool = False):
    """Write ``r`` as a cospan, dualize both legs, read off the span's relation.

    On the algebra side the cospan is the lattice cocomma of the tabulation,
    itself computed by duality.
    """
    if direction == SPACE_TO_ALGEBRA:
        r = _need_space(r)
        j, k = cocomma(graph(r))
        if materialize:
            big = max(len(j.cod), current_limits().space)
            dj, dk = dual_map_space(j, big), dual_map_space(k, big)
            got = rel_of_span(Span(dj.map, dk.map))
            return _dl_rel(r.dom, r.cod, got.m)
        check_size("collage", len(j.cod), 2 * current_limits().space)
        uc = dual_space(j.cod, max_size=len(j.cod)).vectors
        ux, uy = dual_space(r.dom).vectors, dual_space(r.cod).vectors
        left, right = uc[:, j.idx], uc[:, k.idx]  # j^-1(U), k^-1(U)
        below = ~bool_matmul(ux, ~left.T)  # A inside j^-1(U)
        above = ~bool_matmul(right, ~uy.T)  # k^-1(U) inside B
        return _dl_rel(r.dom, r.cod, bool_matmul(below, above))
    if direction == ALGEBRA_TO_SPACE:
        r = _need_dl(r)
        if materialize:
            c = dl_cocomma_via_duality(dl_tabulate(r), verify=False)
            got = rel_of_span(Span(dual_map_algebra(c.left), dual_map_algebra(c.right)))
            return _pf_rel(r, got.m)
        pfa, fa = prime_filter_members(r.dom)
        pfb, fb = prime_filter_members(r.cod)
        # comma of the dual span: prime filter pairs whose preimages are nested
        comma_m = dual_rel_via_span(r, ALGEBRA_TO_SPACE).m
        xs, ys = np.nonzero(comma_m)
        # the lattice cocomma is Up(K); its prime filters are the principal ones at
        # each kappa in K, and pulling back along j gives {a | a in x_kappa}
        lookup_a = {row.tobytes(): i for i, row in enumerate(fa)}
        lookup_b = {row.tobytes(): i for i, row in enumerate(fb)}
        jm = fa[xs].T  # jm[a, kappa]: kappa in j(a)
        km = fb[ys].T
        left = [lookup_a[np.ascontiguousarray(jm[:, t]).tobytes()] for t in range(len(xs))]
        right = [lookup_b[np.ascontiguousarray(km[:, t]).tobytes()] for t in range(len(ys))]
        down = pfa.le[:, left]
        up = pfb.le[right, :]
        return _pf_rel(r, bool_matmul(down, up))
    raise ValueError(f"unknown direction {direction!r}")


def dl_cocomma_via_duality(s: DLSpan, verify: bool = True, max_lattice: int = 4) -> DLCospan:
    """Lattice cocomma: dualize the span, take the comma of posets, dualize back."""
    a, b = s.left.cod, s.right.cod
    k_span = comma(Cospan(dual_map_algebra(s.left), dual_map_algebra(s.right)))
    big = max(len(k_span.apex), len(k_span.source), len(k_span.target),
              current_limits().space)
    up_left = dual_map_space(k_span.left, big)
    up_right = dual_map_space(k_span.right, big)
    result = DLCospan(compose_dl(up_left, unit_algebra(a)),
                      compose_dl(up_right, unit_algebra(b)))
    w = lax_violation(s.span, result.cospan)
    if w is not None:
        raise OrdRelError(f"computed cocomma is not a cocone at {w!r}", witness=w)
    if verify:
        from .enumerate import enumerate_lattices
        verify_cocomma_universal(s, result, enumerate_lattices(max_lattice))
    return result


def verify_cocomma_universal(s: DLSpan, c: DLCospan, lattices) -> None:
    """Every cocone into a listed lattice factors uniquely through ``c``."""
    a, b = s.left.cod, s.right.cod
    p, q = s.left.idx, s.right.idx
    for lat in lattices:
        mediators = list(dl_homs(c.apex, lat))
        for j2 in dl_homs(a, lat):
            for k2 in dl_homs(b, lat):
                if not lat.carrier.le[j2.idx[p], k2.idx[q]].all():
                    continue
                found = [h for h in mediators
                         if np.array_equal(h.idx[c.left.idx], j2.idx)
                         and np.array_equal(h.idx[c.right.idx], k2.idx)]
                if len(found) != 1:
                    raise OrdRelError(f"{len(found)} mediating maps into {lat!r}",
                                      witness=(j2.map.as_dict(), k2.map.as_dict()))


def extend_upset_along_embedding(f: MonotoneMap, upset) -> frozenset[str]:
    """Extend an upset of the domain to one of the codomain that pulls back to it."""
    if not classify_map(f).embedding:
        raise NotAnEmbedding("map does not reflect the order")
    p = f.dom.mask_of(upset)
    if not f.dom.is_upset(p):
        raise TypeMismatch("input is not an upset", witness=sorted(upset))
    q = f.cod.up_closure(f.image(p))
    if f.preimage(q) != p:
        raise NotAnEmbedding("extension does not restrict back to the input")
    return f.cod.names_of(q)


def roundtrip_relation(r: WeakRel) -> tuple[WeakRel, dict]:
    """Dualize twice and pull back along the unit isomorphisms."""
    once = dual_rel_via_span(r, SPACE_TO_ALGEBRA)
    twice = dual_rel_via_span(once, ALGEBRA_TO_SPACE)
    back = restrict(twice, unit_space(r.dom), unit_space(r.cod))
    diff = back.m ^ r.m
    witness = None
    if diff.any():
        i, j = map(int, np.argwhere(diff)[0])
        witness = (r.dom.elements[i], r.cod.elements[j])
    return twice, {"equal": witness is None, "pairs": len(r), "dual_pairs": len(once),
                   "double_dual_pairs": len(twice), "witness": witness}


# preconditions for lifting a duality from maps to relations


class Functor(NamedTuple):
    """A contravariant assignment on objects and maps, landing in posets."""
    name: str
    obj: Callable
    map: Callable


def space_duality(max_size: int | None = None) -> Functor:
    return Functor("upsets",
                   lambda x: dual_space(x, max_size).carrier,
                   lambda f: dual_map_space(f, max_size).map)


def algebra_duality() -> Functor:
    return Functor("prime filters", dual_algebra, dual_map_algebra)


def _entry(check: str, instance: str, ok: bool, witness=None) -> dict:
    return {"check": check, "instance": instance, "pass": bool(ok), "witness": witness}


def _dual_square(func: Functor, sq_maps) -> Square:
    p, q, j, k = sq_maps
    return Square(Span(func.map(j), func.map(k)), Cospan(func.map(p), func.map(q)))


def _underlying(f):
    return f.map if isinstance(f, DLMorphism) else f


def check_extension_preconditions(func: Functor, side: str, max_size: int = 3,
                                  square_size: int = 2) -> list[dict]:
    """Check the three conditions on ``func`` over generated instances.

    Images of maps must have adjoints, exact squares must go to exact squares,
    and surjections must go to embeddings (embeddings to surjections is
    reported too). Any exception raised by ``func`` counts as a failure.
    """
    from .enumerate import algebra_instances, space_instances
    if side == "space":
        maps, squares = space_instances(max_size, square_size)
    elif side == "algebra":
        maps, squares = algebra_instances(max_size)
    else:
        raise ValueError("side must be 'space' or 'algebra'")
    report = []
    for label, f in maps:
        base = _underlying(f)
        try:
            image = func.map(f)
            got = recover_map_from_adjunction(companion(image), conjoint(image))
            report.append(_entry("adjoints", label, got == image))
        except OrdRelError as e:
            report.append(_entry("adjoints", label, False, str(e)))
            continue
        surjective, embedding = classify_map(base)
        img = classify_map(image)
        if surjective:
            report.append(_entry("surjections-to-embeddings", label, img.embedding,
                                 None if img.embedding else label))
        if embedding:
            report.append(_entry("embeddings-to-surjections", label, img.surjective,
                                 None if img.surjective else label))
    for label, sq_maps in squares:
        try:
            ex = is_exact(_dual_square(func, sq_maps))
            report.append(_entry("exact-squares", label, ex.exact, ex.witness))
        except OrdRelError as e:
            report.append(_entry("exact-squares", label, False, str(e)))
    return report
