"""Uses of the relational duality: Hoare-style specifications, preorder
quotients, interpolative relations, framed cells and order duals."""
from typing import NamedTuple

import numpy as np

from .duality import dual_map_space, dual_rel_formula, dual_space
from .errors import FormulationDisagreement, IsoFailure, NotAPreorder, TypeMismatch
from .lattice import FinDL, validate_dl
from .poset import MonotoneMap, Poset, bool_matmul, discrete, is_iso
from .relations import (WeakRel, companion, compose_rel, conjoint, identity_rel,
                        restrict)
from .spans import coinserter, graph, inserter


def hoare_theory(program: WeakRel) -> WeakRel:
    """All triples ``(A, B)`` of upsets with ``program[A]`` inside ``B``."""
    return dual_rel_formula(program).rel


def hoare_implementation(spec: WeakRel, x: Poset, y: Poset) -> WeakRel:
    """Largest program meeting every triple: ``x -> y`` is allowed unless some
    triple ``(A, B)`` has ``x`` in ``A`` and ``y`` outside ``B``."""
    ux, uy = dual_space(x), dual_space(y)
    if spec.dom != ux.carrier or spec.cod != uy.carrier:
        raise TypeMismatch("specification does not run between the upset lattices")
    pre, post = ux.vectors, uy.vectors
    rows, cols = np.nonzero(spec.m)
    # forbidden[x, y]: some triple has x in pre and y outside post
    forbidden = bool_matmul(pre[rows].T, ~post[cols])
    return WeakRel(x, y, ~forbidden)


def galois_check(program: WeakRel, spec: WeakRel) -> bool:
    """``spec <= theory(program)`` exactly when ``program <= implementation(spec)``."""
    left = spec <= hoare_theory(program)
    right = program <= hoare_implementation(spec, program.dom, program.cod)
    return left == right


def is_preorder(r: WeakRel) -> bool:
    return r.dom == r.cod and identity_rel(r.dom) <= r and compose_rel(r, r) <= r


def quotient_by_preorder(x: Poset, r: WeakRel) -> MonotoneMap:
    """Collapse ``x`` along a preorder that contains its order.

    The preorder is turned into the parallel pair given by its tabulation and
    the quotient is the coinserter of that pair.
    """
    if r.dom != x or r.cod != x:
        raise TypeMismatch("relation is not an endo-relation on the poset")
    if not is_preorder(r):
        raise NotAPreorder("relation is not reflexive and transitive")
    p, q = graph(r)
    return coinserter(p, q)


def reflexive_elements(r: WeakRel) -> list[frozenset[str]]:
    """Upsets ``A`` with ``r[A]`` inside ``A``, in the upset order of the poset."""
    if r.dom != r.cod:
        raise TypeMismatch("relation is not an endo-relation")
    x = r.dom
    return [x.names_of(m) for m in x.upsets() if r.image(m) & ~m == 0]


def reflexive_quotient_bijection(r: WeakRel) -> dict[frozenset[str], frozenset[str]]:
    """For a preorder, send each reflexive element to its image upset in the quotient."""
    e = quotient_by_preorder(r.dom, r)
    quotient = e.cod
    targets = {quotient.names_of(m) for m in quotient.upsets()}
    out = {}
    for a in reflexive_elements(r):
        img = quotient.names_of(e.image(r.dom.mask_of(a)))
        if img not in targets or img in out.values():
            raise IsoFailure("reflexive elements do not match the quotient upsets",
                             witness=sorted(a))
        if r.dom.names_of(e.preimage(quotient.mask_of(img))) != a:
            raise IsoFailure("image upset does not pull back to the same set",
                             witness=sorted(a))
        out[a] = img
    if len(out) != len(targets):
        raise IsoFailure(f"{len(out)} reflexive elements against {len(targets)} upsets")
    return out


def interpolative_check(r: WeakRel) -> tuple[bool, bool]:
    """(below the identity, every pair factors through a middle element)."""
    return r <= identity_rel(r.dom), r <= compose_rel(r, r)


class FramedCell(NamedTuple):
    """A square ``S: A -> B`` over ``R: C -> D`` along ``f: A -> C`` and ``g: B -> D``."""
    inner: WeakRel
    f: MonotoneMap
    g: MonotoneMap
    outer: WeakRel


def framed_restriction(r: WeakRel, f: MonotoneMap, g: MonotoneMap) -> WeakRel:
    return restrict(r, f, g)


def framed_extension(m: WeakRel, f: MonotoneMap, g: MonotoneMap) -> WeakRel:
    """Push ``m: A -> B`` forward to ``C -> D`` as ``f^*`` then ``m`` then ``g_*``."""
    return compose_rel(compose_rel(conjoint(f), m), companion(g))


def framed_cell_formulations(cell: FramedCell) -> dict[str, bool]:
    s, f, g, r = cell
    if f.dom != s.dom or g.dom != s.cod or f.cod != r.dom or g.cod != r.cod:
        raise TypeMismatch("cell boundaries do not match")
    return {
        "restriction": s <= restrict(r, f, g),
        "lax-square": compose_rel(s, companion(g)) <= compose_rel(companion(f), r),
        "extension": framed_extension(s, f, g) <= r,
        "conjoint-sandwich": s <= compose_rel(compose_rel(companion(f), r), conjoint(g)),
    }


def framed_cell_check(cell: FramedCell) -> bool:
    """Whether the cell holds; all four ways of saying so must agree."""
    got = framed_cell_formulations(cell)
    if len(set(got.values())) != 1:
        raise FormulationDisagreement(f"formulations disagree: {got}", witness=got)
    return next(iter(got.values()))


def order_dual_via_inserter(x: Poset) -> FinDL:
    """Recover ``2^X`` from the underlying set of ``x`` and its order.

    Dualize the tabulation of the order on the discrete set to a parallel
    pair of lattice maps and keep the subsets where the first sits below the
    second; those are exactly the upsets.
    """
    flat = discrete(list(x.elements))
    order = WeakRel(flat, flat, x.le, check=False)
    p, q = graph(order)
    big = max(len(p.dom), len(x))
    j, k = dual_map_space(p, big).map, dual_map_space(q, big).map
    incl = inserter(j, k)
    got = validate_dl(incl.dom)
    want = dual_space(x)
    names = {}
    for i, m in enumerate(want.masks):
        names[x.set_literal(m)] = i
    try:
        idx = [names[e] for e in got.elements]
    except KeyError as e:
        raise IsoFailure(f"inserter contains a non-upset {e.args[0]}") from None
    if not is_iso(MonotoneMap(got.carrier, want.carrier, idx)):
        raise IsoFailure("inserter is not isomorphic to the upset lattice")
    return got
