"""Independent brute-force versions of the main constructions.

Everything here works on plain Python sets of names and enumerates whole
power sets, so it shares no code path with the matrix implementations it
is used to check. Only usable on very small inputs.
"""
import itertools

from .poset import Poset


def subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        for combo in itertools.combinations(items, k):
            yield frozenset(combo)


def order_pairs(p: Poset) -> set:
    return {(a, b) for a in p.elements for b in p.elements if p.leq(a, b)}


def brute_posets(names) -> list[frozenset]:
    """Every partial order on ``names``, as a set of pairs."""
    names = list(names)
    off = [(a, b) for a in names for b in names if a != b]
    refl = {(a, a) for a in names}
    found = []
    for extra in subsets(off):
        rel = refl | extra
        if any((b, a) in rel for a, b in extra):
            continue
        if all((a, d) in rel for a, b in rel for c, d in rel if b == c):
            found.append(frozenset(rel))
    return found


def brute_upsets(p: Poset) -> list[frozenset]:
    le = order_pairs(p)
    return [s for s in subsets(p.elements)
            if all(b in s for a in s for b in p.elements if (a, b) in le)]


def brute_weakening_relations(x: Poset, y: Poset) -> list[frozenset]:
    lx, ly = order_pairs(x), order_pairs(y)
    cells = [(a, b) for a in x.elements for b in y.elements]
    out = []
    for r in subsets(cells):
        if all((a2, b2) in r for a, b in r for a2 in x.elements for b2 in y.elements
               if (a2, a) in lx and (b, b2) in ly):
            out.append(r)
    return out


def brute_compose(r, s) -> frozenset:
    return frozenset((a, c) for a, b in r for b2, c in s if b == b2)


def brute_dual(r, x: Poset, y: Poset) -> frozenset:
    """Pairs of upsets (as frozensets of names) with the image of the first inside the second."""
    out = set()
    for a in brute_upsets(x):
        image = {b for (s, b) in r if s in a}
        for b in brute_upsets(y):
            if image <= b:
                out.add((a, b))
    return frozenset(out)


def brute_hoare_implementation(spec, x: Poset, y: Poset) -> frozenset:
    """Union of every weakening relation whose theory contains ``spec``."""
    best = set()
    for r in brute_weakening_relations(x, y):
        if spec <= brute_dual(r, x, y):
            best |= r
    return frozenset(best)


def brute_lattice_ops(p: Poset):
    le = order_pairs(p)

    def glb(a, b):
        lower = [c for c in p.elements if (c, a) in le and (c, b) in le]
        return next(c for c in lower if all((d, c) in le for d in lower))

    def lub(a, b):
        upper = [c for c in p.elements if (a, c) in le and (b, c) in le]
        return next(c for c in upper if all((c, d) in le for d in upper))

    return glb, lub


def brute_prime_filters(p: Poset) -> list[frozenset]:
    """Proper, nonempty, meet-closed upsets that are prime, straight from the definition."""
    glb, lub = brute_lattice_ops(p)
    found = []
    for f in brute_upsets(p):
        if not f or len(f) == len(p):
            continue
        if not all(glb(a, b) in f for a in f for b in f):
            continue
        if all(a in f or b in f for a in p.elements for b in p.elements if lub(a, b) in f):
            found.append(f)
    return found


def brute_dl_relations(a: Poset, b: Poset) -> list[frozenset]:
    ga, la = brute_lattice_ops(a)
    gb, lb = brute_lattice_ops(b)
    bottom_a = next(x for x in a.elements if all(a.leq(x, y) for y in a.elements))
    top_a = next(x for x in a.elements if all(a.leq(y, x) for y in a.elements))
    bottom_b = next(x for x in b.elements if all(b.leq(x, y) for y in b.elements))
    top_b = next(x for x in b.elements if all(b.leq(y, x) for y in b.elements))
    out = []
    for r in brute_weakening_relations(a, b):
        if (bottom_a, bottom_b) not in r or (top_a, top_b) not in r:
            continue
        if all((ga(x, x2), gb(y, y2)) in r and (la(x, x2), lb(y, y2)) in r
               for x, y in r for x2, y2 in r):
            out.append(r)
    return out
