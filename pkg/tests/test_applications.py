import itertools

import pytest

from ordrel import applications
from ordrel.applications import (FramedCell, framed_cell_check, framed_extension,
                                 framed_restriction, galois_check, hoare_implementation,
                                 hoare_theory, interpolative_check, is_preorder,
                                 order_dual_via_inserter, quotient_by_preorder,
                                 reflexive_elements, reflexive_quotient_bijection)
from ordrel.duality import dual_space
from ordrel.enumerate import posets_up_to
from ordrel.errors import NotAPreorder
from ordrel.oracles import brute_hoare_implementation
from ordrel.poset import MonotoneMap, all_maps, chain, discrete, identity_map, is_iso
from ordrel.relations import (empty_rel, enumerate_relations, identity_rel, total_rel,
                              weakening_closure)
from ordrel.spans import Cospan, rel_of_cospan

from conftest import vee


def names(s):
    return frozenset(s.strip("{}").split(",")) - {""}


def test_theory_examples(d2, c2):
    th = hoare_theory(identity_rel(d2))
    assert {(names(a), names(b)) for a, b in th.pairs()} == {
        (a, b) for a in map(names, dual_space(d2).elements)
        for b in map(names, dual_space(d2).elements) if a <= b}
    th = hoare_theory(total_rel(c2, c2))
    assert set(th.pairs()) == {(a, b) for a in dual_space(c2).elements
                               for b in dual_space(c2).elements
                               if a == "{}" or b == "{0,1}"}


def test_implementation_examples(d2):
    u = dual_space(d2).carrier
    assert hoare_implementation(empty_rel(u, u), d2, d2) == total_rel(d2, d2)
    spec = weakening_closure(u, u, [("{x}", "{x}")])
    got = hoare_implementation(spec, d2, d2)
    assert set(got.pairs()) == {("x", "x"), ("y", "x"), ("y", "y")}


def test_implementation_of_theory_contains_program():
    for x in posets_up_to(2, up_to_iso=True) + [vee()]:
        for r in enumerate_relations(x, x):
            best = hoare_implementation(hoare_theory(r), x, x)
            assert r <= best
            assert hoare_theory(best) == hoare_theory(r)


def test_implementation_matches_brute_union(d2, c2):
    for x in (d2, c2):
        ux = dual_space(x)
        for spec in enumerate_relations(ux.carrier, ux.carrier):
            sets = {(names(a), names(b)) for a, b in spec.pairs()}
            assert set(hoare_implementation(spec, x, x).pairs()) == set(
                brute_hoare_implementation(sets, x, x))


def test_galois_exhaustive(d2):
    u = dual_space(d2).carrier
    for r in enumerate_relations(d2, d2):
        assert galois_check(r, hoare_theory(r))
        for s in enumerate_relations(u, u):
            assert galois_check(r, s)


def test_galois_detects_corrupted_theory(d2, monkeypatch):
    real = applications.hoare_theory

    def lossy(program):
        th = real(program)
        pairs = [p for p in th.pairs() if p != ("{}", "{}")]
        return weakening_closure(th.dom, th.cod, pairs)

    monkeypatch.setattr(applications, "hoare_theory", lossy)
    u = dual_space(d2).carrier
    results = [galois_check(r, s) for r in enumerate_relations(d2, d2)
               for s in enumerate_relations(u, u)]
    assert not all(results)


def test_quotient_examples(d2):
    assert is_iso(quotient_by_preorder(d2, identity_rel(d2)))
    assert len(quotient_by_preorder(d2, total_rel(d2, d2)).cod) == 1
    pre = weakening_closure(d2, d2, [("x", "x"), ("y", "y"), ("x", "y")])
    e = quotient_by_preorder(d2, pre)
    assert e.cod.covers() == [("x", "y")]
    with pytest.raises(NotAPreorder):
        quotient_by_preorder(d2, weakening_closure(d2, d2, [("x", "y")]))


def test_reflexive_elements(d2, c2):
    assert set(reflexive_elements(total_rel(d2, d2))) == {frozenset(), frozenset("xy")}
    assert len(reflexive_elements(identity_rel(c2))) == len(c2.upsets())
    pre = weakening_closure(d2, d2, [("x", "x"), ("y", "y"), ("x", "y")])
    assert set(reflexive_elements(pre)) == {frozenset(), frozenset("y"), frozenset("xy")}
    assert len(reflexive_quotient_bijection(pre)) == 3


def test_interpolative(c2):
    assert interpolative_check(identity_rel(c2)) == (True, True)
    below, _ = interpolative_check(weakening_closure(c2, c2, [("1", "0")]))
    assert not below
    for x in posets_up_to(3, up_to_iso=True):
        for r in enumerate_relations(x, x):
            if is_preorder(r):
                assert interpolative_check(hoare_theory(r)) == (True, True)


def test_restriction_examples(c2, d2):
    for r in enumerate_relations(c2, d2):
        assert framed_restriction(r, identity_map(c2), identity_map(d2)) == r
    for f in all_maps(d2, c2):
        for g in all_maps(vee(), c2):
            assert framed_restriction(identity_rel(c2), f, g) == rel_of_cospan(Cospan(f, g))
    one = discrete(["u"])
    for r in enumerate_relations(c2, c2):
        for a, b in itertools.product(c2.elements, repeat=2):
            f = MonotoneMap.from_dict(d2, c2, {"x": a, "y": a})
            g = MonotoneMap.from_dict(one, c2, {"u": b})
            got = framed_restriction(r, f, g)
            assert got == (total_rel(d2, one) if (a, b) in r else empty_rel(d2, one))


def test_extension_examples(c2, d2):
    for m in enumerate_relations(c2, d2):
        assert framed_extension(m, identity_map(c2), identity_map(d2)) == m
        for f in all_maps(c2, vee()):
            for g in all_maps(d2, c2):
                ext = framed_extension(m, f, g)
                assert m <= framed_restriction(ext, f, g)
    f = MonotoneMap.from_dict(d2, c2, {"x": "0", "y": "1"})
    assert framed_extension(empty_rel(d2, d2), f, f) == empty_rel(c2, c2)


def test_cell_check_examples(c2, d2):
    for r in enumerate_relations(c2, c2):
        for f in all_maps(d2, c2):
            s = framed_restriction(r, f, f)
            assert framed_cell_check(FramedCell(s, f, f, r))
    i = identity_map(c2)
    assert not framed_cell_check(FramedCell(total_rel(c2, c2), i, i, empty_rel(c2, c2)))


def test_order_dual_via_inserter(c2, d2):
    assert len(order_dual_via_inserter(c2)) == 3
    assert len(order_dual_via_inserter(d2)) == 4
    assert len(order_dual_via_inserter(vee())) == 5
    assert len(order_dual_via_inserter(chain(3))) == 4
