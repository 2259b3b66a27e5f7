import numpy as np
import pytest
from hypothesis import given, settings

from ordrel.enumerate import canonical_form, enumerate_posets, posets_up_to
from ordrel.errors import (AntisymmetryViolation, DuplicateElement, NotMonotone,
                           SizeGuard, UnknownElement)
from ordrel.oracles import brute_posets, brute_upsets, order_pairs
from ordrel.poset import (MonotoneMap, Poset, all_maps, chain, classify_map, compose,
                          discrete, factorize, identity_map, is_iso, opposite, product,
                          reflect_preorder, validate_poset)

from conftest import posets, vee


def test_validate_examples():
    d2 = validate_poset(["x", "y"], [])
    assert d2.pairs() == [("x", "x"), ("y", "y")]
    c2 = validate_poset(["0", "1"], [("0", "1")])
    assert c2 == chain(2)
    with pytest.raises(AntisymmetryViolation) as e:
        validate_poset(["x", "y"], [("x", "y"), ("y", "x")])
    assert set(e.value.witness) == {"x", "y"}


def test_validate_closes_generators():
    p = validate_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq("a", "c")
    assert p.covers() == [("a", "b"), ("b", "c")]


def test_validate_rejects_bad_names():
    with pytest.raises(DuplicateElement):
        validate_poset(["a", "a"], [])
    with pytest.raises(UnknownElement):
        validate_poset(["a"], [("a", "z")])


def test_empty_poset_is_legal():
    p = validate_poset([], [])
    assert len(p) == 0 and p.upsets() == (0,)


def test_opposite(c2, d2, c3):
    assert opposite(c2).leq("1", "0") and not opposite(c2).leq("0", "1")
    assert opposite(d2) == d2
    assert opposite(opposite(c3)) == c3


def test_product(c2):
    sq = product(c2, c2)
    assert sq.leq("(0,0)", "(1,1)")
    assert not sq.leq("(0,1)", "(1,0)") and not sq.leq("(1,0)", "(0,1)")
    assert order_pairs(sq) == {(f"({a},{b})", f"({c},{d})")
                               for a in "01" for b in "01" for c in "01" for d in "01"
                               if a <= c and b <= d}
    assert len(product(c2, discrete(0))) == 0
    assert product(c2, discrete(["u"])).covers() == [("(0,u)", "(1,u)")]


def test_classify_examples(c2, c3, d2):
    assert classify_map(identity_map(c3)) == (True, True)
    one = discrete(["u"])
    assert classify_map(MonotoneMap.from_dict(c2, one, {"0": "u", "1": "u"})) == (True, False)
    inc = MonotoneMap.from_dict(d2, c2, {"x": "0", "y": "1"})
    assert classify_map(inc) == (True, False)


def test_factorize(c2, d2):
    f = MonotoneMap.from_dict(d2, c2, {"x": "0", "y": "0"})
    e, m = factorize(f)
    assert len(e.cod) == 1
    assert classify_map(e).surjective and classify_map(m).embedding
    assert compose(m, e) == f
    surj = MonotoneMap.from_dict(c2, discrete(["u"]), {"0": "u", "1": "u"})
    e, m = factorize(surj)
    assert is_iso(m)


def test_not_monotone(c2):
    with pytest.raises(NotMonotone):
        MonotoneMap.from_dict(c2, c2, {"0": "1", "1": "0"})


def test_reflect_preorder_names_classes():
    pre = np.array([[1, 1, 1], [1, 1, 1], [0, 0, 1]], dtype=bool)
    q, cls = reflect_preorder(["b", "a", "c"], pre)
    assert q.elements == ("a", "c")
    assert cls.tolist() == [0, 0, 1]
    assert q.leq("a", "c")


def test_enumerate_counts():
    assert [sum(1 for _ in enumerate_posets(n)) for n in range(5)] == [1, 1, 3, 19, 219]
    assert len(posets_up_to(3, up_to_iso=True)) == 1 + 1 + 2 + 5


def test_enumerate_matches_oracle():
    for n in range(4):
        names = [str(i) for i in range(n)]
        ours = {frozenset(order_pairs(p)) for p in enumerate_posets(n, names)}
        assert ours == set(brute_posets(names))


def test_enumerate_revalidates():
    for p in enumerate_posets(3):
        assert validate_poset(p.elements, p.pairs()) == p


def test_enumerate_guard():
    with pytest.raises(SizeGuard):
        list(enumerate_posets(6))


def test_upsets_match_oracle():
    for p in posets_up_to(3) + [vee()]:
        assert {p.names_of(m) for m in p.upsets()} == set(brute_upsets(p))


def test_all_maps_match_brute_force(c2, c3):
    import itertools
    for dom, cod in [(c2, c3), (vee(), c2), (c3, vee())]:
        want = set()
        for images in itertools.product(range(len(cod)), repeat=len(dom)):
            if all(cod.le[images[i], images[j]] for i, j in np.argwhere(dom.le)):
                want.add(images)
        assert {tuple(f.idx.tolist()) for f in all_maps(dom, cod)} == want


@settings(max_examples=60, deadline=None)
@given(posets())
def test_canonical_form_is_relabelling_invariant(p):
    rng = np.random.default_rng(len(p))
    perm = rng.permutation(len(p))
    q = Poset(p.elements, p.le[np.ix_(perm, perm)])
    assert canonical_form(p.le) == canonical_form(q.le)


@settings(max_examples=60, deadline=None)
@given(posets())
def test_cover_closure_recovers_order(p):
    assert validate_poset(p.elements, p.covers()) == p


@settings(max_examples=60, deadline=None)
@given(posets(5))
def test_upsets_are_upsets(p):
    ups = p.upsets()
    assert len(set(ups)) == len(ups)
    assert all(p.is_upset(m) for m in ups)
    assert all(p.up_closure(m) == m for m in ups)
