"""Acceptance harness: each criterion is a function returning a ``CriterionResult``.

``run_suite`` runs them in order. Sampling uses ``numpy.random.default_rng``
seeded from the config, so a given config always produces the same report.
"""
import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .applications import (FramedCell, framed_cell_formulations, framed_extension,
                           framed_restriction, galois_check, hoare_implementation,
                           hoare_theory, interpolative_check, is_preorder,
                           reflexive_elements, reflexive_quotient_bijection)
from .duality import (ALGEBRA_TO_SPACE, SPACE_TO_ALGEBRA, algebra_duality,
                      check_extension_preconditions, dl_cocomma_via_duality,
                      dual_rel_formula, dual_rel_matrices, dual_rel_via_cospan,
                      dual_rel_via_span, dual_space, roundtrip_relation,
                      space_duality, unit_space)
from .enumerate import enumerate_posets, posets_up_to
from .errors import OrdRelError
from .lattice import (DLRel, DLSpan, chain_dl, dl_relation_closure, dl_tabulate,
                      is_dl_relation, validate_dl, validate_dl_morphism)
from .oracles import brute_hoare_implementation
from .poset import all_maps, chain, classify_map, discrete, is_iso, validate_poset
from .relations import (WeakRel, compose_rel, empty_rel, enumerate_relations,
                        identity_rel, relation_stack, restrict, total_rel)
from .spans import (Cospan, Span, classify_cospan, classify_span, cocomma, comma,
                    cospan_comparison, cospan_morphisms, graph, rel_of_cospan,
                    rel_of_span, span_comparison, span_morphisms)


@dataclass(frozen=True)
class SuiteConfig:
    max_poset_size: int = 3  # exhaustive checks
    sample_poset_size: int = 4  # seeded random checks
    random_seed: int = 0
    sample_count: int = 1000
    fault: str | None = None  # "drop-pair" corrupts the double dual in the round trip
    only: tuple[int, ...] = field(default_factory=tuple)


class CriterionResult(NamedTuple):
    number: int
    name: str
    passed: bool
    detail: str
    witness: object
    seconds: float
    budget: float | None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (budget {self.budget:.0f}s)" if self.budget else ""
        text = f"[{status}] {self.number}. {self.name}: {self.detail} in {self.seconds:.1f}s{budget}"
        if not self.passed and self.witness is not None:
            text += f"; witness {self.witness}"
        return text


class Failure(Exception):
    def __init__(self, detail: str, witness=None):
        super().__init__(detail)
        self.witness = witness


def _require(ok: bool, detail: str, witness=None):
    if not ok:
        raise Failure(detail, witness)


def _labelled(cfg: SuiteConfig):
    return posets_up_to(cfg.max_poset_size)


def _all_relations(cfg: SuiteConfig):
    posets = _labelled(cfg)
    for x in posets:
        for y in posets:
            yield from enumerate_relations(x, y, limit=len(x) * len(y))


def _drop_first_pair(r: WeakRel) -> WeakRel:
    m = r.m.copy()
    hits = np.argwhere(m)
    if len(hits):
        m[tuple(hits[0])] = False
    return WeakRel(r.dom, r.cod, m, check=False)


def criterion_roundtrip(cfg: SuiteConfig) -> str:
    count = 0
    for r in _all_relations(cfg):
        twice, report = roundtrip_relation(r)
        if cfg.fault == "drop-pair":
            twice = _drop_first_pair(twice)
            back = restrict(twice, unit_space(r.dom), unit_space(r.cod))
            diff = np.argwhere(back.m ^ r.m)
            if len(diff):
                i, j = diff[0]
                report = {"equal": False,
                          "witness": (r.dom.elements[i], r.cod.elements[j])}
        _require(report["equal"], f"round trip changed a relation {r.pairs()}",
                 report["witness"])
        count += 1
    return f"{count} relations recovered exactly"


def _rng(cfg: SuiteConfig, salt: int) -> np.random.Generator:
    return np.random.default_rng([cfg.random_seed, salt])


def _random_relation(rng, x, y) -> WeakRel:
    seeds = rng.random((len(x), len(y))) < rng.uniform(0.1, 0.6)
    m = (x.le.astype(np.float32) @ seeds.astype(np.float32) @ y.le.astype(np.float32)) > 0
    return WeakRel(x, y, m)


def _functoriality_batch(x, y, z, rx, sz, dx, dz, chunk=64) -> tuple | None:
    """Compare dual(R;S) with dual(R);dual(S) for every R in ``rx`` and S in ``sz``."""
    for start in range(0, len(rx), chunk):
        r = rx[start:start + chunk].astype(np.float32)
        comp = np.tensordot(r, sz.astype(np.float32), axes=([2], [1])) > 0  # (nr,|X|,nS,|Z|)
        comp = comp.transpose(0, 2, 1, 3).reshape(len(r) * len(sz), len(x), len(z))
        direct = dual_rel_matrices(x, z, comp).reshape(len(r), len(sz), dx.shape[1] * dz.shape[2])
        prod = np.tensordot(dx[start:start + chunk].astype(np.float32),
                            dz.astype(np.float32), axes=([2], [1])) > 0  # (nr,kX,nS,kZ)
        prod = prod.transpose(0, 2, 1, 3).reshape(len(r), len(sz), dx.shape[1] * dz.shape[2])
        bad = np.argwhere((direct != prod).any(axis=2))
        if len(bad):
            i, k = bad[0]
            return start + int(i), int(k)
    return None


def criterion_functoriality(cfg: SuiteConfig) -> str:
    posets = _labelled(cfg)
    stacks = {(x, y): relation_stack(x, y, limit=len(x) * len(y))
              for x in posets for y in posets}
    duals = {key: dual_rel_matrices(key[0], key[1], st) for key, st in stacks.items()}
    pairs = 0
    for y in posets:
        for x in posets:
            rx, dx = stacks[x, y], duals[x, y]
            for z in posets:
                sz, dz = stacks[y, z], duals[y, z]
                if len(rx) == 0 or len(sz) == 0:
                    continue
                bad = _functoriality_batch(x, y, z, rx, sz, dx, dz)
                if bad is not None:
                    r = WeakRel(x, y, rx[bad[0]])
                    s = WeakRel(y, z, sz[bad[1]])
                    raise Failure("dual does not preserve composition",
                                  (r.pairs(), s.pairs()))
                pairs += len(rx) * len(sz)
    for x in posets:
        _require(dual_rel_formula(identity_rel(x)).rel == identity_rel(dual_space(x).carrier),
                 "identity not preserved on the space side", list(x.elements))
        ident = DLRel(dual_space(x), dual_space(x), identity_rel(dual_space(x).carrier))
        back = dual_rel_via_span(ident, ALGEBRA_TO_SPACE)
        _require(back == identity_rel(back.dom), "identity not preserved on the algebra side",
                 list(x.elements))
    rng = _rng(cfg, 2)
    big = list(enumerate_posets(cfg.sample_poset_size))
    for _ in range(cfg.sample_count):
        x, y, z = (big[i] for i in rng.integers(len(big), size=3))
        r, s = _random_relation(rng, x, y), _random_relation(rng, y, z)
        dr, ds = dual_rel_formula(r), dual_rel_formula(s)
        _require(dual_rel_formula(compose_rel(r, s)).rel == compose_rel(dr.rel, ds.rel),
                 "dual does not preserve composition at the sampled size",
                 (r.pairs(), s.pairs()))
        composite = DLRel(dr.dom, ds.cod, compose_rel(dr.rel, ds.rel))
        _require(dual_rel_via_span(composite, ALGEBRA_TO_SPACE)
                 == compose_rel(dual_rel_via_span(dr, ALGEBRA_TO_SPACE),
                                dual_rel_via_span(ds, ALGEBRA_TO_SPACE)),
                 "algebra-side dual does not preserve composition", (r.pairs(), s.pairs()))
    for x in big:
        _require(dual_rel_formula(identity_rel(x)).rel == identity_rel(dual_space(x).carrier),
                 "identity not preserved at the sampled size", list(x.elements))
    return (f"{pairs} composable pairs exhaustively, {cfg.sample_count} sampled triples "
            f"on {cfg.sample_poset_size}-element posets, identities on {len(posets) + len(big)} posets")


def criterion_three_paths(cfg: SuiteConfig) -> str:
    count = 0
    for r in _all_relations(cfg):
        formula = dual_rel_formula(r)
        span = dual_rel_via_span(r, SPACE_TO_ALGEBRA)
        cospan = dual_rel_via_cospan(r, SPACE_TO_ALGEBRA)
        _require(formula == span == cospan, "dual relation depends on the route", r.pairs())
        back_span = dual_rel_via_span(formula, ALGEBRA_TO_SPACE)
        back_cospan = dual_rel_via_cospan(formula, ALGEBRA_TO_SPACE)
        _require(back_span == back_cospan, "algebra-side routes disagree", r.pairs())
        count += 1
    return f"formula, span and cospan routes agree on {count} relations (both directions)"


def criterion_meet_hom(cfg: SuiteConfig) -> str:
    shapes = [chain(2), discrete(2), chain(3)]
    rng = _rng(cfg, 4)
    pairs = sampled = 0
    for x in shapes:
        for y in shapes:
            rels = list(enumerate_relations(x, y))
            duals = [dual_rel_formula(r).rel for r in rels]
            top = total_rel(dual_space(x).carrier, dual_space(y).carrier)
            _require(dual_rel_formula(empty_rel(x, y)).rel == top,
                     "dual of the empty relation is not total", (x.elements, y.elements))
            for i, j in itertools.combinations_with_replacement(range(len(rels)), 2):
                _require(dual_rel_formula(rels[i] | rels[j]).rel == duals[i] & duals[j],
                         "union not sent to intersection", (rels[i].pairs(), rels[j].pairs()))
                pairs += 1
            for _ in range(cfg.sample_count // 9 + 1):
                picks = rng.integers(len(rels), size=3)
                union = rels[picks[0]] | rels[picks[1]] | rels[picks[2]]
                meet = duals[picks[0]] & duals[picks[1]] & duals[picks[2]]
                _require(dual_rel_formula(union).rel == meet, "union of three not sent to "
                         "intersection", [rels[k].pairs() for k in picks])
                sampled += 1
    return f"{pairs} pairs exhaustively, {sampled} sampled triples, empty family on 9 shapes"


def worked_examples() -> dict[str, bool]:
    out = {}
    a = chain_dl(["0", "a", "1"])
    b = chain_dl(["0", "b", "1"])
    least = dl_relation_closure(a, b, [])
    out["least lattice relation between 3-chains"] = set(least.pairs()) == {
        ("0", "0"), ("0", "b"), ("0", "1"), ("a", "1"), ("1", "1")}
    two = chain_dl(["0", "1"])
    count = sum(is_dl_relation(two, two, r)
                for r in enumerate_relations(two.carrier, two.carrier))
    out["two lattice relations on the 2-chain"] = count == 2
    square = validate_dl(validate_poset(["0", "p", "q", "1"],
                                        [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")]))
    closed = dl_relation_closure(square, square, [("0", "0")], negation_swap=True)
    out["negation closure of the bottom pair is total"] = (
        closed.rel == total_rel(square.carrier, square.carrier))
    total = DLRel(a, a, total_rel(a.carrier, a.carrier))
    c = dl_cocomma_via_duality(dl_tabulate(total))
    out["cocomma of the total relation on the 3-chain is trivial"] = len(c.apex) == 1
    two_b = chain_dl(["0", "1"])
    ident = validate_dl_morphism(a, a, {"0": "0", "a": "a", "1": "1"})
    q = validate_dl_morphism(a, two_b, {"0": "0", "a": "0", "1": "1"})
    c = dl_cocomma_via_duality(DLSpan(ident, q))
    k_iso = is_iso(c.right.map)
    # the left leg must be q followed by the identification of the apex with B
    same = all(c.right.map.idx[two_b.position(q(e))] == c.left.map.idx[a.position(e)]
               for e in a.elements)
    out["free lattice cocomma has a non-embedding leg"] = (
        k_iso and same and not classify_map(c.left.map).embedding)
    return out


def criterion_fixtures(cfg: SuiteConfig) -> str:
    got = worked_examples()
    bad = [k for k, v in got.items() if not v]
    _require(not bad, "fixture mismatch", bad)
    return f"{len(got)} fixtures reproduced"


def criterion_exactness(cfg: SuiteConfig) -> str:
    space = check_extension_preconditions(space_duality(max_size=cfg.max_poset_size ** 2),
                                          "space", cfg.max_poset_size, cfg.max_poset_size)
    algebra = check_extension_preconditions(algebra_duality(), "algebra", cfg.max_poset_size)
    for side, rep in (("space", space), ("algebra", algebra)):
        bad = [e for e in rep if not e["pass"]]
        _require(not bad, f"{side} side: {len(bad)} failing checks",
                 bad[0] if bad else None)
    squares = sum(e["check"] == "exact-squares" for e in space + algebra)
    return f"{squares} exact squares stay exact ({len(space) + len(algebra)} checks in all)"


def criterion_galois(cfg: SuiteConfig) -> str:
    checks = 0
    for x in (discrete(["x", "y"]), chain(2)):
        ux = dual_space(x)
        programs = list(enumerate_relations(x, x))
        specs = list(enumerate_relations(ux.carrier, ux.carrier))
        for s in specs:
            for r in programs:
                _require(galois_check(r, s), "Galois condition fails", (r.pairs(), s.pairs()))
                checks += 1
            # the oracle speaks in sets of element names
            spec_sets = {(x.names_of(ux.masks[ux.position(a)]),
                          x.names_of(ux.masks[ux.position(b)])) for a, b in s.pairs()}
            closed = set(hoare_implementation(s, x, x).pairs())
            _require(closed == set(brute_hoare_implementation(spec_sets, x, x)),
                     "closed form differs from the brute-force union", s.pairs())
    return f"{checks} program/specification pairs, closed form matches the brute union"


def criterion_preorders(cfg: SuiteConfig) -> str:
    count = 0
    for x in _labelled(cfg):
        for r in enumerate_relations(x, x, limit=len(x) ** 2):
            if not is_preorder(r):
                continue
            below, interp = interpolative_check(hoare_theory(r))
            _require(below and interp, "dual of a preorder is not interpolative below identity",
                     r.pairs())
            bij = reflexive_quotient_bijection(r)
            _require(len(bij) == len(reflexive_elements(r)), "bijection incomplete", r.pairs())
            count += 1
    return f"{count} preorders, each with an explicit bijection onto the quotient's upsets"


def criterion_framed(cfg: SuiteConfig) -> str:
    shapes = posets_up_to(2, up_to_iso=True)[1:]
    cells = 0
    for a, b, c, d in itertools.product(shapes, repeat=4):
        inner = list(enumerate_relations(a, b))
        outer = list(enumerate_relations(c, d))
        for f in all_maps(a, c):
            for g in all_maps(b, d):
                for s in inner:
                    ext = framed_extension(s, f, g)
                    _require(s <= framed_restriction(ext, f, g), "unit of the adjunction fails",
                             s.pairs())
                    for r in outer:
                        got = framed_cell_formulations(FramedCell(s, f, g, r))
                        _require(len(set(got.values())) == 1, "formulations disagree",
                                 (s.pairs(), r.pairs(), got))
                        cells += 1
                for r in outer:
                    _require(framed_extension(framed_restriction(r, f, g), f, g) <= r,
                             "counit of the adjunction fails", r.pairs())
    units = 0
    for r in _all_relations(cfg):
        twice, _ = roundtrip_relation(r)
        ex, ey = unit_space(r.dom), unit_space(r.cod)
        got = framed_cell_formulations(FramedCell(r, ex, ey, twice))
        _require(all(got.values()), "round-trip unit cell fails", r.pairs())
        _require(restrict(twice, ex, ey) == r, "unit cell is not an equality", r.pairs())
        units += 1
    return f"{cells} cells agree, adjunction holds, {units} round-trip unit cells are equalities"


def criterion_comma_cocomma(cfg: SuiteConfig) -> str:
    reps = posets_up_to(cfg.max_poset_size, up_to_iso=True)
    small = posets_up_to(2, up_to_iso=True)
    fixed = 0
    for a in reps:
        for b in reps:
            rels = list(enumerate_relations(a, b, limit=len(a) * len(b)))
            collages = set()
            for r in rels:
                g = graph(r)
                k = cocomma(g)
                _require(comma(k) == g, "comma of the collage is not the graph", r.pairs())
                _require(classify_span(g).graph and classify_cospan(k).collage,
                         "graph or collage not recognised", r.pairs())
                _require(rel_of_cospan(k) == r and rel_of_span(g) == r,
                         "represented relation changed", r.pairs())
                collages.add(k)
                fixed += 1
            _require(len(collages) == len(rels), "collages not distinct",
                     (a.elements, b.elements))
    spans = cospans = 0
    rng = _rng(cfg, 10)
    by_feet: dict = {}
    for a in reps:
        for b in reps:
            for w in small:
                for p in all_maps(w, a):
                    for q in all_maps(w, b):
                        s = Span(p, q)
                        h, closed = span_comparison(s)
                        _require(next(span_morphisms(s, closed), None) is not None,
                                 "no unit into the closure", str(s))
                        _require(comma(cocomma(closed)) == closed, "closure not idempotent",
                                 str(s))
                        _require(is_iso(h) == classify_span(s).graph,
                                 "fixed points are not the graphs", str(s))
                        by_feet.setdefault((a, b), []).append((s, closed))
                        spans += 1
            for c in small:
                for j in all_maps(a, c):
                    for k in all_maps(b, c):
                        d = Cospan(j, k)
                        h, opened = cospan_comparison(d)
                        _require(next(cospan_morphisms(opened, d), None) is not None,
                                 "no counit out of the interior", str(d))
                        _require(cocomma(comma(opened)) == opened, "interior not idempotent",
                                 str(d))
                        _require(is_iso(h) == classify_cospan(d).collage,
                                 "fixed points are not the collages", str(d))
                        cospans += 1
    monotone = 0
    feet = [key for key, v in by_feet.items() if len(v) > 1]
    for _ in range(cfg.sample_count):
        group = by_feet[feet[rng.integers(len(feet))]]
        (s, cs), (t, ct) = (group[i] for i in rng.integers(len(group), size=2))
        if next(span_morphisms(s, t), None) is not None:
            _require(next(span_morphisms(cs, ct), None) is not None,
                     "closure not monotone", (str(s), str(t)))
            monotone += 1
    return (f"{fixed} relations biject with graphs and collages; laws on {spans} spans, "
            f"{cospans} cospans, monotonicity on {monotone} related pairs")


class Criterion(NamedTuple):
    number: int
    name: str
    run: Callable[[SuiteConfig], str]
    budget: float | None


CRITERIA = [
    Criterion(1, "round trip of every small weakening relation", criterion_roundtrip, 120),
    Criterion(2, "functoriality and identities", criterion_functoriality, 300),
    Criterion(3, "three routes to the dual agree", criterion_three_paths, None),
    Criterion(4, "unions go to intersections", criterion_meet_hom, None),
    Criterion(5, "worked examples reproduced", criterion_fixtures, None),
    Criterion(6, "both dualities preserve exact squares", criterion_exactness, 300),
    Criterion(7, "theory and implementation form a Galois connection", criterion_galois, None),
    Criterion(8, "preorders dualize to interpolative relations", criterion_preorders, None),
    Criterion(9, "framed cells", criterion_framed, None),
    Criterion(10, "comma and cocomma as closure and interior", criterion_comma_cocomma, None),
]


def run_criterion(crit: Criterion, cfg: SuiteConfig) -> CriterionResult:
    start = time.perf_counter()
    try:
        detail, witness, ok = crit.run(cfg), None, True
    except Failure as e:
        detail, witness, ok = str(e), e.witness, False
    except OrdRelError as e:
        detail, witness, ok = f"{type(e).__name__}: {e}", e.witness, False
    seconds = time.perf_counter() - start
    if ok and crit.budget is not None and seconds > crit.budget:
        ok, detail = False, detail + " but over the time budget"
    return CriterionResult(crit.number, crit.name, ok, detail, witness, seconds, crit.budget)


def run_suite(cfg: SuiteConfig = SuiteConfig()) -> list[CriterionResult]:
    return [run_criterion(c, cfg) for c in CRITERIA if not cfg.only or c.number in cfg.only]
