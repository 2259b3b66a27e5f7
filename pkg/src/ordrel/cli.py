"""Command line front end.

Every subcommand reads one JSON document (or a JSON array of documents) from
``--in`` or stdin and writes JSON, or DOT for ``dot``, to ``--out`` or stdout.
Exit status is 0 on success, 1 on a validation error and 2 when a check or
the acceptance suite fails.
"""
import argparse
import os
import sys

from .applications import (FramedCell, framed_cell_formulations, hoare_implementation,
                           hoare_theory, quotient_by_preorder)
from .config import ENV_VAR
from .dot import export_dot
from .duality import (ALGEBRA_TO_SPACE, SPACE_TO_ALGEBRA, algebra_duality,
                      check_extension_preconditions, dl_cocomma_via_duality,
                      dual_algebra, dual_map_algebra, dual_map_space, dual_rel_formula,
                      dual_rel_via_cospan, dual_rel_via_span, dual_space,
                      roundtrip_relation, space_duality)
from .errors import OrdRelError, SchemaError, TypeMismatch
from .io import Report, dump, parse, parse_many, serialize, to_text
from .lattice import (DLCospan, DLMorphism, DLRel, DLSpan, FinDL, compose_dl,
                      dl_comma, make_dl_rel)
from .poset import MonotoneMap, Poset, classify_map, compose
from .relations import WeakRel, compose_rel, weakening_closure
from .spans import (Cospan, Span, Square, classify_cospan, classify_span, cocomma,
                    coinserter, comma, compose_cospans, compose_spans, inserter,
                    is_exact)


def _expect(doc, kinds, what: str):
    if not isinstance(doc, kinds):
        raise TypeMismatch(f"{what} expects {' or '.join(k.__name__ for k in kinds)}, "
                           f"got {type(doc).__name__}")
    return doc


def _expect_many(docs, count: int, what: str):
    if len(docs) != count:
        raise SchemaError("", f"{what} expects an array of {count} documents, got {len(docs)}")
    return docs


def cmd_validate(args, text):
    return serialize(parse(text))


def cmd_dual(args, text):
    doc = parse(text)
    if isinstance(doc, Poset):
        return serialize(dual_space(doc))
    if isinstance(doc, FinDL):
        return serialize(dual_algebra(doc))
    if isinstance(doc, MonotoneMap):
        return serialize(dual_map_space(doc))
    if isinstance(doc, DLMorphism):
        return serialize(dual_map_algebra(doc))
    raise TypeMismatch(f"dual expects a poset, lattice or map, got {type(doc).__name__}")


def cmd_dual_rel(args, text):
    r = _expect(parse(text), (WeakRel, DLRel), "dual-rel")
    if isinstance(r, WeakRel):
        if args.via == "formula":
            return serialize(dual_rel_formula(r))
        route = dual_rel_via_span if args.via == "span" else dual_rel_via_cospan
        return serialize(route(r, SPACE_TO_ALGEBRA))
    # prime filters have no separate closed form; the formula route is the span route
    route = dual_rel_via_cospan if args.via == "cospan" else dual_rel_via_span
    return serialize(route(r, ALGEBRA_TO_SPACE))


def cmd_comma(args, text):
    c = _expect(parse(text), (Cospan, DLCospan), "comma")
    return serialize(dl_comma(c) if isinstance(c, DLCospan) else comma(c))


def cmd_cocomma(args, text):
    s = _expect(parse(text), (Span, DLSpan), "cocomma")
    return serialize(dl_cocomma_via_duality(s) if isinstance(s, DLSpan) else cocomma(s))


def cmd_dl_cocomma(args, text):
    s = _expect(parse(text), (DLSpan,), "dl-cocomma")
    return serialize(dl_cocomma_via_duality(s, verify=not args.no_verify))


def _parallel(text, what):
    f, g = _expect_many(parse_many(text), 2, what)
    return _expect(f, (MonotoneMap,), what), _expect(g, (MonotoneMap,), what)


def cmd_coinserter(args, text):
    return serialize(coinserter(*_parallel(text, "coinserter")))


def cmd_inserter(args, text):
    return serialize(inserter(*_parallel(text, "inserter")))


def cmd_compose(args, text):
    """Compose ``[first, second]``: the first is applied first."""
    first, second = _expect_many(parse_many(text), 2, "compose")
    if type(first) is not type(second):
        raise TypeMismatch("compose expects two documents of the same type")
    if isinstance(first, MonotoneMap):
        return serialize(compose(second, first))
    if isinstance(first, DLMorphism):
        return serialize(compose_dl(second, first))
    if isinstance(first, WeakRel):
        return serialize(compose_rel(first, second))
    if isinstance(first, DLRel):
        if first.cod != second.dom:
            raise TypeMismatch("relations do not compose")
        return serialize(make_dl_rel(first.dom, second.cod, compose_rel(first.rel, second.rel)))
    if isinstance(first, Span):
        return serialize(compose_spans(first, second))
    if isinstance(first, Cospan):
        return serialize(compose_cospans(first, second))
    raise TypeMismatch(f"cannot compose {type(first).__name__}")


def _report(entries) -> tuple[str, bool]:
    rep = Report(tuple(entries))
    return serialize(rep), rep.passed


def cmd_roundtrip(args, text):
    r = _expect(parse(text), (WeakRel,), "roundtrip")
    _, info = roundtrip_relation(r)
    return _report([{"check": "roundtrip", "instance": sorted(r.pairs()),
                     "pass": info["equal"], "witness": info["witness"]}])


def cmd_exact_check(args, text):
    if args.preconditions:
        if args.preconditions == "space":
            func = space_duality(max_size=args.instance_size ** 2)
        else:
            func = algebra_duality()
        return _report(check_extension_preconditions(func, args.preconditions,
                                                     args.instance_size))
    sq = _expect(parse(text), (Square,), "exact-check")
    ex = is_exact(sq)
    return _report([{"check": "exact-square", "instance": "input square",
                     "pass": ex.exact, "witness": ex.witness}])


def cmd_classify(args, text):
    doc = parse(text)
    if isinstance(doc, DLMorphism):
        doc = doc.map
    if isinstance(doc, DLSpan):
        doc = doc.span
    if isinstance(doc, DLCospan):
        doc = doc.cospan
    if isinstance(doc, MonotoneMap):
        return to_text({"type": "map-class", **classify_map(doc)._asdict()})
    if isinstance(doc, Span):
        return to_text({"type": "span-class", **classify_span(doc)._asdict()})
    if isinstance(doc, Cospan):
        return to_text({"type": "cospan-class", **classify_cospan(doc)._asdict()})
    raise TypeMismatch(f"classify expects a map, span or cospan, got {type(doc).__name__}")


def cmd_hoare_theory(args, text):
    return serialize(hoare_theory(_expect(parse(text), (WeakRel,), "hoare-theory")))


def cmd_hoare_impl(args, text):
    """Input ``[X, Y, spec]``; ``spec`` is a relation whose elements are upset literals."""
    x, y, spec = _expect_many(parse_many(text), 3, "hoare-impl")
    x, y = _expect(x, (Poset,), "hoare-impl"), _expect(y, (Poset,), "hoare-impl")
    spec = _expect(spec, (WeakRel, DLRel), "hoare-impl")
    pairs = spec.pairs()
    ux, uy = dual_space(x), dual_space(y)
    for a, b in pairs:
        if a not in ux.carrier or b not in uy.carrier:
            raise SchemaError("[2].pairs", f"({a}, {b}) is not a pair of upsets")
    closed = weakening_closure(ux.carrier, uy.carrier, pairs)
    return serialize(hoare_implementation(closed, x, y))


def cmd_quotient(args, text):
    r = _expect(parse(text), (WeakRel,), "quotient")
    return serialize(quotient_by_preorder(r.dom, r))


def cmd_framed_check(args, text):
    """Input ``[inner, f, g, outer]``."""
    inner, f, g, outer = _expect_many(parse_many(text), 4, "framed-check")
    cell = FramedCell(_expect(inner, (WeakRel,), "framed-check"),
                      _expect(f, (MonotoneMap,), "framed-check"),
                      _expect(g, (MonotoneMap,), "framed-check"),
                      _expect(outer, (WeakRel,), "framed-check"))
    got = framed_cell_formulations(cell)
    agree = len(set(got.values())) == 1
    out = {"type": "framed-cell", "holds": agree and all(got.values()),
           "agree": agree, "formulations": got}
    return to_text(out), agree


def cmd_dot(args, text):
    return export_dot(parse(text))


def cmd_suite(args, text):
    from .suite import SuiteConfig, run_suite
    cfg = SuiteConfig(max_poset_size=args.poset_size, random_seed=args.seed,
                      sample_count=args.samples, fault=args.fault,
                      only=tuple(args.only or ()))
    results = run_suite(cfg)
    ok = all(r.passed for r in results)
    if args.json:
        entries = [{"check": f"criterion {r.number}", "instance": r.name, "pass": r.passed,
                    "witness": r.witness, "detail": r.detail} for r in results]
        return to_text(dump(Report(tuple(entries)))), ok
    return "".join(r.line() + "\n" for r in results), ok


COMMANDS = {
    "validate": (cmd_validate, "parse a document and print its canonical form"),
    "dual": (cmd_dual, "dual of a poset, lattice or map"),
    "dual-rel": (cmd_dual_rel, "dual of a relation"),
    "comma": (cmd_comma, "comma span of a cospan"),
    "cocomma": (cmd_cocomma, "cocomma cospan of a span"),
    "coinserter": (cmd_coinserter, "coinserter of a parallel pair [f, g]"),
    "inserter": (cmd_inserter, "inserter of a parallel pair [j, k]"),
    "compose": (cmd_compose, "compose [first, second] maps, relations, spans or cospans"),
    "roundtrip": (cmd_roundtrip, "dualize a relation twice and compare"),
    "exact-check": (cmd_exact_check, "exactness of a square, or the generated checks"),
    "classify": (cmd_classify, "classify a map, span or cospan"),
    "hoare-theory": (cmd_hoare_theory, "all triples a program satisfies"),
    "hoare-impl": (cmd_hoare_impl, "largest program meeting [X, Y, spec]"),
    "quotient": (cmd_quotient, "quotient map of a preorder"),
    "framed-check": (cmd_framed_check, "check a cell [inner, f, g, outer]"),
    "dl-cocomma": (cmd_dl_cocomma, "cocomma of a span of lattice maps"),
    "dot": (cmd_dot, "Graphviz rendering of a poset, relation, span or cospan"),
    "suite": (cmd_suite, "run the acceptance suite"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", help="input file (default stdin)")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--max-size", type=int,
                        help=f"size guard for the exponential constructions (overrides {ENV_VAR})")
    parser = argparse.ArgumentParser(prog="ordrel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {name: sub.add_parser(name, parents=[common], help=help_)
               for name, (_, help_) in COMMANDS.items()}
    parsers["dual-rel"].add_argument("--via", choices=["formula", "span", "cospan"],
                                     default="formula")
    parsers["dl-cocomma"].add_argument("--no-verify", action="store_true",
                                       help="skip the universal-property check")
    parsers["exact-check"].add_argument("--preconditions", choices=["space", "algebra"],
                                        help="run the generated checks instead of reading input")
    parsers["exact-check"].add_argument("--instance-size", type=int, default=3)
    suite = parsers["suite"]
    suite.add_argument("--poset-size", type=int, default=3,
                       help="largest poset enumerated exhaustively (default 3)")
    suite.add_argument("--seed", type=int, default=0, help="seed for the sampled checks")
    suite.add_argument("--samples", type=int, default=1000,
                       help="sampled instances on larger posets")
    suite.add_argument("--fault", choices=["drop-pair"],
                       help="break the dual on purpose; the suite must go red")
    suite.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    suite.add_argument("--json", action="store_true", help="emit a report document")
    return parser


NO_INPUT = {"suite"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_size is not None:
        os.environ[ENV_VAR] = str(args.max_size)
    func, _ = COMMANDS[args.command]
    needs_input = args.command not in NO_INPUT and not getattr(args, "preconditions", None)
    try:
        text = ""
        if needs_input:
            if args.input:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            else:
                text = sys.stdin.read()
        result = func(args, text)
    except OrdRelError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    out, ok = result if isinstance(result, tuple) else (result, True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
