"""Finite posets, weakening relations and their duals in distributive lattices."""
from .applications import (FramedCell, framed_cell_check, framed_cell_formulations,
                           galois_check, hoare_implementation, hoare_theory,
                           interpolative_check, order_dual_via_inserter,
                           quotient_by_preorder, reflexive_elements,
                           reflexive_quotient_bijection)
from .config import Limits, current_limits
from .dot import export_dot
from .duality import (ALGEBRA_TO_SPACE, SPACE_TO_ALGEBRA, check_extension_preconditions,
                      dl_cocomma_via_duality, dual_algebra, dual_map_algebra,
                      dual_map_space, dual_rel_formula, dual_rel_via_cospan,
                      dual_rel_via_span, dual_space, roundtrip_relation, unit_algebra,
                      unit_isos, unit_space)
from .enumerate import enumerate_lattices, enumerate_posets
from .errors import OrdRelError, SchemaError
from .io import parse, serialize
from .lattice import (DLCospan, DLMorphism, DLRel, DLSpan, FinDL, chain_dl,
                      dl_comma, dl_relation_closure, dl_tabulate, is_dl_relation,
                      prime_filters, validate_dl, validate_dl_morphism)
from .poset import (MonotoneMap, Poset, chain, classify_map, compose, discrete,
                    factorize, validate_poset)
from .relations import (WeakRel, companion, compose_rel, conjoint, enumerate_relations,
                        identity_rel, restrict, weakening_closure)
from .spans import (Cospan, Span, Square, classify_cospan, classify_span, cocomma,
                    coinserter, collage, comma, graph, inserter, is_exact)
