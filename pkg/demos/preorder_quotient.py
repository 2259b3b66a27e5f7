# Quotienting by a preorder
#
# A weakening relation r: X -> X that is reflexive and transitive is a
# preorder on top of the order of X. Collapsing its equivalence classes
# gives a quotient poset; its upsets are exactly the upsets of X that r
# keeps closed.

# %%
from ordrel import (compose_rel, discrete, dual_rel_formula, identity_rel, interpolative_check,
                    quotient_by_preorder, reflexive_quotient_bijection,
                    weakening_closure)

# %%
x = discrete(["a", "b", "c"])
r = weakening_closure(x, x, [("a", "a"), ("b", "b"), ("c", "c"),
                             ("a", "b"), ("b", "a"), ("b", "c"), ("a", "c")])
print("reflexive:", identity_rel(x) <= r, " transitive:", compose_rel(r, r) <= r)

# %%
# Its dual on the upset lattice is interpolative: contained in the identity
# and in its own square.
dual = dual_rel_formula(r).rel
print("dual interpolative:", interpolative_check(dual))

# %%
e = quotient_by_preorder(x, r)
print("quotient elements:", e.cod.elements)
print("quotient covers:  ", e.cod.covers())
print("map:", {a: e(a) for a in x.elements})

# %%
for upset, image in reflexive_quotient_bijection(r).items():
    print(sorted(upset), "<->", sorted(image))
