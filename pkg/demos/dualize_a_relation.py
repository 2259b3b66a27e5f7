# Dualizing a weakening relation
#
# A weakening relation R: X -> Y between finite posets is down-closed in X
# and up-closed in Y. Its dual relates upsets A of X to upsets B of Y when
# everything R reaches from A lands inside B.

# %%
from ordrel import (SPACE_TO_ALGEBRA, chain, discrete, dual_rel_formula,
                    dual_rel_via_cospan, dual_rel_via_span, dual_space,
                    roundtrip_relation, weakening_closure)

# %%
# Two small posets and a relation generated by one pair; the closure adds
# every pair the order forces.
x = chain(2, ["lo", "hi"])
y = discrete(["a", "b"])
r = weakening_closure(x, y, [("hi", "a")])
print("R =", r.pairs())

# %%
# The lattices of upsets.
print("Up(X) =", dual_space(x).carrier.elements)
print("Up(Y) =", dual_space(y).carrier.elements)

# %%
# The dual by the direct formula.
dual = dual_rel_formula(r)
for a, b in dual.rel.pairs():
    print(f"  {a:>9} -> {b}")

# %%
# The same relation through the span and cospan constructions.
via_span = dual_rel_via_span(r, SPACE_TO_ALGEBRA, materialize=True)
via_cospan = dual_rel_via_cospan(r, SPACE_TO_ALGEBRA, materialize=True)
print("span route agrees:  ", via_span.rel == dual.rel)
print("cospan route agrees:", via_cospan.rel == dual.rel)

# %%
# Dualizing twice lands on prime filters and gives R back up to renaming.
twice, info = roundtrip_relation(r)
print(twice.pairs())
print(info)
