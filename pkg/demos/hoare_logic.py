# Hoare triples from a weakening relation
#
# Read a relation R: X -> Y as a nondeterministic program on state posets.
# Its theory holds the triples {A} R {B} with A, B upsets; the
# implementation of a specification is the largest program meeting it.

# %%
from ordrel import (chain, discrete, dual_space, galois_check, hoare_implementation,
                    hoare_theory, weakening_closure)
from ordrel.lattice import dl_relation_closure

# %%
x = chain(3, ["0", "1", "2"])
y = discrete(["ok", "err"])
program = weakening_closure(x, y, [("1", "ok"), ("2", "err")])
print("program:", program.pairs())

# %%
theory = hoare_theory(program)
print(len(theory.pairs()), "triples, for example:")
for a, b in theory.pairs()[:6]:
    print(f"  {a} program {b}")

# %%
# A specification: starting from {2} must end in {ok}, nothing else asked.
ux, uy = dual_space(x), dual_space(y)
spec = dl_relation_closure(ux, uy, [("{2}", "{ok}")])
best = hoare_implementation(spec.rel, x, y)
print("largest program:", best.pairs())

# %%
# The original program does not meet it since 2 can only fail. The
# Galois connection gives the same answer from both sides.
print("program meets spec:", spec.rel <= theory)
print("both sides agree:  ", galois_check(program, spec.rel))
