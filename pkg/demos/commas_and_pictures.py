# Comma squares, cocommas and DOT pictures
#
# A relation is recovered from its graph span and from its collage cospan.
# Writing the collage out as DOT gives a picture with solid Hasse edges
# inside each side and dashed edges for the generating cross pairs.

# %%
from ordrel import (chain, classify_span, cocomma, collage, comma, export_dot, graph,
                    serialize, weakening_closure)
from ordrel.spans import rel_of_cospan, rel_of_span

# %%
x = chain(2, ["lo", "hi"])
y = chain(3, ["p", "q", "r"])
rel = weakening_closure(x, y, [("hi", "q")])
print(rel.pairs())

# %%
s = graph(rel)
c = collage(rel)
print("graph apex:  ", s.apex.elements)
print("collage apex:", c.apex.elements)
print("span class:  ", classify_span(s))

# %%
# The comma of the collage is the graph again, and the cocomma of the
# graph is the collage again, both up to isomorphism of the apex.
print(rel_of_span(comma(c)) == rel, rel_of_cospan(cocomma(s)) == rel)

# %%
print(export_dot(rel))

# %%
# Documents use the same JSON the command line reads.
print(serialize(rel))
