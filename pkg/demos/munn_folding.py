"""
From trees to Munn trees
========================

Folding edges that share a label and an endpoint turns a tree into a Munn
tree, an element of the free inverse monoid.  Folding respects products.
"""

from freeadequate import canonical_form, eval_term, fold_munn, mult, munn_mult

x = eval_term("(a b)^+ (a c)^+")
m = fold_munn(x)
print("tree:", x.vertex_count, "vertices; folded:", m.vertex_count, "vertices")
print(m.to_json())

# distinct trees can fold to the same Munn tree
for t in ["a^+ a^*", "a^* a^+"]:
    print(t, "->", fold_munn(eval_term(t)).to_json())

y = eval_term("c^* a")
lhs = fold_munn(mult(x, y))
rhs = munn_mult(fold_munn(x), fold_munn(y))
print("fold(XY) == fold(X) fold(Y):", canonical_form(lhs) == canonical_form(rhs))
