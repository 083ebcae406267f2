"""
Trees, retractions and pruning
==============================

Build a few small trees by hand, count their retractions and prune them.
"""

from freeadequate import SigmaTree, canonical_form, enumerate_retractions, eval_term, is_pruned, prune
from freeadequate.render import to_dot
from freeadequate.term import eval_unpruned, parse

# a tree is a vertex count, labelled directed edges and two marked vertices
x = SigmaTree(5, ((0, 1, "a"), (1, 2, "b"), (1, 3, "b"), (4, 3, "b")), start=0, end=1)
print("pruned?", is_pruned(x))

# the identity is one retraction; the rest fold parts of the tree away
print("retractions:", len(enumerate_retractions(x)))

# pruning folds sibling branches until nothing more can go
p = prune(x)
print("pruned tree:", p.to_json())

# the same tree arises from a term, evaluated without pruning
u = eval_unpruned(parse("a b^+ (b b^*)^+"))
print("same as the term?", canonical_form(prune(u)) == canonical_form(eval_term("a b^+")))

print(to_dot(p, name="pruned"))
