"""
Deciding equality of terms
==========================

Two terms are equal exactly when their pruned trees are isomorphic.
"""

from freeadequate import eval_term, normal_form, words_equal

pairs = [
    ("(a (b^+ a)^*)^+ b", "a^+ b"),
    ("a^+ (a b)^+", "(a b)^+"),
    ("a^+ b^+", "b^+ a^+"),
    ("a^+", "a^*"),
    ("(a b)^+ a", "a (b a)^*"),
]
for left, right in pairs:
    print(f"{left:22} = {right:14} ? {words_equal(left, right)}")

# every element has a normal form read off its tree
for t in ["(a (b^+ a)^*)^+ b", "b^* a^+ a", "((a b)^+ a)^*"]:
    print(f"{t:22} -> {normal_form(t)}")

# edge counts of the pruned trees
for t in ["a b^+ (b b^*)^+", "(a a^+)^+ (a a^+)^+"]:
    print(t, "has", eval_term(t).edge_count, "edges after pruning")
