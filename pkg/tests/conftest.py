from freeadequate import SigmaTree

# (a b)^+ a, a b^+, and the unpruned tree of a b^+ (b b^*)^+
SPLIT_A = SigmaTree(4, ((0, 1, "a"), (1, 2, "b"), (0, 3, "a")), start=0, end=3)
A_B_LOOP = SigmaTree(3, ((0, 1, "a"), (1, 2, "b")), start=0, end=1)
A_B_LOOP_UNPRUNED = SigmaTree(5, ((0, 1, "a"), (1, 2, "b"), (1, 3, "b"), (4, 3, "b")), start=0, end=1)

# (a (b^+ a)^*)^+ b unpruned, and a^+ b
NESTED_UNPRUNED = SigmaTree(5, ((0, 1, "b"), (0, 2, "a"), (3, 2, "a"), (3, 4, "b")), start=0, end=1)
A_PLUS_B = SigmaTree(3, ((0, 1, "b"), (0, 2, "a")), start=0, end=1)

