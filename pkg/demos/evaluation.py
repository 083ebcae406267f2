"""
Evaluating trees in other adequate monoids
==========================================

Every assignment of letters into an adequate monoid extends to the whole
monoid of trees.  Here the targets are a free monoid, a three-element
monoid shipped with the package and the partial bijections of a 2-set.
"""

import random

from freeadequate import prune
from freeadequate.sampling import random_unpruned_tree
from freeadequate.targets import (
    FreeMonoidTarget,
    as_sequence,
    bundled_monoid,
    generator_inclusion,
    rho,
    symmetric_inverse_monoid,
    validate_adequate,
)

z2 = bundled_monoid("z2_with_zero")
pb = symmetric_inverse_monoid(2)
print("z2_with_zero elements:", z2.elements, "violations:", validate_adequate(z2))
print("partial bijections:", pb.size, "elements, violations:", validate_adequate(pb))

free = FreeMonoidTarget()
rng = random.Random(1)
for _ in range(5):
    x = random_unpruned_tree(rng, 6, "ab")
    chi = {"a": pb.index_of("10"), "b": pb.index_of("0-")}
    print(
        f"{x.edge_count:2d} edges  free: {as_sequence(rho(x, free, generator_inclusion(free, 'ab'))):8}"
        f"  partial bijections: {pb.elements[rho(x, pb, chi)]}"
        f"  (pruned: {pb.elements[rho(prune(x), pb, chi)]})"
    )
