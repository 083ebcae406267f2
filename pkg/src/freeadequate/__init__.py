"""Free adequate monoids and semigroups as pruned birooted trees."""

from .algebra import (
    MunnTree,
    fold_munn,
    mult,
    mult_all,
    mult_unpruned,
    munn_mult,
    plus,
    plus_unpruned,
    star,
    star_unpruned,
    trunk_word,
)
from .canonical import canonical_form, iso
from .morphism import (
    TreeMorphism,
    check_morphism,
    enumerate_retractions,
    find_fold,
    is_pruned,
    prune,
    simulate,
)
from .term import (
    Letter,
    One,
    Plus,
    Prod,
    Star,
    Term,
    eval_term,
    normal_form,
    parse,
    print_term,
    to_term,
    words_equal,
)
from .tree import (
    Branch,
    SigmaTree,
    base_tree,
    branch_at,
    delta,
    is_idempotent_tree,
    trivial_tree,
    trunk,
    validate,
)

__version__ = "0.1.0"
