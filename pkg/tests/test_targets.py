import itertools
import json
import random

import numpy as np
import pytest

from freeadequate import base_tree, canonical_form, eval_term, mult_unpruned, plus_unpruned, prune, star_unpruned
from freeadequate.algebra import trunk_word
from freeadequate.sampling import random_idempotent_tree, random_pruned_tree, random_unpruned_tree
from freeadequate.targets import (
    FiniteAdequateMonoid,
    FreeMonoidTarget,
    TargetError,
    TreeTarget,
    assignment_from_names,
    bundled_monoid,
    generator_inclusion,
    rho,
    semilattice_monoid,
    symmetric_inverse_monoid,
    tau,
    validate_adequate,
    validated,
)
from freeadequate.tree import idempotent_part, trunk


def monoid(table, plus, star, identity=0, names=None):
    n = len(table)
    names = names or [str(i) for i in range(n)]
    return FiniteAdequateMonoid(tuple(names), identity, np.array(table), tuple(plus), tuple(star))


def brute_adequacy(table, identity):
    """Definitional check; returns (plus, star) maps when adequate, else None."""
    n = len(table)
    s = range(n)
    if any(table[table[x][y]][z] != table[x][table[y][z]] for x in s for y in s for z in s):
        return None
    if any(table[identity][x] != x or table[x][identity] != x for x in s):
        return None
    idem = [e for e in s if table[e][e] == e]
    if any(table[e][f] != table[f][e] for e in idem for f in idem):
        return None

    def r_star(a, b):
        return all((table[x][a] == table[y][a]) == (table[x][b] == table[y][b]) for x in s for y in s)

    def l_star(a, b):
        return all((table[a][x] == table[a][y]) == (table[b][x] == table[b][y]) for x in s for y in s)

    maps = []
    for rel in (r_star, l_star):
        images = []
        for a in s:
            found = [e for e in idem if rel(a, e)]
            if len(found) != 1:
                return None
            images.append(found[0])
        maps.append(images)
    return maps


def test_two_element_semilattice_is_valid():
    m = monoid([[0, 1], [1, 1]], [0, 1], [0, 1], names=["1", "e"])
    assert validate_adequate(m) == []


def test_left_zero_with_identity_is_invalid():
    m = monoid([[0, 1, 2], [1, 1, 1], [2, 2, 2]], [0, 1, 2], [0, 1, 2], names=["1", "x", "y"])
    report = validate_adequate(m)
    assert any("idempotents do not commute" in line for line in report)


def test_non_idempotent_plus_is_named():
    z2 = bundled_monoid()
    data = z2.to_dict()
    data["plus"] = [0, 1, 2]
    report = validate_adequate(FiniteAdequateMonoid.from_dict(data))
    assert "plus(g) = g is not idempotent" in report


def test_builtin_monoids_validate():
    assert validate_adequate(bundled_monoid("z2_with_zero")) == []
    sim = symmetric_inverse_monoid(2)
    assert sim.size == 7 and validate_adequate(sim) == []
    assert validate_adequate(semilattice_monoid(3)) == []


def test_validator_agrees_with_definitional_check():
    for n in (1, 2, 3):
        for rest in itertools.product(range(n), repeat=(n - 1) ** 2):
            table = [[0] * n for _ in range(n)]
            for x in range(n):
                table[0][x] = table[x][0] = x
            for k, (x, y) in enumerate(itertools.product(range(1, n), repeat=2)):
                table[x][y] = rest[k]
            maps = brute_adequacy(table, 0)
            if maps is None:
                assert validate_adequate(monoid(table, range(n), range(n))) != []
            else:
                assert validate_adequate(monoid(table, *maps)) == []
                if n > 1:
                    wrong = [(p + 1) % n for p in maps[0]]
                    assert validate_adequate(monoid(table, wrong, maps[1])) != []


def test_malformed_tables_are_rejected():
    with pytest.raises(TargetError):
        monoid([[0, 1]], [0], [0])
    with pytest.raises(TargetError):
        monoid([[0, 5], [1, 1]], [0, 1], [0, 1])
    with pytest.raises(TargetError):
        validated(monoid([[0, 1], [1, 0]], [0, 1], [0, 1]))


def test_json_round_trip_and_fields():
    z2 = bundled_monoid()
    again = FiniteAdequateMonoid.from_json(json.dumps(z2.to_dict()))
    assert again.to_dict() == z2.to_dict()
    bad = z2.to_dict() | {"name": "z2"}
    with pytest.raises(TargetError, match="unknown"):
        FiniteAdequateMonoid.from_dict(bad)
    missing = {k: v for k, v in z2.to_dict().items() if k != "star"}
    with pytest.raises(TargetError, match="missing"):
        FiniteAdequateMonoid.from_dict(missing)


def test_tau_examples():
    free = FreeMonoidTarget()
    trees = TreeTarget()
    a_plus = eval_term("a^+")
    assert tau(a_plus, free, generator_inclusion(free, "a")) == ()
    assert canonical_form(tau(a_plus, trees, generator_inclusion(trees, "a"))) == canonical_form(a_plus)
    z2 = bundled_monoid()
    assert tau(eval_term("1"), z2, {}) == z2.identity()
    with pytest.raises(TargetError):
        tau(base_tree("a"), free, {"a": ("a",)})


def test_rho_examples():
    free = FreeMonoidTarget()
    x = eval_term("(a (b^+ a)^*)^+ b")
    assert rho(x, free, generator_inclusion(free, "ab")) == ("b",)
    z2 = bundled_monoid()
    chi = assignment_from_names(z2, {"a": "g", "b": "0"})
    assert rho(eval_term("a a"), z2, chi) == z2.index_of("1")
    assert rho(eval_term("a^+ a"), z2, chi) == z2.index_of("g")
    assert rho(eval_term("b^+"), z2, chi) == z2.index_of("0")


def test_rho_needs_a_total_assignment():
    with pytest.raises(TargetError, match="no image"):
        rho(eval_term("a b"), FreeMonoidTarget(), {"a": ("a",)})


def test_rho_equals_tau_on_idempotents():
    rng = random.Random(1)
    sim = symmetric_inverse_monoid(2)
    for _ in range(100):
        x = random_idempotent_tree(rng, 6, "ab")
        chi = {a: rng.randrange(sim.size) for a in "ab"}
        assert rho(x, sim, chi) == tau(x, sim, chi)


def test_rho_is_a_morphism_on_unpruned_trees():
    rng = random.Random(2)
    targets = [bundled_monoid(), symmetric_inverse_monoid(2), semilattice_monoid(2)]
    for _ in range(200):
        m = rng.choice(targets)
        chi = {a: rng.randrange(m.size) for a in "ab"}
        x = random_unpruned_tree(rng, 5, "ab")
        y = random_unpruned_tree(rng, 5, "ab")
        assert rho(mult_unpruned(x, y), m, chi) == m.mult(rho(x, m, chi), rho(y, m, chi))
        assert rho(plus_unpruned(x), m, chi) == m.plus(rho(x, m, chi))
        assert rho(star_unpruned(x), m, chi) == m.star(rho(x, m, chi))
        assert rho(x, m, chi) == rho(prune(x), m, chi)


def test_rho_into_trees_is_the_identity():
    rng = random.Random(3)
    trees = TreeTarget()
    chi = generator_inclusion(trees, "ab")
    for _ in range(100):
        x = random_pruned_tree(rng, 7, "ab")
        assert trees.eq(rho(x, trees, chi), x)
        assert trees.eq(rho(x, trees, lambda a: trees.generator(a)), x)


def test_rho_in_free_monoid_is_trunk_word():
    rng = random.Random(4)
    free = FreeMonoidTarget()
    for _ in range(100):
        x = random_unpruned_tree(rng, 7, "ab")
        assert rho(x, free, generator_inclusion(free, "ab")) == trunk_word(prune(x))


def test_tau_order_is_irrelevant():
    rng = random.Random(5)
    sim = symmetric_inverse_monoid(2)
    for _ in range(150):
        y = random_pruned_tree(rng, 7, "ab")
        x = idempotent_part(y, y.start, trunk(y))
        chi = {a: rng.randrange(sim.size) for a in "ab"}
        assert tau(x, sim, chi, rng=random.Random(rng.random())) == tau(x, sim, chi)
