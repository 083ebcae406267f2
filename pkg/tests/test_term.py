import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freeadequate import (
    Letter,
    One,
    Plus,
    Prod,
    SigmaTree,
    Star,
    base_tree,
    canonical_form,
    eval_term,
    mult,
    normal_form,
    parse,
    plus,
    print_term,
    star,
    to_term,
    trivial_tree,
    words_equal,
)
from freeadequate.sampling import random_pruned_tree, random_term
from freeadequate.term import SEMIGROUP, NotPrunedError, TermSyntaxError, UnknownLetter, term_size

from conftest import A_PLUS_B

a, b = Letter("a"), Letter("b")

terms = st.recursive(
    st.sampled_from([One(), a, b, Letter("c1")]),
    lambda inner: st.one_of(
        st.builds(Prod, inner, inner), st.builds(Plus, inner), st.builds(Star, inner)
    ),
    max_leaves=12,
)


def test_parse_nested_term():
    assert parse("(a (b^+ a)^*)^+ b") == Prod(Plus(Prod(a, Star(Prod(Plus(b), a)))), b)


def test_parse_basics():
    assert parse("1") == One()
    assert parse("a b c") == Prod(Prod(a, b), Letter("c"))
    assert parse("a^+^*") == Star(Plus(a))
    assert parse("  a  ^ +  b") == Prod(Plus(a), b)
    assert parse("(a)") == a


@pytest.mark.parametrize(
    "text, offset",
    [("a^", 1), ("", 0), ("(a b", 4), ("a )", 2), ("a ^- b", 3), ("a $", 2), ("2", 0), ("^+", 0)],
)
def test_parse_errors(text, offset):
    with pytest.raises(TermSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


def test_parse_mode_and_alphabet():
    with pytest.raises(TermSyntaxError):
        parse("1", mode=SEMIGROUP)
    with pytest.raises(TermSyntaxError):
        parse("a 1", mode=SEMIGROUP)
    assert parse("a b", mode=SEMIGROUP) == Prod(a, b)
    with pytest.raises(UnknownLetter) as info:
        parse("a c", alphabet=["a", "b"])
    assert info.value.offset == 2
    with pytest.raises(ValueError):
        parse("a", mode="group")


def test_print_examples():
    assert print_term(Plus(a)) == "a^+"
    assert print_term(Prod(Plus(a), b)) == "a^+ b"
    assert print_term(Prod(a, Prod(b, a))) == "a (b a)"
    assert print_term(Star(Plus(Prod(a, b)))) == "(a b)^+^*"
    assert str(Prod(One(), a)) == "1 a"


def test_print_parse_round_trip_random():
    rng = random.Random(0)
    for _ in range(1000):
        t = random_term(rng, 15, ["a", "b", "x_2"])
        assert parse(print_term(t)) == t


@given(terms)
@settings(max_examples=200, deadline=None)
def test_print_parse_round_trip_hypothesis(t):
    assert parse(print_term(t)) == t


def test_eval_examples():
    assert canonical_form(eval_term("(a (b^+ a)^*)^+ b")) == canonical_form(eval_term("a^+ b"))
    assert canonical_form(eval_term("a b^+ (b b^*)^+")) == canonical_form(eval_term("a b^+"))
    assert eval_term("1") == trivial_tree()
    assert canonical_form(eval_term("a")) == canonical_form(base_tree("a"))


def test_words_equal_examples():
    assert words_equal("(a (b^+ a)^*)^+ b", "a^+ b")
    assert words_equal("a^+ (a b)^+", "(a b)^+")
    assert not words_equal("a^+", "a^*")


def test_words_equal_is_an_equivalence():
    rng = random.Random(1)
    pool = [random_term(rng, 8, "ab") for _ in range(40)]
    pool += [parse(normal_form(t)) for t in pool[:20]]
    keys = [canonical_form(eval_term(t)) for t in pool]
    for i in range(len(pool)):
        assert words_equal(pool[i], pool[i])
        for j in range(len(pool)):
            assert words_equal(pool[i], pool[j]) == words_equal(pool[j], pool[i]) == (keys[i] == keys[j])


def test_eval_respects_operations():
    rng = random.Random(2)
    for _ in range(200):
        s, t = random_term(rng, 8, "ab"), random_term(rng, 8, "ab")
        x, y = eval_term(s), eval_term(t)
        assert canonical_form(eval_term(Prod(s, t))) == canonical_form(mult(x, y))
        assert canonical_form(eval_term(Plus(s))) == canonical_form(plus(x))
        assert canonical_form(eval_term(Star(s))) == canonical_form(star(x))


def test_to_term_examples():
    assert to_term(base_tree("a")) == a
    assert to_term(trivial_tree()) == One()
    assert print_term(to_term(A_PLUS_B)) == "a^+ b"
    assert normal_form("(a (b^+ a)^*)^+ b") == "a^+ b"
    assert normal_form("a") == "a"
    assert normal_form("b^* a^+") == "a^+ b^*"


def test_to_term_rejects_unpruned():
    with pytest.raises(NotPrunedError):
        to_term(SigmaTree(3, ((0, 1, "a"), (0, 2, "a")), 0, 0))


def test_to_term_round_trip_and_size():
    rng = random.Random(3)
    for _ in range(300):
        x = random_pruned_tree(rng, 8, "abc")
        t = to_term(x)
        assert canonical_form(eval_term(t)) == canonical_form(x)
        assert term_size(t) <= 4 * (x.edge_count + x.vertex_count)


def test_normal_form_is_a_fixpoint():
    rng = random.Random(4)
    for _ in range(300):
        nf = normal_form(random_term(rng, 10, "ab"))
        assert normal_form(nf) == nf


@given(terms)
@settings(max_examples=150, deadline=None)
def test_normal_form_decides_equality(t):
    assert words_equal(t, normal_form(t))


def test_semigroup_mode_never_gives_the_trivial_tree():
    rng = random.Random(5)
    for _ in range(300):
        t = random_term(rng, 8, "ab")
        text = print_term(t)
        if "1" in text:
            continue
        assert eval_term(text, mode=SEMIGROUP).edge_count > 0
