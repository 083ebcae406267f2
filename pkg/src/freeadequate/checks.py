"""Seeded property suites for the tree algebra, the term layer and evaluation.

Each suite draws its own ``random.Random`` from ``(seed, suite name)`` so a
suite's samples do not depend on which other suites run.  A suite returns
the list of failure descriptions; empty means it passed.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import algebra
from .canonical import canonical_form
from .morphism import prune
from .sampling import (
    random_attached_tree,
    random_idempotent_tree,
    random_pruned_tree,
    random_term,
    random_unpruned_tree,
)
from .targets import (
    FreeMonoidTarget,
    TreeTarget,
    bundled_monoid,
    rho,
    symmetric_inverse_monoid,
    tau,
)
from .term import eval_term, eval_unpruned, parse, print_term, term_size, to_term
from .tree import SigmaTree, delta, is_idempotent_tree


@dataclass
class Ops:
    """The pruned operations under test; swap one out to inject a fault."""

    mult: Callable[[SigmaTree, SigmaTree], SigmaTree] = algebra.mult
    plus: Callable[[SigmaTree], SigmaTree] = algebra.plus
    star: Callable[[SigmaTree], SigmaTree] = algebra.star

    @staticmethod
    def eq(x: SigmaTree, y: SigmaTree) -> bool:
        return canonical_form(x) == canonical_form(y)


@dataclass
class Context:
    alphabet: Sequence[str] = ("a", "b")
    max_edges: int = 5
    ops: Ops = field(default_factory=Ops)
    # extra validated finite monoids for the evaluation suites
    targets: Sequence[tuple[str, object]] = ()

    def finite_targets(self):
        return list(_builtin_targets()) + list(self.targets)

    def pruned(self, rng) -> SigmaTree:
        return random_pruned_tree(rng, self.max_edges, self.alphabet)

    def unpruned(self, rng) -> SigmaTree:
        if rng.random() < 0.25:
            return random_attached_tree(rng, rng.randint(0, self.max_edges), self.alphabet)
        return random_unpruned_tree(rng, self.max_edges, self.alphabet)

    def idempotent(self, rng) -> SigmaTree:
        return random_idempotent_tree(rng, self.max_edges, self.alphabet)


SUITES: dict[str, Callable[[random.Random, int, Context], list[str]]] = {}
SUITE_GROUPS: dict[str, list[str]] = {"algebra": [], "term": [], "targets": []}


def suite(name: str, group: str):
    def register(fn):
        SUITES[name] = fn
        SUITE_GROUPS[group].append(name)
        return fn

    return register


def _show(*trees: SigmaTree) -> str:
    return " | ".join(t.to_json() for t in trees)


# algebra


@suite("associativity", "algebra")
def check_associativity(rng, k, ctx):
    m, eq = ctx.ops.mult, ctx.ops.eq
    fails = []
    for _ in range(k):
        x, y, z = ctx.pruned(rng), ctx.pruned(rng), ctx.pruned(rng)
        if not eq(m(m(x, y), z), m(x, m(y, z))):
            fails.append(f"(XY)Z != X(YZ) for {_show(x, y, z)}")
    return fails


@suite("confluence", "algebra")
def check_confluence(rng, k, ctx):
    fails = []
    for _ in range(k):
        x = ctx.unpruned(rng)
        keys = {
            canonical_form(prune(x, order="first")),
            canonical_form(prune(x, order="last")),
            canonical_form(prune(x, rng=random.Random(rng.random()))),
        }
        if len(keys) != 1:
            fails.append(f"fold orders disagree on {_show(x)}")
    return fails


@suite("pruning-morphism", "algebra")
def check_pruning_morphism(rng, k, ctx):
    ops, eq = ctx.ops, ctx.ops.eq
    fails = []
    for _ in range(k):
        x, y = ctx.unpruned(rng), ctx.unpruned(rng)
        px, py = prune(x), prune(y)
        if not eq(prune(algebra.mult_unpruned(x, y)), ops.mult(px, py)):
            fails.append(f"prune(X x Y) != prune(X) prune(Y) for {_show(x, y)}")
        if not eq(prune(algebra.plus_unpruned(x)), ops.plus(px)):
            fails.append(f"prune(X^(+)) != prune(X)^+ for {_show(x)}")
        if not eq(prune(algebra.star_unpruned(x)), ops.star(px)):
            fails.append(f"prune(X^(*)) != prune(X)^* for {_show(x)}")
    return fails


@suite("idempotents-commute", "algebra")
def check_idempotents_commute(rng, k, ctx):
    m, eq = ctx.ops.mult, ctx.ops.eq
    fails = []
    for _ in range(k):
        e, f = ctx.idempotent(rng), ctx.idempotent(rng)
        if not eq(m(e, f), m(f, e)):
            fails.append(f"EF != FE for {_show(e, f)}")
    return fails


@suite("unary-identities", "algebra")
def check_unary_identities(rng, k, ctx):
    ops, eq = ctx.ops, ctx.ops.eq
    fails = []
    for _ in range(k):
        x = ctx.pruned(rng)
        if not eq(ops.mult(ops.plus(x), x), x):
            fails.append(f"X^+ X != X for {_show(x)}")
        if not eq(ops.mult(x, ops.star(x)), x):
            fails.append(f"X X^* != X for {_show(x)}")
    return fails


@suite("quasi-identities", "algebra")
def check_quasi_identities(rng, k, ctx):
    ops, eq = ctx.ops, ctx.ops.eq
    fails = []
    for _ in range(k):
        a, x = ctx.pruned(rng), ctx.pruned(rng)
        # half the draws force the hypotheses to hold in the free algebra
        coin = rng.random()
        if coin < 0.25:
            b = ops.mult(a, ops.plus(x))
        elif coin < 0.5:
            b = ops.mult(ops.star(x), a)
        else:
            b = ctx.pruned(rng)
        left = eq(ops.mult(a, x), ops.mult(b, x))
        left_plus = eq(ops.mult(a, ops.plus(x)), ops.mult(b, ops.plus(x)))
        if left != left_plus:
            fails.append(f"AX = BX <=> AX^+ = BX^+ fails for {_show(a, b, x)}")
        right = eq(ops.mult(x, a), ops.mult(x, b))
        right_star = eq(ops.mult(ops.star(x), a), ops.mult(ops.star(x), b))
        if right != right_star:
            fails.append(f"XA = XB <=> X^*A = X^*B fails for {_show(a, b, x)}")
    return fails


@suite("basic-identities", "algebra")
def check_basic_identities(rng, k, ctx):
    """The six standard identities of left adequate semigroups and their duals."""
    o, eq = ctx.ops, ctx.ops.eq
    m, p, s = o.mult, o.plus, o.star
    fails = []
    for _ in range(k):
        a, b = ctx.pruned(rng), ctx.pruned(rng)
        e, g = ctx.idempotent(rng), ctx.idempotent(rng)
        f = m(e, g)  # then ef = f
        cases = [
            ("e^+ = e", p(e), e),
            ("e^* = e", s(e), e),
            ("(ab)^+ = (ab^+)^+", p(m(a, b)), p(m(a, p(b)))),
            ("(ab)^* = (a^*b)^*", s(m(a, b)), s(m(s(a), b))),
            ("a^+ a = a", m(p(a), a), a),
            ("a a^* = a", m(a, s(a)), a),
            ("e a^+ = (ea)^+", m(e, p(a)), p(m(e, a))),
            ("a^* e = (ae)^*", m(s(a), e), s(m(a, e))),
            ("a^+ (ab)^+ = (ab)^+", m(p(a), p(m(a, b))), p(m(a, b))),
            ("(ab)^* b^* = (ab)^*", m(s(m(a, b)), s(b)), s(m(a, b))),
            ("ef = f => (ae)^+ (af)^+ = (af)^+", m(p(m(a, e)), p(m(a, f))), p(m(a, f))),
            ("fe = f => (ea)^* (fa)^* = (fa)^*", m(s(m(e, a)), s(m(f, a))), s(m(f, a))),
        ]
        for name, lhs, rhs in cases:
            if not eq(lhs, rhs):
                fails.append(f"{name} fails for {_show(a, b, e, f)}")
    return fails


@suite("idempotent-equivalence", "algebra")
def check_idempotent_equivalence(rng, k, ctx):
    """Six conditions that must agree: start = end, XX = X, X = X^+, X in image of +, X = X^*, X in image of *."""
    o, eq = ctx.ops, ctx.ops.eq
    fails = []
    for _ in range(k):
        x = ctx.idempotent(rng) if rng.random() < 0.5 else ctx.pruned(rng)
        # witnesses for "x = y^+" / "x = y^*": x itself and every re-marking of its graph
        witnesses = _remarkings(x)
        in_plus_image = any(eq(o.plus(y), x) for y in witnesses)
        in_star_image = any(eq(o.star(y), x) for y in witnesses)
        verdicts = [
            is_idempotent_tree(x),
            eq(o.mult(x, x), x),
            eq(o.plus(x), x),
            in_plus_image,
            eq(o.star(x), x),
            in_star_image,
        ]
        if len(set(verdicts)) != 1:
            fails.append(f"idempotent conditions disagree {verdicts} for {_show(x)}")
    return fails


def _remarkings(x: SigmaTree) -> list[SigmaTree]:
    out = []
    for v in range(x.vertex_count):
        reach = [v]
        for u in reach:
            reach.extend(inc.other for inc in x.adjacency[u] if inc.orient == 0)
        out.extend(x.with_marks(v, w) for w in reach)
    return out


@suite("delta", "algebra")
def check_delta(rng, k, ctx):
    m = ctx.ops.mult
    fails = []
    for _ in range(k):
        x, y = ctx.pruned(rng), ctx.pruned(rng)
        if delta(m(x, y)) > max(delta(x), delta(y)):
            fails.append(f"delta(XY) > max(delta X, delta Y) for {_show(x, y)}")
    return fails


@suite("fold-homomorphism", "algebra")
def check_fold_homomorphism(rng, k, ctx):
    m = ctx.ops.mult
    fails = []
    for _ in range(k):
        x, y = ctx.pruned(rng), ctx.pruned(rng)
        lhs = algebra.fold_munn(m(x, y))
        rhs = algebra.munn_mult(algebra.fold_munn(x), algebra.fold_munn(y))
        if canonical_form(lhs) != canonical_form(rhs):
            fails.append(f"fold(XY) != fold(X) fold(Y) for {_show(x, y)}")
    return fails


# terms


@suite("print-parse", "term")
def check_print_parse(rng, k, ctx):
    fails = []
    for _ in range(k):
        t = random_term(rng, ctx.max_edges, ctx.alphabet)
        if parse(print_term(t)) != t:
            fails.append(f"parse(print(t)) != t for {print_term(t)}")
    return fails


@suite("eval-morphism", "term")
def check_eval_morphism(rng, k, ctx):
    from .term import Plus, Prod, Star

    ops, eq = ctx.ops, ctx.ops.eq
    fails = []
    for _ in range(k):
        s = random_term(rng, ctx.max_edges, ctx.alphabet)
        t = random_term(rng, ctx.max_edges, ctx.alphabet)
        es, et = eval_term(s), eval_term(t)
        if not eq(eval_term(Prod(s, t)), ops.mult(es, et)):
            fails.append(f"eval(s t) != eval(s) eval(t) for {print_term(s)} ; {print_term(t)}")
        if not eq(eval_term(Plus(s)), ops.plus(es)):
            fails.append(f"eval(s^+) != eval(s)^+ for {print_term(s)}")
        if not eq(eval_term(Star(s)), ops.star(es)):
            fails.append(f"eval(s^*) != eval(s)^* for {print_term(s)}")
    return fails


@suite("normal-form", "term")
def check_normal_form(rng, k, ctx):
    fails = []
    for _ in range(k):
        x = ctx.pruned(rng)
        t = to_term(x)
        if canonical_form(eval_term(t)) != canonical_form(x):
            fails.append(f"eval(to_term(X)) != X for {_show(x)}")
        if term_size(t) > 4 * (x.edge_count + x.vertex_count):
            fails.append(f"normal form of size {term_size(t)} too large for {_show(x)}")
        again = print_term(to_term(eval_term(print_term(t)), check=False))
        if again != print_term(t):
            fails.append(f"normal form not a fixpoint: {print_term(t)} -> {again}")
    return fails


# evaluation targets


@functools.cache
def _builtin_targets():
    return [("z2_with_zero", bundled_monoid()), ("partial_bijections_2", symmetric_inverse_monoid(2))]


@suite("rho-morphism", "targets")
def check_rho_morphism(rng, k, ctx):
    fails = []
    for name, m in ctx.finite_targets():
        for _ in range(k):
            chi = {a: rng.randrange(m.size) for a in ctx.alphabet}
            x, y = ctx.unpruned(rng), ctx.unpruned(rng)
            rx, ry = rho(x, m, chi), rho(y, m, chi)
            if rho(algebra.mult_unpruned(x, y), m, chi) != m.mult(rx, ry):
                fails.append(f"[{name}] rho(X x Y) != rho X rho Y for {_show(x, y)}")
            if rho(algebra.plus_unpruned(x), m, chi) != m.plus(rx):
                fails.append(f"[{name}] rho(X^(+)) != rho(X)^+ for {_show(x)}")
            if rho(algebra.star_unpruned(x), m, chi) != m.star(rx):
                fails.append(f"[{name}] rho(X^(*)) != rho(X)^* for {_show(x)}")
    return fails


@suite("rho-prune-invariance", "targets")
def check_rho_prune_invariance(rng, k, ctx):
    fails = []
    free = FreeMonoidTarget()
    gens = {a: free.generator(a) for a in ctx.alphabet}
    for _ in range(k):
        x = ctx.unpruned(rng)
        p = prune(x)
        if rho(x, free, gens) != rho(p, free, gens) or rho(x, free, gens) != algebra.trunk_word(x):
            fails.append(f"[free monoid] rho(X) != rho(prune X) or trunk word for {_show(x)}")
        for name, m in ctx.finite_targets():
            chi = {a: rng.randrange(m.size) for a in ctx.alphabet}
            if rho(x, m, chi) != rho(p, m, chi):
                fails.append(f"[{name}] rho(X) != rho(prune X) for {_show(x)}")
    return fails


@suite("tau-order", "targets")
def check_tau_order(rng, k, ctx):
    fails = []
    for name, m in ctx.finite_targets():
        for _ in range(k):
            chi = {a: rng.randrange(m.size) for a in ctx.alphabet}
            x = algebra.plus_unpruned(ctx.unpruned(rng))
            if tau(x, m, chi) != tau(x, m, chi, rng=random.Random(rng.random())):
                fails.append(f"[{name}] tau depends on factor order for {_show(x)}")
    return fails


@suite("freeness", "targets")
def check_freeness(rng, k, ctx):
    fails = []
    trees = TreeTarget()
    gens = {a: trees.generator(a) for a in ctx.alphabet}
    for _ in range(k):
        x = ctx.pruned(rng)
        if not trees.eq(rho(x, trees, gens), x):
            fails.append(f"rho into trees with inclusion is not the identity on {_show(x)}")
    return fails


def run_suites(
    samples: int,
    seed: int,
    ctx: Context | None = None,
    names: Sequence[str] | None = None,
) -> dict[str, list[str]]:
    ctx = ctx or Context()
    results = {}
    for name in names or SUITES:
        rng = random.Random(f"{seed}:{name}")
        results[name] = SUITES[name](rng, samples, ctx)
    return results
