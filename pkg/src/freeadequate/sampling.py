"""Seeded random terms and trees, and exhaustive tree enumeration."""

from __future__ import annotations

import random
from typing import Iterator, Sequence

from .canonical import brute_force_iso, canonical_form
from .morphism import OracleBoundError, prune
from .term import Letter, Plus, Prod, Star, Term, eval_unpruned
from .tree import SigmaTree, trivial_tree

# node kind probabilities: letter, product, plus, star
TERM_WEIGHTS = (0.4, 0.3, 0.15, 0.15)


def random_term(rng: random.Random, budget: int, alphabet: Sequence[str]) -> Term:
    """Random term with at most ``budget`` letter occurrences (so at most that many edges)."""
    if budget < 1:
        raise ValueError("budget must be positive")
    kind = rng.choices(("letter", "prod", "plus", "star"), TERM_WEIGHTS)[0]
    if kind == "letter" or (kind == "prod" and budget < 2):
        return Letter(rng.choice(alphabet))
    if kind == "prod":
        left = rng.randint(1, budget - 1)
        return Prod(random_term(rng, left, alphabet), random_term(rng, budget - left, alphabet))
    arg = random_term(rng, budget, alphabet)
    return Plus(arg) if kind == "plus" else Star(arg)


def random_unpruned_tree(rng: random.Random, max_edges: int, alphabet: Sequence[str]) -> SigmaTree:
    return eval_unpruned(random_term(rng, max_edges, alphabet))


def random_pruned_tree(rng: random.Random, max_edges: int, alphabet: Sequence[str]) -> SigmaTree:
    return prune(random_unpruned_tree(rng, max_edges, alphabet))


def random_idempotent_tree(rng: random.Random, max_edges: int, alphabet: Sequence[str]) -> SigmaTree:
    t = random_term(rng, max_edges, alphabet)
    t = Plus(t) if rng.random() < 0.5 else Star(t)
    return prune(eval_unpruned(t))


def random_attached_tree(rng: random.Random, edges: int, alphabet: Sequence[str]) -> SigmaTree:
    """Random tree grown by leaf attachment, marked at a random directed pair."""
    raw = []
    for v in range(1, edges + 1):
        u = rng.randrange(v)
        a = rng.choice(alphabet)
        raw.append((u, v, a) if rng.random() < 0.5 else (v, u, a))
    base = SigmaTree(edges + 1, tuple(raw), 0, 0)
    start = rng.randrange(edges + 1)
    # vertices reachable from start along directed edges
    reach = [start]
    for v in reach:
        for inc in base.adjacency[v]:
            if inc.orient == 0 and inc.other not in reach:
                reach.append(inc.other)
    return base.with_marks(start, rng.choice(reach))


def _grow(x: SigmaTree, alphabet: Sequence[str]) -> Iterator[SigmaTree]:
    """Trees with one more edge: a new leaf anywhere, or the trunk extended past the end."""
    n = x.vertex_count
    for v in range(n):
        for a in alphabet:
            yield SigmaTree(n + 1, x.edges + ((v, n, a),), x.start, x.end)
            yield SigmaTree(n + 1, x.edges + ((n, v, a),), x.start, x.end)
    for a in alphabet:
        yield SigmaTree(n + 1, x.edges + ((x.end, n, a),), x.start, n)


def enumerate_trees(
    max_edges: int, alphabet: Sequence[str], verify: bool = False
) -> list[list[SigmaTree]]:
    """All trees up to isomorphism, grouped by edge count.

    Every tree with ``k`` edges arises from one with ``k - 1`` edges by
    adding a leaf away from the marked vertices, or (for a bare path) by
    extending the trunk.  Duplicates are dropped by canonical key; with
    ``verify`` each dropped duplicate is confirmed isomorphic to its kept
    representative by exhaustive search.
    """
    levels = [[trivial_tree()]]
    for _ in range(max_edges):
        seen: dict[bytes, SigmaTree] = {}
        for x in levels[-1]:
            for y in _grow(x, alphabet):
                key = canonical_form(y)
                kept = seen.get(key)
                if kept is None:
                    seen[key] = y
                elif verify and not brute_force_iso(kept, y):
                    raise AssertionError(f"canonical key collision between {kept} and {y}")
        levels.append(list(seen.values()))
    return levels


ENUMERATION_BOUND = 5


def enumerate_elements(
    max_edges: int, alphabet: Sequence[str], bound: int = ENUMERATION_BOUND
) -> dict[bytes, SigmaTree]:
    """Distinct pruned trees reachable by pruning trees with at most ``max_edges`` edges."""
    if max_edges > bound:
        raise OracleBoundError(f"enumeration limited to {bound} edges (asked for {max_edges})")
    elements: dict[bytes, SigmaTree] = {}
    for level in enumerate_trees(max_edges, alphabet):
        for x in level:
            p = prune(x)
            elements.setdefault(canonical_form(p), p)
    return dict(sorted(elements.items()))
