"""The (2,1,1,0)-operations on trees and folding onto Munn trees."""

from __future__ import annotations

from .morphism import prune
from .tree import SigmaTree, trivial_tree, trunk


def mult_unpruned(x: SigmaTree, y: SigmaTree) -> SigmaTree:
    """Glue the end vertex of ``x`` to the start vertex of ``y``."""
    n = x.vertex_count

    def shift(v: int) -> int:
        if v == y.start:
            return x.end
        return n + (v if v < y.start else v - 1)

    edges = x.edges + tuple((shift(s), shift(d), label) for s, d, label in y.edges)
    return type(x)(n + y.vertex_count - 1, edges, x.start, shift(y.end))


def plus_unpruned(x: SigmaTree) -> SigmaTree:
    return type(x)(x.vertex_count, x.edges, x.start, x.start)


def star_unpruned(x: SigmaTree) -> SigmaTree:
    return type(x)(x.vertex_count, x.edges, x.end, x.end)


def mult(x: SigmaTree, y: SigmaTree) -> SigmaTree:
    return prune(mult_unpruned(x, y))


def plus(x: SigmaTree) -> SigmaTree:
    return prune(plus_unpruned(x))


def star(x: SigmaTree) -> SigmaTree:
    return prune(star_unpruned(x))


def mult_all(*factors: SigmaTree) -> SigmaTree:
    """Product of several trees, pruned once at the end."""
    out = trivial_tree()
    for f in factors:
        out = mult_unpruned(out, f)
    return prune(out)


def trunk_word(x: SigmaTree) -> tuple[str, ...]:
    return tuple(x.edges[e][2] for e in trunk(x))


class MunnTree(SigmaTree):
    """A folded tree: no two edges share a label and an endpoint of the same kind."""

    _require_path = False


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)
        return min(ra, rb)


def fold_munn(x: SigmaTree) -> MunnTree:
    """Identify edges sharing (source, label) or (target, label) until none remain.

    Every identification merges two vertices and two edges, so the result is
    again a tree.
    """
    uf = _UnionFind(x.vertex_count)
    changed = True
    while changed:
        changed = False
        out: dict[tuple[int, str], int] = {}
        inn: dict[tuple[int, str], int] = {}
        for s, d, label in x.edges:
            s, d = uf.find(s), uf.find(d)
            t = uf.find(out.setdefault((s, label), d))
            if t != d:
                uf.union(t, d)
                changed = True
                continue
            u = uf.find(inn.setdefault((d, label), s))
            if u != s:
                uf.union(u, s)
                changed = True
    roots = sorted({uf.find(v) for v in range(x.vertex_count)})
    index = {r: i for i, r in enumerate(roots)}
    edges = {(index[uf.find(s)], index[uf.find(d)], label) for s, d, label in x.edges}
    return MunnTree(
        len(roots),
        tuple(sorted(edges)),
        index[uf.find(x.start)],
        index[uf.find(x.end)],
    )


def munn_mult(m1: SigmaTree, m2: SigmaTree) -> MunnTree:
    """Free inverse monoid product: glue, then fold."""
    glued = mult_unpruned(
        MunnTree(m1.vertex_count, m1.edges, m1.start, m1.end),
        MunnTree(m2.vertex_count, m2.edges, m2.start, m2.end),
    )
    return fold_munn(glued)
