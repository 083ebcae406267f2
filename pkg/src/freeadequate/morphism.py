"""Tree morphisms, branch folding and pruning.

Pruning works by folding branches.  Orient every non-trunk edge away from
the trunk; the edge ``e1`` from ``v`` to ``u`` together with everything
beyond ``u`` is a branch.  The branch can be folded when some other edge
``e2`` at ``v`` has the same label and orientation and the part beyond
``u`` maps, root to far end of ``e2``, into the rest of the tree.  A tree
has a non-identity retraction exactly when some branch can be folded, so
repeating folds until none applies yields the pruned retract.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from .tree import SigmaTree, component, distances_from_trunk, subtree, trunk


class OracleBoundError(ValueError):
    """An exhaustive search was asked to handle a tree above its size guard."""


@dataclass(frozen=True)
class TreeMorphism:
    domain: SigmaTree
    codomain: SigmaTree
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    def is_idempotent(self) -> bool:
        if self.domain != self.codomain:
            return False
        vm, em = self.vertex_map, self.edge_map
        return all(vm[vm[v]] == vm[v] for v in range(len(vm))) and all(
            em[em[e]] == em[e] for e in range(len(em))
        )

    def is_identity(self) -> bool:
        return self.vertex_map == tuple(range(len(self.vertex_map))) and self.edge_map == tuple(
            range(len(self.edge_map))
        )


def identity_morphism(x: SigmaTree) -> TreeMorphism:
    return TreeMorphism(x, x, tuple(range(x.vertex_count)), tuple(range(x.edge_count)))


def check_morphism(m: TreeMorphism) -> bool:
    x, y = m.domain, m.codomain
    vm, em = m.vertex_map, m.edge_map
    if len(vm) != x.vertex_count or len(em) != x.edge_count:
        return False
    if any(not 0 <= w < y.vertex_count for w in vm) or any(not 0 <= f < y.edge_count for f in em):
        return False
    for e, (s, d, label) in enumerate(x.edges):
        fs, fd, flabel = y.edges[em[e]]
        if vm[s] != fs or vm[d] != fd or label != flabel:
            return False
    return vm[x.start] == y.start and vm[x.end] == y.end


def maps_trunk_bijectively(m: TreeMorphism) -> bool:
    """Whether the trunk of the domain is carried edge-for-edge onto the trunk of the codomain."""
    return [m.edge_map[e] for e in trunk(m.domain)] == trunk(m.codomain)


def _incidence_index(t: SigmaTree) -> list[dict[tuple[str, int], list[int]]]:
    index: list[dict[tuple[str, int], list[int]]] = [defaultdict(list) for _ in range(t.vertex_count)]
    for v, incs in enumerate(t.adjacency):
        for inc in incs:
            index[v][inc.label, inc.orient].append(inc.other)
    return index


def host_sets(
    source: SigmaTree,
    source_root: int,
    target: SigmaTree,
    *,
    source_parent_edge: int | None = None,
    target_vertices: Iterable[int] | None = None,
) -> dict[int, set[int]]:
    """For each source vertex below ``source_root``, the target vertices able to host it.

    A target vertex hosts a source vertex when the source subtree below it has
    a label- and direction-preserving map into ``target`` (restricted to
    ``target_vertices``) sending it there.  Since the source is a tree, each
    child subtree is placed independently.
    """
    allowed = set(range(target.vertex_count)) if target_vertices is None else set(target_vertices)
    tindex = _incidence_index(target)

    order = []
    children: dict[int, list[tuple[str, int, int]]] = {}
    parent_of = {source_root: source_parent_edge}
    stack = [source_root]
    while stack:
        s = stack.pop()
        order.append(s)
        kids = []
        for inc in source.adjacency[s]:
            if inc.edge == parent_of[s]:
                continue
            parent_of[inc.other] = inc.edge
            kids.append((inc.label, inc.orient, inc.other))
            stack.append(inc.other)
        children[s] = kids

    host: dict[int, set[int]] = {}
    for s in reversed(order):
        kids = children[s]
        if not kids:
            host[s] = allowed
            continue
        hs = set()
        for x in allowed:
            nbrs = tindex[x]
            for label, orient, c in kids:
                hc = host[c]
                if not any(y in hc for y in nbrs.get((label, orient), ()) if y in allowed):
                    break
            else:
                hs.add(x)
        host[s] = hs
    return host


def simulate(
    source: SigmaTree,
    source_root: int,
    target: SigmaTree,
    target_root: int,
    *,
    source_parent_edge: int | None = None,
    target_vertices: Iterable[int] | None = None,
) -> bool:
    """Whether the source, rooted at ``source_root``, maps into ``target`` with root at ``target_root``."""
    allowed = None if target_vertices is None else set(target_vertices)
    if allowed is not None and target_root not in allowed:
        return False
    host = host_sets(
        source,
        source_root,
        target,
        source_parent_edge=source_parent_edge,
        target_vertices=allowed,
    )
    return target_root in host[source_root]


def iter_folds(x: SigmaTree) -> Iterator[tuple[int, int]]:
    """All foldable ``(e1, e2)`` pairs, ordered by shared vertex, then ``e1``, then ``e2``."""
    on_trunk = set(trunk(x))
    dist = distances_from_trunk(x)
    for v in range(x.vertex_count):
        incs = sorted(x.adjacency[v])
        for inc in incs:
            if inc.edge in on_trunk or dist[inc.other] <= dist[v]:
                continue
            siblings = [
                other.other
                for other in incs
                if other.edge != inc.edge and other.label == inc.label and other.orient == inc.orient
            ]
            if not siblings:
                continue
            branch_verts, _ = component(x, inc.other, (inc.edge,))
            rest = set(range(x.vertex_count)).difference(branch_verts)
            host = host_sets(
                x, inc.other, x, source_parent_edge=inc.edge, target_vertices=rest
            )[inc.other]
            for other in incs:
                if (
                    other.edge != inc.edge
                    and other.label == inc.label
                    and other.orient == inc.orient
                    and other.other in host
                ):
                    yield inc.edge, other.edge


def find_fold(x: SigmaTree) -> tuple[int, int] | None:
    return next(iter_folds(x), None)


def fold_branch(x: SigmaTree, e1: int) -> SigmaTree:
    """Delete the branch beyond non-trunk edge ``e1`` (the side away from the trunk)."""
    dist = distances_from_trunk(x)
    s, d, _ = x.edges[e1]
    far = d if dist[d] > dist[s] else s
    gone, _ = component(x, far, (e1,))
    keep = set(range(x.vertex_count)).difference(gone)
    return subtree(x, keep, x.start, x.end)


def prune(x: SigmaTree, order: str = "first", rng: random.Random | None = None) -> SigmaTree:
    """The pruned retract of ``x``.

    ``order`` picks the first or last available fold; passing ``rng`` picks a
    random one instead.  All choices give isomorphic results.
    """
    if order not in ("first", "last"):
        raise ValueError(f"unknown fold order {order!r}")
    while True:
        if rng is not None:
            folds = list(iter_folds(x))
            fold = rng.choice(folds) if folds else None
        elif order == "first":
            fold = find_fold(x)
        else:
            folds = list(iter_folds(x))
            fold = folds[-1] if folds else None
        if fold is None:
            return x
        x = fold_branch(x, fold[0])


def is_pruned(x: SigmaTree) -> bool:
    return find_fold(x) is None


DEFAULT_ORACLE_BOUND = 12


def iter_endomorphisms(x: SigmaTree, idempotent_only: bool = False) -> Iterator[TreeMorphism]:
    """Exhaustive backtracking over vertex maps extended edge by edge from the start vertex."""
    n = x.vertex_count
    # BFS order from start; each non-root vertex remembers the edge to its parent
    order = [x.start]
    link: dict[int, tuple[int, int, str, int]] = {}
    seen = {x.start}
    for v in order:
        for inc in x.adjacency[v]:
            if inc.other not in seen:
                seen.add(inc.other)
                link[inc.other] = (v, inc.edge, inc.label, inc.orient)
                order.append(inc.other)
    lookup: dict[tuple[int, str, int], list[tuple[int, int]]] = defaultdict(list)
    for v, incs in enumerate(x.adjacency):
        for inc in incs:
            lookup[v, inc.label, inc.orient].append((inc.edge, inc.other))

    vmap = [-1] * n
    emap = [-1] * x.edge_count

    position = {v: i for i, v in enumerate(order)}

    def consistent_idempotent(pos: int) -> bool:
        # partial check of vmap o vmap == vmap on the placed prefix
        u = order[pos]
        w = vmap[u]
        if position[w] <= pos and vmap[w] != w:
            return False
        if w != u and any(vmap[order[i]] == u for i in range(pos)):
            return False
        return True

    def extend(pos: int) -> Iterator[TreeMorphism]:
        if pos == n:
            if vmap[x.end] != x.end:
                return
            m = TreeMorphism(x, x, tuple(vmap), tuple(emap))
            if not idempotent_only or m.is_idempotent():
                yield m
            return
        u = order[pos]
        p, e, label, orient = link[u]
        for f, w in lookup[vmap[p], label, orient]:
            vmap[u] = w
            emap[e] = f
            if not idempotent_only or consistent_idempotent(pos):
                yield from extend(pos + 1)
        vmap[u] = -1
        emap[e] = -1

    vmap[x.start] = x.start
    yield from extend(1)


def enumerate_retractions(x: SigmaTree, max_vertices: int = DEFAULT_ORACLE_BOUND) -> list[TreeMorphism]:
    """Every idempotent endomorphism of ``x``, identity included."""
    if x.vertex_count > max_vertices:
        raise OracleBoundError(
            f"tree has {x.vertex_count} vertices; retraction enumeration is limited to {max_vertices}"
        )
    return list(iter_endomorphisms(x, idempotent_only=True))
