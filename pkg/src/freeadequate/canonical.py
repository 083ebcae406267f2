"""Canonical byte keys for birooted trees.

The tree is rooted at its start vertex.  A vertex encodes as an end-flag
byte, a child count and the sorted child items; a child item is the edge
orientation byte, the length-prefixed label and the child's encoding.  The
encoding is prefix-free, so sorting items as byte strings gives a total,
index-independent order.
"""

from __future__ import annotations

import struct

from .tree import SigmaTree

_U32 = struct.Struct(">I")


def _item_prefix(orient: int, label: str) -> bytes:
    raw = label.encode("utf-8")
    return bytes([orient]) + _U32.pack(len(raw)) + raw


def encode_rooted(x: SigmaTree, root: int, parent_edge: int | None = None) -> bytes:
    """Encoding of the part of ``x`` hanging from ``root`` away from ``parent_edge``."""
    # iterative post-order; trees from long products are deep
    order = []
    parent_of = {root: parent_edge}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for inc in x.adjacency[v]:
            if inc.edge == parent_of[v]:
                continue
            parent_of[inc.other] = inc.edge
            stack.append(inc.other)
    enc: dict[int, bytes] = {}
    for v in reversed(order):
        items = sorted(
            _item_prefix(inc.orient, inc.label) + enc[inc.other]
            for inc in x.adjacency[v]
            if inc.edge != parent_of[v]
        )
        flag = b"\x01" if v == x.end else b"\x00"
        enc[v] = flag + _U32.pack(len(items)) + b"".join(items)
    return enc[root]


def branch_key(x: SigmaTree, v: int, edge: int) -> bytes:
    """Key of the branch leaving ``v`` through ``edge`` (edge included)."""
    for inc in x.adjacency[v]:
        if inc.edge == edge:
            return _item_prefix(inc.orient, inc.label) + encode_rooted(x, inc.other, edge)
    raise ValueError(f"edge {edge} is not incident to vertex {v}")


def canonical_form(x: SigmaTree) -> bytes:
    return encode_rooted(x, x.start)


def iso(x: SigmaTree, y: SigmaTree) -> bool:
    if x.vertex_count != y.vertex_count:
        return False
    return canonical_form(x) == canonical_form(y)


def brute_force_iso(x: SigmaTree, y: SigmaTree) -> bool:
    """Search for a vertex bijection preserving edges, labels, directions and marks.

    Independent of :func:`canonical_form`; exponential, for small trees only.
    """
    if x.vertex_count != y.vertex_count or x.edge_count != y.edge_count:
        return False
    y_edges = set(y.edges)
    n = x.vertex_count
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return all((image[s], image[d], label) in y_edges for s, d, label in x.edges)
        for w in range(n):
            if used[w]:
                continue
            if (v == x.start) != (w == y.start) or (v == x.end) != (w == y.end):
                continue
            if len(x.adjacency[v]) != len(y.adjacency[w]):
                continue
            # edges to already-mapped vertices must be present
            ok = True
            for inc in x.adjacency[v]:
                u = inc.other
                if u < v:
                    s, d = (v, u) if inc.orient == 0 else (u, v)
                    ms = w if s == v else image[s]
                    md = w if d == v else image[d]
                    if (ms, md, inc.label) not in y_edges:
                        ok = False
                        break
            if not ok:
                continue
            image[v] = w
            used[w] = True
            if extend(v + 1):
                return True
            used[w] = False
            image[v] = -1
        return False

    return extend(0)
