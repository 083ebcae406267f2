"""Birooted edge-labelled directed trees.

A tree is stored as a representative: vertices are the integers
``0..vertex_count-1`` and edges are ``(src, dst, label)`` triples.  Two
representatives of the same isomorphism type compare unequal under ``==``;
use :func:`freeadequate.canonical.iso` to compare elements.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

LETTER_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

OUT = 0
IN = 1


class TreeError(ValueError):
    """Raised when a candidate tree violates a structural invariant."""


class IndexOutOfRange(TreeError):
    pass


class CyclicTree(TreeError):
    pass


class DisconnectedTree(TreeError):
    pass


class NoDirectedPath(TreeError):
    pass


class AlphabetError(ValueError):
    pass


def check_letter(symbol: str, alphabet: Iterable[str] | None = None) -> str:
    if not isinstance(symbol, str) or not LETTER_RE.match(symbol):
        raise AlphabetError(f"invalid letter token {symbol!r}")
    if alphabet is not None and symbol not in alphabet:
        raise AlphabetError(f"letter {symbol!r} not in alphabet")
    return symbol


class Incidence(NamedTuple):
    """An edge seen from one of its endpoints."""

    edge: int
    orient: int  # OUT if the edge leaves the vertex, IN if it arrives
    label: str
    other: int


@dataclass(frozen=True)
class SigmaTree:
    vertex_count: int
    edges: tuple[tuple[int, int, str], ...]
    start: int = 0
    end: int = 0

    # Munn trees reuse this class without the start->end path requirement.
    _require_path = True

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(s), int(d), str(l)) for s, d, l in self.edges))
        _check_structure(self)

    @cached_property
    def adjacency(self) -> tuple[tuple[Incidence, ...], ...]:
        adj: list[list[Incidence]] = [[] for _ in range(self.vertex_count)]
        for i, (s, d, label) in enumerate(self.edges):
            adj[s].append(Incidence(i, OUT, label, d))
            adj[d].append(Incidence(i, IN, label, s))
        return tuple(tuple(a) for a in adj)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def labels(self) -> set[str]:
        return {label for _, _, label in self.edges}

    def with_marks(self, start: int, end: int) -> SigmaTree:
        return type(self)(self.vertex_count, self.edges, start, end)

    # JSON interchange

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edges": [[s, d, label] for s, d, label in self.edges],
            "start": self.start,
            "end": self.end,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> SigmaTree:
        expected = {"vertex_count", "edges", "start", "end"}
        if not isinstance(data, dict):
            raise TreeError("tree JSON must be an object")
        unknown = set(data) - expected
        if unknown:
            raise TreeError(f"unknown fields: {sorted(unknown)}")
        missing = expected - set(data)
        if missing:
            raise TreeError(f"missing fields: {sorted(missing)}")
        edges = []
        for item in data["edges"]:
            if not (isinstance(item, list) and len(item) == 3):
                raise TreeError(f"edge must be a [src, dst, label] triple: {item!r}")
            s, d, label = item
            if not (isinstance(s, int) and isinstance(d, int)):
                raise TreeError(f"edge endpoints must be integers: {item!r}")
            edges.append((s, d, check_letter(label)))
        for key in ("vertex_count", "start", "end"):
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise TreeError(f"{key} must be an integer")
        return cls(data["vertex_count"], tuple(edges), data["start"], data["end"])

    @classmethod
    def from_json(cls, text: str) -> SigmaTree:
        return cls.from_dict(json.loads(text))


def _check_structure(t: SigmaTree) -> None:
    n = t.vertex_count
    if n < 1:
        raise IndexOutOfRange("vertex_count must be at least 1")
    for v in (t.start, t.end):
        if not 0 <= v < n:
            raise IndexOutOfRange(f"marked vertex {v} outside [0, {n})")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, d, label in t.edges:
        if not (0 <= s < n and 0 <= d < n):
            raise IndexOutOfRange(f"edge ({s}, {d}) has an endpoint outside [0, {n})")
        check_letter(label)
        rs, rd = find(s), find(d)
        if rs == rd:
            raise CyclicTree("underlying graph contains a cycle")
        parent[rs] = rd
    if len(t.edges) != n - 1:
        raise DisconnectedTree("underlying graph is disconnected")
    if t._require_path and _directed_path(t, t.start, t.end) is None:
        raise NoDirectedPath("no directed path from start to end")


def _directed_path(t: SigmaTree, source: int, target: int) -> list[int] | None:
    """Edge indices of the directed path source -> target, or None."""
    if source == target:
        return []
    out: list[list[tuple[int, int]]] = [[] for _ in range(t.vertex_count)]
    for i, (s, d, _) in enumerate(t.edges):
        out[s].append((i, d))
    via: dict[int, int] = {source: -1}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for i, d in out[v]:
            if d not in via:
                via[d] = i
                queue.append(d)
    if target not in via:
        return None
    path = []
    v = target
    while v != source:
        i = via[v]
        path.append(i)
        v = t.edges[i][0]
    return path[::-1]


def validate(raw) -> SigmaTree:
    """Return ``raw`` as a validated tree, raising a :class:`TreeError` subclass otherwise.

    Accepts a :class:`SigmaTree`, a JSON-shaped dict, or a JSON string.
    """
    if isinstance(raw, SigmaTree):
        _check_structure(raw)
        return raw
    if isinstance(raw, str):
        return SigmaTree.from_json(raw)
    return SigmaTree.from_dict(raw)


def trivial_tree() -> SigmaTree:
    return SigmaTree(1, (), 0, 0)


def base_tree(a: str, alphabet: Iterable[str] | None = None) -> SigmaTree:
    return SigmaTree(2, ((0, 1, check_letter(a, alphabet)),), 0, 1)


def trunk(x: SigmaTree) -> list[int]:
    path = _directed_path(x, x.start, x.end)
    assert path is not None
    return path


def trunk_vertices(x: SigmaTree) -> list[int]:
    verts = [x.start]
    for i in trunk(x):
        verts.append(x.edges[i][1])
    return verts


def is_idempotent_tree(x: SigmaTree) -> bool:
    return x.start == x.end


def distances_from_trunk(x: SigmaTree) -> list[int]:
    dist = [-1] * x.vertex_count
    queue = deque()
    for v in trunk_vertices(x):
        dist[v] = 0
        queue.append(v)
    while queue:
        v = queue.popleft()
        for inc in x.adjacency[v]:
            if dist[inc.other] < 0:
                dist[inc.other] = dist[v] + 1
                queue.append(inc.other)
    return dist


def delta(x: SigmaTree) -> int:
    """Greatest undirected distance of a vertex from the trunk."""
    return max(distances_from_trunk(x))


@dataclass(frozen=True)
class Branch:
    anchor: int
    via_edge: int
    root: int
    vertices: frozenset[int]
    edges: frozenset[int] = field(default_factory=frozenset)


def component(x: SigmaTree, root: int, banned_edges: Iterable[int] = ()) -> tuple[list[int], list[int]]:
    """Vertices and edges reachable from ``root`` without crossing ``banned_edges``."""
    banned = set(banned_edges)
    seen = {root}
    verts = [root]
    edges = []
    stack = [root]
    while stack:
        v = stack.pop()
        for inc in x.adjacency[v]:
            if inc.edge in banned or inc.other in seen:
                continue
            seen.add(inc.other)
            verts.append(inc.other)
            edges.append(inc.edge)
            stack.append(inc.other)
    return verts, edges


def branch_at(x: SigmaTree, e: int, anchor: int) -> Branch:
    """The part of ``x`` on the far side of edge ``e`` from ``anchor``, including ``e``."""
    if not 0 <= e < x.edge_count:
        raise IndexError(f"edge {e} out of range")
    s, d, _ = x.edges[e]
    if anchor not in (s, d):
        raise ValueError(f"edge {e} is not incident to vertex {anchor}")
    root = d if anchor == s else s
    verts, edges = component(x, root, (e,))
    return Branch(anchor, e, root, frozenset(verts), frozenset(edges) | {e})


def subtree(x: SigmaTree, verts: Iterable[int], start: int, end: int, cls=None) -> SigmaTree:
    """Induced tree on ``verts`` (which must be connected), renumbered in ascending order."""
    keep = sorted(set(verts))
    index = {v: i for i, v in enumerate(keep)}
    edges = tuple(
        (index[s], index[d], label) for s, d, label in x.edges if s in index and d in index
    )
    return (cls or type(x))(len(keep), edges, index[start], index[end])


def idempotent_part(x: SigmaTree, v: int, banned_edges: Iterable[int]) -> SigmaTree:
    """The component of ``v`` avoiding ``banned_edges``, as an idempotent tree rooted at ``v``."""
    verts, _ = component(x, v, banned_edges)
    return subtree(x, verts, v, v)


def out_edges(x: SigmaTree, v: int) -> list[Incidence]:
    return [inc for inc in x.adjacency[v] if inc.orient == OUT]


def in_edges(x: SigmaTree, v: int) -> list[Incidence]:
    return [inc for inc in x.adjacency[v] if inc.orient == IN]
