"""Evaluating trees in adequate monoids.

An idempotent tree rooted at ``v`` evaluates to the product, over edges at
``v``, of ``(chi(a) . value beyond)^+`` for outgoing edges and
``(value beyond . chi(a))^*`` for incoming ones.  A general tree evaluates
to the alternating product of these idempotent values at trunk vertices and
the generator images of the trunk labels.  This is the unique morphism from
the free adequate monoid extending the generator assignment.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable, Hashable, Mapping, Protocol, Sequence

import numpy as np

from . import algebra
from .canonical import branch_key, canonical_form
from .tree import OUT, SigmaTree, base_tree, is_idempotent_tree, trivial_tree, trunk, trunk_vertices


class EvaluationTarget(Protocol):
    """What an adequate monoid must provide for evaluation."""

    def identity(self) -> Any: ...

    def mult(self, x: Any, y: Any) -> Any: ...

    def plus(self, x: Any) -> Any: ...

    def star(self, x: Any) -> Any: ...

    def eq(self, x: Any, y: Any) -> bool: ...


class FreeMonoidTarget:
    """Words over the alphabet; every element is R*- and L*-related to the empty word."""

    def identity(self) -> tuple[str, ...]:
        return ()

    def mult(self, x, y):
        return tuple(x) + tuple(y)

    def plus(self, x):
        return ()

    def star(self, x):
        return ()

    def eq(self, x, y) -> bool:
        return tuple(x) == tuple(y)

    def generator(self, letter: str) -> tuple[str, ...]:
        return (letter,)


class TreeTarget:
    """The free adequate monoid itself, with pruned operations."""

    def identity(self) -> SigmaTree:
        return trivial_tree()

    def mult(self, x, y):
        return algebra.mult(x, y)

    def plus(self, x):
        return algebra.plus(x)

    def star(self, x):
        return algebra.star(x)

    def eq(self, x, y) -> bool:
        return canonical_form(x) == canonical_form(y)

    def generator(self, letter: str) -> SigmaTree:
        return base_tree(letter)


class TargetError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteAdequateMonoid:
    """A finite (2,1,1,0)-algebra given by tables over element indices."""

    elements: tuple[str, ...]
    identity_index: int
    table: np.ndarray
    plus_map: tuple[int, ...]
    star_map: tuple[int, ...]
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.elements)
        table = np.asarray(self.table, dtype=np.int64)
        if table.shape != (n, n):
            raise TargetError(f"mult table must be {n}x{n}, got {table.shape}")
        if n == 0:
            raise TargetError("a monoid needs at least one element")
        if len(set(self.elements)) != n:
            raise TargetError("element names must be distinct")
        if not 0 <= self.identity_index < n:
            raise TargetError("identity index out of range")
        if len(self.plus_map) != n or len(self.star_map) != n:
            raise TargetError("plus and star maps must have one entry per element")
        values = np.concatenate([table.ravel(), np.asarray(self.plus_map), np.asarray(self.star_map)])
        if values.min() < 0 or values.max() >= n:
            raise TargetError("table entries must be element indices")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "plus_map", tuple(int(v) for v in self.plus_map))
        object.__setattr__(self, "star_map", tuple(int(v) for v in self.star_map))
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.elements)})

    @property
    def size(self) -> int:
        return len(self.elements)

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise TargetError(f"unknown element {name!r}") from None

    # EvaluationTarget
    def identity(self) -> int:
        return self.identity_index

    def mult(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def plus(self, x: int) -> int:
        return self.plus_map[x]

    def star(self, x: int) -> int:
        return self.star_map[x]

    def eq(self, x: int, y: int) -> bool:
        return x == y

    @classmethod
    def from_dict(cls, data: Mapping) -> FiniteAdequateMonoid:
        expected = {"elements", "identity", "mult", "plus", "star"}
        if not isinstance(data, Mapping):
            raise TargetError("monoid JSON must be an object")
        if set(data) != expected:
            extra = sorted(set(data) - expected)
            missing = sorted(expected - set(data))
            raise TargetError(f"bad fields (unknown {extra}, missing {missing})")
        elements = tuple(str(e) for e in data["elements"])
        ident = data["identity"]
        if isinstance(ident, str):
            ident = elements.index(ident) if ident in elements else -1
        try:
            table = np.array(data["mult"], dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise TargetError(f"malformed mult table: {exc}") from None
        return cls(elements, int(ident), table, tuple(data["plus"]), tuple(data["star"]))

    @classmethod
    def from_json(cls, text: str) -> FiniteAdequateMonoid:
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> FiniteAdequateMonoid:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "identity": self.identity_index,
            "mult": self.table.tolist(),
            "plus": list(self.plus_map),
            "star": list(self.star_map),
        }


def _kernel_signature(values: np.ndarray) -> tuple[int, ...]:
    """Relabel a vector by first occurrence, so equal signatures mean equal kernels."""
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(int(v), len(seen)) for v in values)


def r_star_classes(m: FiniteAdequateMonoid) -> list[tuple[int, ...]]:
    """a R* b iff xa = ya <=> xb = yb for all x, y: compare kernels of the columns."""
    return [_kernel_signature(m.table[:, a]) for a in range(m.size)]


def l_star_classes(m: FiniteAdequateMonoid) -> list[tuple[int, ...]]:
    """a L* b iff ax = ay <=> bx = by for all x, y: compare kernels of the rows."""
    return [_kernel_signature(m.table[a, :]) for a in range(m.size)]


def validate_adequate(m: FiniteAdequateMonoid) -> list[str]:
    """Every violated axiom, by name; an empty list means ``m`` is an adequate monoid."""
    t = m.table
    n = m.size
    report = []
    idx = np.arange(n)
    assoc = t[t[:, :, None], idx[None, None, :]] == t[idx[:, None, None], t[None, :, :]]
    if not assoc.all():
        x, y, z = (int(v) for v in np.argwhere(~assoc)[0])
        report.append(f"associativity fails: ({m.elements[x]} {m.elements[y]}) {m.elements[z]}")
    e = m.identity_index
    if not (np.array_equal(t[e, :], idx) and np.array_equal(t[:, e], idx)):
        report.append(f"identity law fails for {m.elements[e]}")

    idempotents = [i for i in range(n) if t[i, i] == i]
    for i in idempotents:
        for j in idempotents:
            if i < j and t[i, j] != t[j, i]:
                report.append(f"idempotents do not commute: {m.elements[i]}, {m.elements[j]}")

    for name, classes, op in (("plus", r_star_classes(m), m.plus_map), ("star", l_star_classes(m), m.star_map)):
        relation = "R*" if name == "plus" else "L*"
        for x in range(n):
            candidates = [i for i in idempotents if classes[i] == classes[x]]
            if not candidates:
                report.append(f"no idempotent in the {relation}-class of {m.elements[x]}")
            elif len(candidates) > 1:
                names = ", ".join(m.elements[i] for i in candidates)
                report.append(f"{relation}-class of {m.elements[x]} has several idempotents: {names}")
            y = op[x]
            if t[y, y] != y:
                report.append(f"{name}({m.elements[x]}) = {m.elements[y]} is not idempotent")
            elif classes[y] != classes[x]:
                report.append(f"{name}({m.elements[x]}) = {m.elements[y]} is not {relation}-related to it")
    return report


def validated(m: FiniteAdequateMonoid) -> FiniteAdequateMonoid:
    problems = validate_adequate(m)
    if problems:
        raise TargetError("not an adequate monoid: " + "; ".join(problems))
    return m


def bundled_monoid(name: str = "z2_with_zero") -> FiniteAdequateMonoid:
    """A validated finite adequate monoid shipped with the package."""
    text = resources.files("freeadequate.data").joinpath(f"{name}.json").read_text()
    return validated(FiniteAdequateMonoid.from_json(text))


def _lookup(chi: Mapping[str, Any] | Callable[[str], Any], letter: str):
    if callable(chi) and not isinstance(chi, Mapping):
        return chi(letter)
    try:
        return chi[letter]
    except KeyError:
        raise TargetError(f"generator assignment has no image for {letter!r}") from None


def _check_total(x: SigmaTree, chi) -> None:
    if isinstance(chi, Mapping):
        missing = sorted(x.labels() - set(chi))
        if missing:
            raise TargetError(f"generator assignment has no image for {missing}")


def _tau_at(x: SigmaTree, v: int, banned: set[int], target, chi, rng) -> Any:
    incs = [inc for inc in x.adjacency[v] if inc.edge not in banned]
    if rng is None:
        incs.sort(key=lambda inc: branch_key(x, v, inc.edge))
    else:
        rng.shuffle(incs)
    value = target.identity()
    for inc in incs:
        beyond = _tau_at(x, inc.other, {inc.edge}, target, chi, rng)
        g = _lookup(chi, inc.label)
        if inc.orient == OUT:
            factor = target.plus(target.mult(g, beyond))
        else:
            factor = target.star(target.mult(beyond, g))
        value = target.mult(value, factor)
    return value


def tau(x: SigmaTree, target: EvaluationTarget, chi, rng: random.Random | None = None):
    """Value of an idempotent tree.

    Factors are multiplied in ascending branch-key order, or shuffled by
    ``rng``; in an adequate target the order does not matter.
    """
    if not is_idempotent_tree(x):
        raise TargetError("tau is defined on idempotent trees only")
    _check_total(x, chi)
    return _tau_at(x, x.start, set(), target, chi, rng)


def rho(x: SigmaTree, target: EvaluationTarget, chi, rng: random.Random | None = None):
    """Value of any tree: idempotent parts at trunk vertices interleaved with trunk letters."""
    _check_total(x, chi)
    path = trunk(x)
    banned = set(path)
    value = target.identity()
    for i, v in enumerate(trunk_vertices(x)):
        if i:
            value = target.mult(value, _lookup(chi, x.edges[path[i - 1]][2]))
        value = target.mult(value, _tau_at(x, v, banned, target, chi, rng))
    return value


def generator_inclusion(target, letters) -> dict[str, Hashable]:
    return {a: target.generator(a) for a in letters}


def assignment_from_names(m: FiniteAdequateMonoid, pairs: Mapping[str, str]) -> dict[str, int]:
    return {letter: m.index_of(name) for letter, name in pairs.items()}


def symmetric_inverse_monoid(k: int) -> FiniteAdequateMonoid:
    """All partial injections of ``{0..k-1}``, composed left to right; an inverse monoid."""
    from itertools import combinations, permutations

    maps: list[tuple[int, ...]] = []  # -1 marks undefined
    for r in range(k + 1):
        for dom in combinations(range(k), r):
            for img in permutations(range(k), r):
                f = [-1] * k
                for a, b in zip(dom, img):
                    f[a] = b
                maps.append(tuple(f))
    index = {f: i for i, f in enumerate(maps)}

    def compose(f, g):  # first f, then g
        return tuple(-1 if f[i] < 0 else g[f[i]] for i in range(k))

    def inverse(f):
        inv = [-1] * k
        for a, b in enumerate(f):
            if b >= 0:
                inv[b] = a
        return tuple(inv)

    n = len(maps)
    table = np.array([[index[compose(f, g)] for g in maps] for f in maps], dtype=np.int64)
    plus_map = tuple(index[compose(f, inverse(f))] for f in maps)
    star_map = tuple(index[compose(inverse(f), f)] for f in maps)
    names = tuple("".join("-" if b < 0 else str(b) for b in f) for f in maps)
    ident = index[tuple(range(k))]
    return FiniteAdequateMonoid(names, ident, table, plus_map, star_map)


def semilattice_monoid(k: int) -> FiniteAdequateMonoid:
    """The chain 0 < 1 < ... < k under min, with k the identity."""
    table = np.minimum.outer(np.arange(k + 1), np.arange(k + 1))
    ident = tuple(range(k + 1))
    return FiniteAdequateMonoid(tuple(f"e{i}" for i in range(k + 1)), k, table, ident, ident)


def as_sequence(word: Sequence[str]) -> str:
    return " ".join(word) if word else "1"
