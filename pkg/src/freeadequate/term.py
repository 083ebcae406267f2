"""Terms over product, ``^+``, ``^*`` and the identity ``1``.

Grammar (whitespace is ignored between tokens)::

    term    := factor factor*          juxtaposition, left associative
    factor  := atom ("^+" | "^*")*
    atom    := LETTER | "1" | "(" term ")"
    LETTER  := [A-Za-z][A-Za-z0-9_]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from .algebra import mult_unpruned, plus_unpruned, star_unpruned
from .canonical import branch_key, canonical_form
from .morphism import is_pruned, prune
from .tree import IN, OUT, SigmaTree, base_tree, trivial_tree, trunk, trunk_vertices

MONOID = "monoid"
SEMIGROUP = "semigroup"


@dataclass(frozen=True)
class One:
    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class Letter:
    name: str

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class Prod:
    left: "Term"
    right: "Term"

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class Plus:
    arg: "Term"

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class Star:
    arg: "Term"

    def __str__(self):
        return print_term(self)


Term = Union[One, Letter, Prod, Plus, Star]


class TermSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownLetter(TermSyntaxError):
    pass


class NotPrunedError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<letter>[A-Za-z][A-Za-z0-9_]*)|(?P<num>[0-9]+)|(?P<op>\^\s*[+*]|\^|[()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            offset = len(text) - len(text[pos:].lstrip())
            raise TermSyntaxError(f"unexpected character {text[offset]!r}", offset)
        kind = m.lastgroup
        value = m.group(kind)
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    return tokens


def parse(text: str, mode: str = MONOID, alphabet: Iterable[str] | None = None) -> Term:
    if mode not in (MONOID, SEMIGROUP):
        raise ValueError(f"unknown mode {mode!r}")
    allowed = None if alphabet is None else set(alphabet)
    tokens = _tokenize(text)
    if not tokens:
        raise TermSyntaxError("empty input", 0)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def parse_product() -> Term:
        nonlocal pos
        result = parse_factor()
        while (tok := peek()) is not None and (tok[0] != "op" or tok[1] == "("):
            result = Prod(result, parse_factor())
        return result

    def parse_factor() -> Term:
        nonlocal pos
        t = parse_atom()
        while (tok := peek()) is not None and tok[0] == "op" and tok[1].startswith("^"):
            op = tok[1][-1]
            if op not in "+*":
                raise TermSyntaxError("dangling '^'", tok[2])
            pos += 1
            t = Plus(t) if op == "+" else Star(t)
        return t

    def parse_atom() -> Term:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise TermSyntaxError("unexpected end of input", len(text))
        kind, value, offset = tok
        if kind == "letter":
            if allowed is not None and value not in allowed:
                raise UnknownLetter(f"letter {value!r} not in alphabet", offset)
            pos += 1
            return Letter(value)
        if kind == "num":
            if value != "1":
                raise TermSyntaxError(f"unexpected number {value!r}", offset)
            if mode == SEMIGROUP:
                raise TermSyntaxError("identity '1' is not available in semigroup mode", offset)
            pos += 1
            return One()
        if value == "(":
            pos += 1
            inner = parse_product()
            closing = peek()
            if closing is None or closing[1] != ")":
                raise TermSyntaxError("expected ')'", closing[2] if closing else len(text))
            pos += 1
            return inner
        raise TermSyntaxError(f"unexpected {value!r}", offset)

    result = parse_product()
    if pos != len(tokens):
        raise TermSyntaxError(f"unexpected {tokens[pos][1]!r}", tokens[pos][2])
    return result


def print_term(t: Term) -> str:
    """Render with the fewest parentheses that parse back to the same tree of nodes."""
    if isinstance(t, One):
        return "1"
    if isinstance(t, Letter):
        return t.name
    if isinstance(t, Prod):
        right = print_term(t.right)
        if isinstance(t.right, Prod):
            right = f"({right})"
        return f"{print_term(t.left)} {right}"
    op = "^+" if isinstance(t, Plus) else "^*"
    inner = print_term(t.arg)
    if isinstance(t.arg, Prod):
        inner = f"({inner})"
    return inner + op


def term_size(t: Term) -> int:
    if isinstance(t, Prod):
        return 1 + term_size(t.left) + term_size(t.right)
    if isinstance(t, (Plus, Star)):
        return 1 + term_size(t.arg)
    return 1


def letters_of(t: Term) -> set[str]:
    if isinstance(t, Letter):
        return {t.name}
    if isinstance(t, Prod):
        return letters_of(t.left) | letters_of(t.right)
    if isinstance(t, (Plus, Star)):
        return letters_of(t.arg)
    return set()


def eval_unpruned(t: Term) -> SigmaTree:
    if isinstance(t, One):
        return trivial_tree()
    if isinstance(t, Letter):
        return base_tree(t.name)
    if isinstance(t, Prod):
        return mult_unpruned(eval_unpruned(t.left), eval_unpruned(t.right))
    if isinstance(t, Plus):
        return plus_unpruned(eval_unpruned(t.arg))
    if isinstance(t, Star):
        return star_unpruned(eval_unpruned(t.arg))
    raise TypeError(f"not a term: {t!r}")


def _as_term(t: Term | str, mode: str, alphabet) -> Term:
    return parse(t, mode, alphabet) if isinstance(t, str) else t


def eval_term(t: Term | str, mode: str = MONOID, alphabet: Iterable[str] | None = None) -> SigmaTree:
    """Evaluate with unpruned operations, then prune once."""
    return prune(eval_unpruned(_as_term(t, mode, alphabet)))


def words_equal(
    t1: Term | str, t2: Term | str, mode: str = MONOID, alphabet: Iterable[str] | None = None
) -> bool:
    x = eval_term(t1, mode, alphabet)
    y = eval_term(t2, mode, alphabet)
    return canonical_form(x) == canonical_form(y)


def product_of(factors: list[Term]) -> Term:
    if not factors:
        return One()
    out = factors[0]
    for f in factors[1:]:
        out = Prod(out, f)
    return out


def _idempotent_factors(x: SigmaTree, v: int, banned: set[int]) -> list[Term]:
    incs = [inc for inc in x.adjacency[v] if inc.edge not in banned]
    incs.sort(key=lambda inc: branch_key(x, v, inc.edge))
    factors: list[Term] = []
    for inc in incs:
        inner = _idempotent_factors(x, inc.other, {inc.edge})
        a = Letter(inc.label)
        if inc.orient == OUT:
            factors.append(Plus(product_of([a] + inner)))
        else:
            assert inc.orient == IN
            factors.append(Star(product_of(inner + [a])))
    return factors


def to_term(x: SigmaTree, check: bool = True) -> Term:
    """Normal-form term of a pruned tree.

    Reading the trunk left to right gives ``Y0 a1 Y1 ... an Yn`` where each
    ``Yi`` is the product of one idempotent factor per off-trunk edge at the
    i-th trunk vertex: ``(a Z)^+`` for an outgoing edge and ``(Z a)^*`` for an
    incoming one, ``Z`` being the term of the idempotent tree beyond the edge.
    Factors at a vertex are ordered by the canonical key of their branch.
    """
    if check and not is_pruned(x):
        raise NotPrunedError("to_term expects a pruned tree")
    path = trunk(x)
    banned = set(path)
    factors: list[Term] = []
    for i, v in enumerate(trunk_vertices(x)):
        if i:
            factors.append(Letter(x.edges[path[i - 1]][2]))
        factors.extend(_idempotent_factors(x, v, banned))
    return product_of(factors)


def normal_form(t: Term | str, mode: str = MONOID, alphabet: Iterable[str] | None = None) -> str:
    return print_term(to_term(eval_term(t, mode, alphabet), check=False))
