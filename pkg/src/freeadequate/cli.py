"""Command-line interface.

Exit status: 0 on success (``eq``: equal), 1 for ``eq`` not-equal or a
failed ``check-axioms`` run, 2 on any input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import algebra
from .canonical import canonical_form
from .checks import SUITES, Context, run_suites
from .morphism import DEFAULT_ORACLE_BOUND, OracleBoundError, enumerate_retractions, prune
from .render import to_dot
from .sampling import ENUMERATION_BOUND, enumerate_elements
from .targets import (
    FiniteAdequateMonoid,
    FreeMonoidTarget,
    TargetError,
    as_sequence,
    rho,
    validated,
)
from .term import MONOID, SEMIGROUP, TermSyntaxError, eval_term, eval_unpruned, parse, print_term, to_term
from .tree import AlphabetError, SigmaTree, TreeError, check_letter


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    alphabet: list[str] | None = None
    mode: str = MONOID
    seed: int = 0
    max_edges: int | None = None
    target: FiniteAdequateMonoid | None = None

    def parse(self, text: str):
        return parse(text, self.mode, self.alphabet)


def _alphabet(text: str | None) -> list[str] | None:
    if text is None:
        return None
    letters = [a.strip() for a in text.split(",") if a.strip()]
    for a in letters:
        check_letter(a)
    return letters


def _config(args) -> CliConfig:
    cfg = CliConfig(
        alphabet=_alphabet(args.alphabet),
        mode=SEMIGROUP if args.semigroup else MONOID,
        seed=args.seed,
        max_edges=args.max_edges,
    )
    if cfg.mode == SEMIGROUP and cfg.alphabet is not None and not cfg.alphabet:
        raise UsageError("semigroup mode needs a nonempty alphabet")
    if args.target:
        cfg.target = validated(FiniteAdequateMonoid.load(args.target))
    return cfg


def _tree_of(cfg: CliConfig, args) -> SigmaTree:
    if getattr(args, "tree", None):
        with open(args.tree) as fh:
            return prune(SigmaTree.from_dict(json.load(fh)))
    return eval_term(cfg.parse(args.term))


def cmd_eq(cfg, args, out) -> int:
    x = eval_term(cfg.parse(args.left))
    y = eval_term(cfg.parse(args.right))
    equal = canonical_form(x) == canonical_form(y)
    print("equal" if equal else "not-equal", file=out)
    return 0 if equal else 1


def cmd_canon(cfg, args, out) -> int:
    x = _tree_of(cfg, args)
    print(canonical_form(x).hex(), file=out)
    print(x.to_json(), file=out)
    return 0


def cmd_normal_form(cfg, args, out) -> int:
    print(print_term(to_term(eval_term(cfg.parse(args.term)), check=False)), file=out)
    return 0


def cmd_dot(cfg, args, out) -> int:
    x = eval_term(cfg.parse(args.term))
    if args.munn:
        x = algebra.fold_munn(x)
    out.write(to_dot(x))
    return 0


def cmd_enumerate(cfg, args, out) -> int:
    n = cfg.max_edges if cfg.max_edges is not None else 1
    alphabet = cfg.alphabet or ["a"]
    elements = enumerate_elements(n, alphabet, bound=args.bound)
    if cfg.mode == SEMIGROUP:
        elements = {k: x for k, x in elements.items() if x.edge_count}
    print(len(elements), file=out)
    if args.keys:
        for key in elements:
            print(key.hex(), file=out)
    return 0


def cmd_check_axioms(cfg, args, out) -> int:
    if args.samples == 0:
        print("warning: 0 samples requested; every suite passes vacuously", file=sys.stderr)
    targets = [("target", cfg.target)] if cfg.target is not None else []
    ctx = Context(
        alphabet=tuple(cfg.alphabet or ("a", "b")),
        max_edges=cfg.max_edges or 5,
        targets=targets,
    )
    results = run_suites(args.samples, cfg.seed, ctx, names=args.suite or None)
    failed = 0
    for name, fails in results.items():
        if fails:
            failed += 1
            print(f"FAIL {name}: {len(fails)} violation(s)", file=out)
            for line in fails[:3]:
                print(f"  {line}", file=out)
        else:
            print(f"PASS {name} ({args.samples} samples)", file=out)
    return 1 if failed else 0


def cmd_count_retractions(cfg, args, out) -> int:
    x = eval_unpruned(cfg.parse(args.term))
    bound = cfg.max_edges + 1 if cfg.max_edges is not None else DEFAULT_ORACLE_BOUND
    print(len(enumerate_retractions(x, bound)) - 1, file=out)
    return 0


def cmd_rho(cfg, args, out) -> int:
    x = eval_term(cfg.parse(args.term))
    if cfg.target is None:
        free = FreeMonoidTarget()
        print(as_sequence(rho(x, free, {a: free.generator(a) for a in x.labels()})), file=out)
        return 0
    m = cfg.target
    chi = {}
    for item in (args.chi or "").split(","):
        if item.strip():
            letter, _, name = item.partition("=")
            chi[check_letter(letter.strip())] = m.index_of(name.strip())
    print(m.elements[rho(x, m, chi)], file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", help="comma-separated letters, e.g. a,b,c")
    common.add_argument("--semigroup", action="store_true", help="reject the identity 1")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-edges", type=int, dest="max_edges")
    common.add_argument("--target", help="finite adequate monoid JSON file")

    parser = argparse.ArgumentParser(
        prog="freeadequate",
        description="Word problem and normal forms in free adequate monoids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eq", parents=[common], help="decide whether two terms are equal")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(run=cmd_eq)

    p = sub.add_parser("canon", parents=[common], help="canonical key and pruned tree JSON")
    p.add_argument("term", nargs="?")
    p.add_argument("--tree", help="read a tree JSON file instead of a term")
    p.set_defaults(run=cmd_canon)

    p = sub.add_parser("normal-form", parents=[common], help="print the normal-form term")
    p.add_argument("term")
    p.set_defaults(run=cmd_normal_form)

    p = sub.add_parser("dot", parents=[common], help="emit the pruned tree as Graphviz DOT")
    p.add_argument("term")
    p.add_argument("--munn", action="store_true", help="render the folded Munn tree")
    p.set_defaults(run=cmd_dot)

    p = sub.add_parser("enumerate", parents=[common], help="count elements with few edges")
    p.add_argument("--keys", action="store_true", help="also print each element's key")
    p.add_argument("--bound", type=int, default=ENUMERATION_BOUND)
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("check-axioms", parents=[common], help="run the seeded property suites")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.set_defaults(run=cmd_check_axioms)

    p = sub.add_parser("count-retractions", parents=[common], help="non-identity retractions of the unpruned tree")
    p.add_argument("term")
    p.set_defaults(run=cmd_count_retractions)

    p = sub.add_parser("rho", parents=[common], help="evaluate a term in the free monoid or --target")
    p.add_argument("term")
    p.add_argument("--chi", help="generator images, e.g. a=g,b=0")
    p.set_defaults(run=cmd_rho)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "canon" and not (args.term or args.tree):
            raise UsageError("canon needs a term or --tree FILE")
        return args.run(cfg, args, out)
    except (TermSyntaxError, TreeError, TargetError, AlphabetError, OracleBoundError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
