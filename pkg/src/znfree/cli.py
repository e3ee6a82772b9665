"""Command-line front end.

Every verb loads a tower file, dispatches into one module operation, prints
JSON to stdout and diagnostics to stderr.  Exit codes: 0 success, 1 domain
error, 2 usage or I/O error.  All numeric output is exact integers.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import ZnFreeError
from .words import Word


def _radius_default() -> int:
    env = os.environ.get("ZNFREE_RADIUS")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="znfree",
        description="Compute in regular Z^n-free groups presented as HNN towers.",
    )
    parser.add_argument(
        "--radius",
        type=int,
        default=_radius_default(),
        help="bound for every ball-based check (default 4, env ZNFREE_RADIUS)",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, help_, *words):
        p = sub.add_parser(verb, help=help_)
        p.add_argument("tower", help="tower JSON file")
        for w in words:
            p.add_argument(w, help=f"word ({w})")
        return p

    add("validate", "check the structure-theorem side conditions")
    add("normalize", "Britton-reduce and length-reduce a word", "word")
    p = add("len", "Z^n length of a word", "word")
    p.add_argument(
        "--check-oracle",
        action="store_true",
        help="also check the word metric against the lex-Dijkstra oracle",
    )
    add("gromov", "Gromov product c(g,f)", "g", "f")
    add("com", "common beginning com(g,f)", "g", "f")
    p = sub.add_parser("reduce-basis", help="abelian basis of commuting words")
    p.add_argument("tower")
    p.add_argument("words", nargs="+", help="commuting words")
    add("weights", "canonical Key-Lemma weight system")
    add("wm", "weighted word metric of a word", "word")
    p = sub.add_parser("complex", help="torus-gluing space blueprint")
    p.add_argument("tower")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    add("check-axioms", "sweep the length axioms over the weighted ball")
    return parser


def _load_tower(path):
    from .tower import parse_tower

    with open(path, "rb") as fh:
        return parse_tower(fh.read())


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=False) + "\n")


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        tower = _load_tower(args.tower)
    except OSError as e:
        print(f"cannot read tower file: {e}", file=sys.stderr)
        return 2
    except ZnFreeError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1

    try:
        if args.verb == "validate":
            from .tower import validate_tower

            _emit(validate_tower(tower, args.radius).to_json())
        elif args.verb == "normalize":
            from .length import length_reduce
            from .words import britton_reduce

            nf = britton_reduce(Word.from_text(args.word), tower)
            _emit({"normalized": length_reduce(nf, tower).to_text()})
        elif args.verb == "len":
            from .length import length

            vec = length(Word.from_text(args.word), tower, check_oracle=args.check_oracle)
            _emit({"length": vec.to_json()})
        elif args.verb == "gromov":
            from .length import gromov_product

            vec = gromov_product(Word.from_text(args.g), Word.from_text(args.f), tower)
            _emit({"gromov": vec.to_json()})
        elif args.verb == "com":
            from .length import common_beginning

            u = common_beginning(Word.from_text(args.g), Word.from_text(args.f), tower)
            _emit({"com": u.to_text()})
        elif args.verb == "reduce-basis":
            from .abelian import reduce_basis

            basis = reduce_basis([Word.from_text(w) for w in args.words], tower, args.radius)
            _emit(
                {
                    "basis": [w.to_text() for w in basis.gens],
                    "heights": list(basis.heights),
                }
            )
        elif args.verb == "weights":
            from .weights import build_constraints, solve_weights

            _emit(solve_weights(build_constraints(tower)).to_json())
        elif args.verb == "wm":
            from .weights import weighted_length, weights_for

            ws = weights_for(tower)
            _emit({"wm": weighted_length(Word.from_text(args.word), ws, tower, args.radius)})
        elif args.verb == "complex":
            from .complex import build_blueprint, emit
            from .weights import weights_for

            blob = emit(build_blueprint(tower, weights_for(tower)), args.format)
            sys.stdout.write(blob.decode("utf-8"))
        elif args.verb == "check-axioms":
            from .length import check_axioms

            _emit(check_axioms(tower, args.radius).to_json())
    except ZnFreeError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0


def main() -> None:  # pragma: no cover - console entry point
    raise SystemExit(run())
