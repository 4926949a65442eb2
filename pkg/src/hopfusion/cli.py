"""Command-line front end.

Three subcommands share the input options:

    hopf-fusion validate  (--input FILE | --builtin NAME[@p=P]) [--seed N]
    hopf-fusion pipeline  (--input FILE | --builtin NAME[@p=P])
                          [--through STAGE] [--seed N]
    hopf-fusion export    (--input FILE | --builtin NAME[@p=P])
                          --table {N,L,smash,C} [--seed N]

Exit codes: 0 every check passed, 1 at least one check failed,
2 invalid input, 3 hypothesis violation, 4 internal inconsistency.
"""

import argparse
import os
import sys

from .builtins import builtin_names, make_builtin, parse_builtin_spec
from .errors import (HopfusionError, HypothesisViolation,
                     InternalInconsistency, InvalidInputError)
from .field import gf_construct
from .pipeline import TABLE_STAGE, dump_table, run_pipeline
from .presentation import build_hopf, read_presentation
from .report import STAGES

__all__ = ["main"]


def _add_input_options(sp):
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--input", metavar="FILE",
                     help="structure-constant presentation file")
    grp.add_argument("--builtin", metavar="NAME[@p=P]",
                     help="named example, one of: " + ", ".join(builtin_names()))
    sp.add_argument("--seed", type=int, default=0,
                    help="seed for randomized splitting (default 0)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hopf-fusion",
        description="exact verification of twisted-product representation theory")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the defining axioms only")
    _add_input_options(sp)

    sp = sub.add_parser("pipeline", help="run verification stages and report")
    _add_input_options(sp)
    sp.add_argument("--through", choices=STAGES, default=STAGES[-1],
                    help="stop after this stage (default: run everything)")

    sp = sub.add_parser("export", help="dump one product table as text")
    _add_input_options(sp)
    sp.add_argument("--table", choices=sorted(TABLE_STAGE), required=True,
                    help="which table to dump")
    return ap


def _load_algebra(args):
    if args.input:
        pres = read_presentation(args.input)
        name = os.path.basename(args.input)
        return build_hopf(pres, name=name), name
    name, p = parse_builtin_spec(args.builtin)
    H = make_builtin(name, gf_construct(p))
    return H, f"{name}@p={p}"


def _dispatch(args) -> int:
    H, name = _load_algebra(args)
    if args.command == "validate":
        result = run_pipeline(H, name=name, seed=args.seed, through="validate")
        sys.stdout.write(result.report.render())
        return 0 if result.all_passed() else 1
    if args.command == "pipeline":
        result = run_pipeline(H, name=name, seed=args.seed, through=args.through)
        sys.stdout.write(result.report.render())
        return 0 if result.all_passed() else 1
    result = run_pipeline(H, name=name, seed=args.seed, through="fusion")
    if not result.all_passed():
        sys.stdout.write(result.report.render())
        return 1
    sys.stdout.write(dump_table(result, args.table))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return 3
    except InvalidInputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 4
    except HopfusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
