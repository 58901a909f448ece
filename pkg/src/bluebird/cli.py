"""Command line front end.

Subcommands:

    canon TERM            print the canonical degree sequence of a B-term
    eq TERM TERM          decide beta-eta equivalence of two B-terms
    rho TERM              find (entry, cycle) of the self-application orbit
    iterate TERM          print canonical forms along the orbit
    antirho ...           run no-cycle certificate checks
    is-monomial TERM      test whether a term is equivalent to a monomial

Exit codes: 0 success (or true), 1 false / failed checks, 2 parse or usage
errors, 3 no cycle found within the step budget, 4 checkpoint I/O problems.
All results go to stdout and are byte-deterministic; --progress reports go
to stderr.
"""

from __future__ import annotations

import argparse
import sys
import threading

from . import antirho as ar
from . import bterm as bt
from . import restricted as rr
from .canonical import canonicalize, equivalent_bterms
from .cycle_detect import find_rho, iterate
from .errors import (
    CheckpointIO,
    CycleNotFound,
    ParseError,
    StepBudgetExceeded,
)


def _progress_monitor(stop: threading.Event):
    """Start a daemon thread that reports search progress to stderr about
    once a second. Returns the on_start callback for find_rho."""
    holder: dict = {}

    def on_start(state):
        holder["state"] = state

    def loop():
        while not stop.wait(1.0):
            state = holder.get("state")
            if state is None:
                continue
            units = sum(m for _, m in state.slow)
            print(
                f"progress: phase={state.phase} step={state.step} "
                f"advances={state.advances} seq-units={units}",
                file=sys.stderr,
                flush=True,
            )

    thread = threading.Thread(target=loop, daemon=True)
    thread.start()
    return on_start


def cmd_canon(args) -> int:
    seq = canonicalize(bt.parse(args.term))
    print(seq.rle_text() if args.rle else seq.text())
    return 0


def cmd_eq(args) -> int:
    same = equivalent_bterms(bt.parse(args.term1), bt.parse(args.term2))
    print("true" if same else "false")
    return 0 if same else 1


def cmd_is_monomial(args) -> int:
    mono = canonicalize(bt.parse(args.term)).is_monomial()
    print("true" if mono else "false")
    return 0 if mono else 1


def _lambda_input(text: str):
    from . import lambda_oracle as lo

    named = {
        "B": lo.B, "C": lo.C, "K": lo.K, "I": lo.I, "S": lo.S, "O": lo.O,
        "D": lo.D, "F": lo.F, "R": lo.R, "T": lo.T, "V": lo.V,
    }
    stripped = text.strip()
    if stripped in named:
        return named[stripped]
    return lo.bterm_to_lambda(bt.parse(text))


def cmd_rho(args) -> int:
    if args.engine == "canonical":
        stop = threading.Event()
        on_start = None
        if args.progress:
            on_start = _progress_monitor(stop)
        try:
            result = find_rho(
                args.term,
                algorithm=args.algorithm,
                max_steps=args.max_steps,
                checkpoint_path=args.checkpoint,
                checkpoint_interval=args.checkpoint_interval,
                checkpoint_seconds=args.checkpoint_seconds,
                resume=args.resume,
                on_start=on_start,
            )
        finally:
            stop.set()
        entry, cycle = result.entry, result.cycle
    elif args.engine == "lambda":
        from .lambda_oracle import rho_lambda

        result = rho_lambda(_lambda_input(args.term), max_steps=args.max_steps)
        entry, cycle = result.entry, result.cycle
    else:
        entry, cycle = rr.find_rho_restricted(
            args.term, algorithm=args.algorithm, max_steps=args.max_steps
        )
    print(f"rho = ({entry}, {cycle})")
    return 0


def cmd_iterate(args) -> int:
    if args.stats:
        from .antirho import tree_stats
        from .canonical import tree_of

        for i, seq in enumerate(iterate(args.term, args.count), start=1):
            stats = tree_stats(tree_of(seq))
            print(f"{i}\t{seq.text()}\tl={stats.leaves}\ta={stats.head_args}")
    else:
        for i, seq in enumerate(iterate(args.term, args.count), start=1):
            print(f"{i}\t{seq.text()}")
    return 0


def cmd_antirho(args) -> int:
    if args.term is None:
        if args.k is None or args.n is None:
            print("error: antirho needs --k and --n, or --term", file=sys.stderr)
            return 2
        mp = ar.MonomialPower(args.k, args.n)
        steps = args.steps if args.steps is not None else 200
        report = ar.run_power_suite(mp, steps)
    else:
        membership = None
        if args.predicate == "example2":
            membership = ar.in_example_family
        elif args.predicate == "tkn":
            if args.k is None or args.n is None:
                print("error: --predicate tkn needs --k and --n", file=sys.stderr)
                return 2
            mp = ar.MonomialPower(args.k, args.n)
            membership = lambda t: ar.in_iterate_family(t, mp)
        steps = args.steps if args.steps is not None else 100
        report = ar.run_term_suite(
            args.term, steps, membership=membership, window=args.window
        )
    print(report.render())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bluebird",
        description="Canonical forms, equivalence and cycle search for B-terms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="canonical degree sequence of a B-term")
    p.add_argument("term")
    p.add_argument("--rle", action="store_true", help="run-length encoded output")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("eq", help="decide beta-eta equivalence of two B-terms")
    p.add_argument("term1")
    p.add_argument("term2")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("is-monomial", help="test equivalence to a monomial")
    p.add_argument("term")
    p.set_defaults(func=cmd_is_monomial)

    p = sub.add_parser("rho", help="find (entry, cycle) of the self-application orbit")
    p.add_argument("term", help="B-term; with --engine lambda also a combinator name")
    p.add_argument("--engine", choices=("canonical", "lambda", "restricted"),
                   default="canonical")
    p.add_argument("--algorithm", choices=("brent", "floyd"), default="brent")
    p.add_argument("--max-steps", type=int, default=10**10)
    p.add_argument("--checkpoint", metavar="PATH",
                   help="write periodic checkpoints (canonical engine only)")
    p.add_argument("--checkpoint-interval", type=int, default=10**7,
                   metavar="N", help="advances between checkpoints")
    p.add_argument("--checkpoint-seconds", type=float, default=60.0,
                   metavar="S", help="seconds between checkpoints")
    p.add_argument("--resume", action="store_true",
                   help="continue from the checkpoint file")
    p.add_argument("--progress", action="store_true",
                   help="report progress to stderr (canonical engine only)")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("iterate", help="print canonical forms along the orbit")
    p.add_argument("term")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--stats", action="store_true",
                   help="append leaf and head-argument counts")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("antirho", help="no-cycle certificate checks")
    p.add_argument("--k", type=int, help="monomial degree of the power family")
    p.add_argument("--n", type=int, help="power multiplier of the family")
    p.add_argument("--term", help="check this term instead of a monomial power")
    p.add_argument("--predicate", choices=("tkn", "example2"),
                   help="family membership to enforce with --term")
    p.add_argument("--steps", type=int, help="orbit length to examine")
    p.add_argument("--window", type=int,
                   help="growth window for the monotone check")
    p.set_defaults(func=cmd_antirho)

    return parser


def main(argv=None) -> int:
    sys.setrecursionlimit(200_000)
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "engine", None) != "canonical":
        if getattr(args, "checkpoint", None) or getattr(args, "resume", False):
            parser.error("--checkpoint/--resume need --engine canonical")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CycleNotFound, StepBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CheckpointIO as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
