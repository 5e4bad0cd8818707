"""Command-line front door.

    milnorkit verify   PROBLEM [--checks ...] [--format ...] [--seed N]
    milnorkit degree   PROBLEM --component K [--format ...] [--seed N]
    milnorkit classify PROBLEM [--assert FLAG ...] [--format ...] [--seed N]
    milnorkit corpus   list | run-all [--format ...] [--seed N]

Exit codes, never conflated: 0 success / expectations met; 1 a
mathematical check failed or a corpus expectation mismatched; 2 input
error; 3 internal inconsistency alarm.
"""

from __future__ import annotations

import argparse
import sys

from .corpus_runner import list_entries, machine_bytes, run_all
from .degree import DEFAULT_SEED
from .exprs import ParseError
from .pipeline import ALL_CHECKS, run_classify, run_degree, run_verify
from .problems import ProblemFileError, load_problem
from .report import RunConfig, emit_human, emit_machine


def _add_common(p):
    p.add_argument("--format", dest="fmt", choices=("human", "machine"),
                   default="human", help="report format")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                   help="seed for the numerical oracles (default 0x5EED)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="milnorkit",
        description="Exact verification and classification of harmonic first "
                    "integral maps, foliations and Milnor fibrations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the exact identity checks")
    p.add_argument("problem", help="problem file")
    p.add_argument("--checks", default=None,
                   help="comma list from: %s" % ",".join(ALL_CHECKS))
    p.add_argument("--assert", dest="assertions", action="append", default=[],
                   metavar="FLAG", help="inject a user assertion flag")
    _add_common(p)

    p = sub.add_parser("degree", help="Milnor number and certified local degree")
    p.add_argument("problem", help="problem file")
    p.add_argument("--component", type=int, default=1,
                   help="1-based component index (default 1)")
    _add_common(p)

    p = sub.add_parser("classify", help="apply the classification theorems")
    p.add_argument("problem", help="problem file")
    p.add_argument("--assert", dest="assertions", action="append", default=[],
                   metavar="FLAG", help="inject a user assertion flag")
    _add_common(p)

    p = sub.add_parser("corpus", help="bundled example corpus")
    p.add_argument("action", choices=("list", "run-all"))
    _add_common(p)
    return parser


def _emit(report, fmt: str) -> None:
    if fmt == "machine":
        sys.stdout.buffer.write(emit_machine(report))
        sys.stdout.buffer.flush()
    else:
        sys.stdout.write(emit_human(report))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "corpus":
            if args.action == "list":
                entries = list_entries()
                for e in entries:
                    print("%-20s %s" % (e.name, e.problem.name))
                print("%d entries" % len(entries))
                return 0
            code, payload = run_all(args.seed)
            if args.fmt == "machine":
                sys.stdout.buffer.write(machine_bytes(payload))
                sys.stdout.buffer.flush()
            else:
                for name in payload["entries"]:
                    print("%-20s %s" % (name, "ok" if not any(
                        m.startswith(name + ":")
                        for m in payload["expectation_mismatches"]) else "MISMATCH"))
                for m in payload["expectation_mismatches"]:
                    print("!! %s" % m)
            return code

        spec = load_problem(args.problem)
        if args.command == "verify":
            checks = None
            if args.checks:
                checks = [c.strip() for c in args.checks.split(",") if c.strip()]
                unknown = set(checks) - set(ALL_CHECKS)
                if unknown:
                    print("unknown checks: %s" % ", ".join(sorted(unknown)),
                          file=sys.stderr)
                    return 2
            config = RunConfig(command="verify", input_path=args.problem,
                               fmt=args.fmt, seed=args.seed, checks=checks,
                               assertions=list(args.assertions))
            report = run_verify(spec, config)
        elif args.command == "degree":
            config = RunConfig(command="degree", input_path=args.problem,
                               fmt=args.fmt, seed=args.seed,
                               component=args.component)
            report = run_degree(spec, config)
        else:
            config = RunConfig(command="classify", input_path=args.problem,
                               fmt=args.fmt, seed=args.seed,
                               assertions=list(args.assertions))
            report = run_classify(spec, config)
        _emit(report, args.fmt)
        return report.exit_code()
    except (ProblemFileError, ParseError, OSError, ValueError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
