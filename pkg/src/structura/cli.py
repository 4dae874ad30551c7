"""``structura`` command line: catalog listing, algebra export, verification runs."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .catalog import DEFAULT_RUN, LARGE, UnknownAlgebra, build, is_known, listing
from .linalg.primes import WORD_LIMIT, is_prime
from .report import DEFAULT_DELTAS, emit, exit_status, identity_report, verify_named

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _delta_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad delta list {text!r}: {exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="structura", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="catalog operations")
    cat_sub = cat.add_subparsers(dest="catalog_command", required=True)
    cat_sub.add_parser("list", help="list registered algebras")

    b = sub.add_parser("build", help="write an algebra as JSON")
    b.add_argument("name")
    b.add_argument("--out", help="output file (default: stdout)")

    v = sub.add_parser("verify", help="run identity and delta-derivation checks")
    target = v.add_mutually_exclusive_group(required=True)
    target.add_argument("name", nargs="?")
    target.add_argument("--all", action="store_true", help="run the default catalog")
    v.add_argument("--delta", type=_delta_list, default=list(DEFAULT_DELTAS), help="comma-separated rationals, e.g. 1/2,1")
    v.add_argument("--mode", choices=("exact", "certified", "auto"), default="auto")
    v.add_argument("--primes", type=_int_list, default=None, help="comma-separated certification primes")
    v.add_argument("--seed", type=int, default=0, help="row-sampling seed")
    v.add_argument("--format", choices=("json", "md"), default="json")
    v.add_argument("--out", help="output file (default: stdout)")
    v.add_argument("--include-large", action="store_true", help=f"with --all, also run {', '.join(LARGE)}")
    v.add_argument("--timings", action="store_true", help="record per-step wall times (output is then not reproducible)")

    i = sub.add_parser("identities", help="run only the identity suites")
    i.add_argument("name")
    i.add_argument("--format", choices=("json", "md"), default="json")
    i.add_argument("--out")
    return parser


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _require(name: str) -> str:
    if not is_known(name):
        raise UnknownAlgebra(name)
    return name


def _run(args: argparse.Namespace) -> int:
    if args.command == "catalog":
        for entry in listing():
            flag = "" if entry.default else "  [needs --include-large]"
            print(f"{entry.name:28s} dim {build(entry.name).dim:3d}  {entry.description}{flag}")
        return EXIT_OK
    if args.command == "build":
        _write(build(_require(args.name)).to_json(indent=None) + "\n", args.out)
        return EXIT_OK
    if args.command == "identities":
        rep = identity_report(build(_require(args.name)))
        _write(emit(rep, args.format), args.out)
        return exit_status([rep])
    if args.command == "verify":
        if args.primes is not None:
            if len(args.primes) < 2:
                raise UsageError("--primes needs at least two primes")
            for p in args.primes:
                if not (5 < p < WORD_LIMIT and is_prime(p)):
                    raise UsageError(f"{p} is not a prime in the range 5 < p < 2**31")
        names = list(DEFAULT_RUN) + (list(LARGE) if args.include_large else []) if args.all else [_require(args.name)]
        reports = [verify_named(n, args.delta, args.mode, args.primes, args.seed) for n in names]
        out = reports if args.all else reports[0]
        _write(emit(out, args.format, timings=args.timings), args.out)
        return exit_status(reports)
    raise UsageError(f"unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except (UnknownAlgebra, UsageError) as exc:
        print(f"structura: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
