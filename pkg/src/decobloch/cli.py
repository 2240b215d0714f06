"""Command line entry point: ``decobloch {invariants,verify,canonicalize,selftest}``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .batteries import run_all, symbolic_wedge_suite
from .configuration import DegenerateError
from .pipeline import (
    DEFAULT_TOL,
    ChainFormatError,
    DecoratedChain,
    InvariantReport,
    canonicalize,
    chain_to_dict,
    load_chain,
    verify,
)


def _add_symbolic(report: InvariantReport) -> None:
    result = symbolic_wedge_suite()
    report.checks["symbolic_wedge"] = result.ok
    if not result.ok:
        report.failures.append(f"symbolic wedge identities leave {int(result.worst)} terms")


def _print_report(report: InvariantReport, as_json: bool, show_checks: bool) -> None:
    if as_json:
        print(json.dumps(report.to_dict(), indent=2))
        return
    print(f"mode        {report.mode}")
    print(f"volume      {report.volume:.15g}")
    print(f"cs mod pi^2 {report.cs:.15g}")
    print(f"sum D(z)    {report.bloch_wigner_volume:.15g}")
    for sign, z in report.bloch_terms:
        print(f"  {sign:+d} [{z.real:.12g} {z.imag:+.12g}i]")
    if show_checks:
        for name, ok in report.checks.items():
            status = "n/a" if ok is None else ("ok" if ok else "FAILED")
            print(f"check {name:<20} {status}")
    for line in report.warnings:
        print(f"warning: {line}")
    for line in report.failures:
        print(f"failure: {line}")


def cmd_report(args: argparse.Namespace, show_checks: bool) -> int:
    chain = load_chain(args.file)
    report = verify(chain, args.tol)
    if args.symbolic_checks:
        _add_symbolic(report)
    _print_report(report, args.json, show_checks)
    return 0 if report.ok else 1


def cmd_canonicalize(args: argparse.Namespace) -> int:
    chain = load_chain(args.file)
    if not isinstance(chain, DecoratedChain):
        print("canonicalize needs a decorated chain", file=sys.stderr)
        return 2
    print(json.dumps(chain_to_dict(canonicalize(chain)), indent=2))
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    results = run_all(seed=args.seed, scale=args.scale, symbolic=True)
    if args.json:
        print(json.dumps([r.__dict__ for r in results], indent=2))
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="decobloch", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="matching tolerance (default 1e-9)")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--symbolic-checks", action="store_true", help="also run the exact wedge identities")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("invariants", "Bloch invariant, beta_P, flattenings and complex volume"),
        ("verify", "all invariants plus a per-check status list"),
        ("canonicalize", "rewrite every simplex in canonical form"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
    p = sub.add_parser("selftest", parents=[common], help="randomized identity batteries and bundled fixtures")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0, help="fraction of the default sample counts")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "invariants":
            return cmd_report(args, show_checks=False)
        if args.command == "verify":
            return cmd_report(args, show_checks=True)
        if args.command == "canonicalize":
            return cmd_canonicalize(args)
        return cmd_selftest(args)
    except (ChainFormatError, DegenerateError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
