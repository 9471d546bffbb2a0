"""Command line interface.

    gpjt compute --d 2 --lambda 1,0 --method hm
    gpjt coeff --d 1 --k 2 --m 2
    gpjt verify theorem --d 3 --all-up-to 4
    gpjt verify proofs --d 2 --k-max 2 --beta-trunc 4

Exit status: 0 when everything computed/passed, 1 when an identity check
failed, 2 on usage or validation errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import grothendieck as gr
from .harness import METHODS, VerificationReport, compute, verify_proof_suite, verify_theorem, verify_theorem_sweep
from .ring import RingContext, dumps, serialize
from .series import g_coeff

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpjt", description="Factorial Grothendieck polynomials and their determinant formulas.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute G_lambda(x|b) by one formula")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_int_list, help="partition, e.g. 2,1,0")
    p.add_argument("--a", type=_int_list, help="general index vector (a_i + d - i >= 0) instead of a partition")
    p.add_argument("--method", choices=METHODS, default="bialternant")
    p.add_argument("--beta-trunc", type=int, dest="N")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("coeff", help="one coefficient G_m^(k)(x|b)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--beta-trunc", type=int, dest="N")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("verify", help="check identities")
    vsub = p.add_subparsers(dest="suite", required=True)
    t = vsub.add_parser("theorem", help="bi-alternant = HM = HIMN")
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--lambda", dest="lam", type=_int_list)
    t.add_argument("--a", type=_int_list)
    t.add_argument("--all-up-to", type=int, dest="all_up_to", help="every partition with parts <= S")
    t.add_argument("--beta-trunc", type=int, dest="N")
    t.add_argument("--no-stabilize", action="store_true")
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.add_argument("--out", type=Path)
    pr = vsub.add_parser("proofs", help="intermediate identities of both proofs")
    pr.add_argument("--d", type=int, required=True)
    pr.add_argument("--k-max", type=int, dest="k_max", required=True)
    pr.add_argument("--beta-trunc", type=int, dest="N", required=True)
    pr.add_argument("--format", choices=("text", "json"), default="text")
    pr.add_argument("--out", type=Path)
    return parser


def _emit(text: str, out: Optional[Path]) -> None:
    if out is not None:
        out.write_text(text + "\n")
    else:
        print(text)


def _index_vector(args) -> tuple[int, ...]:
    if args.d < 1:
        raise UsageError(f"--d must be >= 1, got {args.d}")
    if args.a is not None and args.lam is not None:
        raise UsageError("give either --lambda or --a, not both")
    try:
        if args.a is not None:
            return gr.check_index_vector(args.a, args.d)
        if args.lam is None:
            raise UsageError("one of --lambda or --a is required")
        return gr.partition(args.lam, args.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_compute(args) -> int:
    a = _index_vector(args)
    try:
        ctx = gr.default_context(args.d, a, args.N)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    p = compute(ctx, a, args.method)
    _emit(dumps(p) if args.format == "json" else serialize(p), args.out)
    return EXIT_OK


def _cmd_coeff(args) -> int:
    if args.d < 1 or args.k < 0:
        raise UsageError("need --d >= 1 and --k >= 0")
    # beta-degree of G_m^(k) is -m for m <= 0 and k + d - 1 above
    N = args.N if args.N is not None else max(-args.m, args.k + args.d - 1, 0)
    if N < 0:
        raise UsageError("--beta-trunc must be >= 0")
    p = g_coeff(RingContext(args.d, args.k, N), args.k, args.m)
    _emit(dumps(p) if args.format == "json" else serialize(p), args.out)
    return EXIT_OK


def _report_exit(report: VerificationReport, args) -> int:
    _emit(report.dumps() if args.format == "json" else report.summary(), args.out)
    if report.errors:
        return EXIT_USAGE
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_verify(args) -> int:
    if args.suite == "proofs":
        if args.d < 1 or args.k_max < 0 or args.N < 0:
            raise UsageError("need --d >= 1, --k-max >= 0, --beta-trunc >= 0")
        return _report_exit(verify_proof_suite(args.d, args.k_max, args.N), args)
    if args.d < 1:
        raise UsageError(f"--d must be >= 1, got {args.d}")
    if args.all_up_to is not None:
        if args.all_up_to < 0:
            raise UsageError("--all-up-to must be >= 0")
        report = verify_theorem_sweep(args.d, args.all_up_to, stabilize=not args.no_stabilize)
    else:
        a = _index_vector(args)
        report = verify_theorem(args.d, a, args.N, stabilize=not args.no_stabilize)
    return _report_exit(report, args)


_LIST_FLAGS = ("--a", "--lambda")


def _attach_negative_lists(argv: Sequence[str]) -> list[str]:
    # argparse would read "-1,1" as an option; glue it to its flag instead
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _LIST_FLAGS:
            nxt = next(it, None)
            if nxt is not None and re.fullmatch(r"-\d[\d,\s-]*", nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    argv = _attach_negative_lists(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    handlers = {"compute": _cmd_compute, "coeff": _cmd_coeff, "verify": _cmd_verify}
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"gpjt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


cli_main = main

if __name__ == "__main__":
    sys.exit(main())
