"""Command-line entry point.

Exit codes: 0 success, 1 certificate check failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Iterable, Iterator, Optional, Sequence, TextIO

from . import certificate as certfmt
from .certifier import block_chain, build_certificate
from .checker import check_certificate
from .core import WORD_LIMIT, DomainError, EvalRow, eval_range, eval_row
from .oracle import emit_exercise_table, find_exceeding, scan_signs, scan_summary

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TABLE_CHUNK = 1 << 16


class UsageError(Exception):
    pass


def _integer(text: str) -> int:
    try:
        return int(text.strip(), 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None


def _rows(lo: int, hi: int) -> Iterator[EvalRow]:
    start = lo
    while start <= hi:
        stop = min(hi, start + TABLE_CHUNK - 1)
        cols = eval_range(start, stop)
        for n, z, m, r, x in zip(*(cols[k].tolist() for k in ("n", "z", "m", "r", "x"))):
            yield EvalRow(n, z, m, r, x)
        start = stop + 1


def write_rows(rows: Iterable[EvalRow], fmt: str, out: TextIO) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "z", "m", "r", "x"])
        for row in rows:
            writer.writerow(row.as_tuple())
    else:
        out.write(f"{'n':>8} {'z':>8} {'m':>6} {'r':>3} {'x':>8}\n")
        for row in rows:
            out.write(f"{row.n:>8} {row.z:>8} {row.m:>6} {row.r:>3} {row.x:>8}\n")


def cmd_eval(args, out: TextIO) -> int:
    row = eval_row(args.n)
    out.write(f"n={row.n} z={row.z} m={row.m} r={row.r} x={row.x}\n")
    return EXIT_OK


def cmd_table(args, out: TextIO) -> int:
    if args.preset == "exercise1":
        rows: Iterable[EvalRow] = emit_exercise_table()
    else:
        if args.lo is None or args.hi is None:
            raise UsageError("table needs --from and --to, or --preset exercise1")
        if not 1 <= args.lo <= args.hi <= WORD_LIMIT:
            raise UsageError(f"bad range {args.lo}..{args.hi}")
        rows = _rows(args.lo, args.hi)
    write_rows(rows, args.format, out)
    return EXIT_OK


def cmd_intervals(args, out: TextIO) -> int:
    if args.count < 1:
        raise UsageError("--count must be positive")
    out.write("i,start,end,r,m,x_min,x_max\n")
    for i, b in enumerate(block_chain(args.count), 1):
        out.write(f"{i},{b.start},{b.end},{b.r_val},{b.m_val},{b.x_min},{b.x_max}\n")
    return EXIT_OK


def cmd_scan(args, out: TextIO) -> int:
    if not 1 <= args.lo <= args.hi <= WORD_LIMIT:
        raise UsageError(f"bad range {args.lo}..{args.hi}")
    for run in scan_signs(args.lo, args.hi, workers=args.workers):
        out.write(f"{run.sign.value} {run.lo} {run.hi}\n")
    summ = scan_summary(args.lo, args.hi, workers=args.workers)
    out.write("zeros: " + " ".join(map(str, summ.zeros)) + "\n")
    out.write(f"min: {summ.min_at} {summ.min_value}\n")
    out.write(f"max: {summ.max_at} {summ.max_value}\n")
    last = "none" if summ.last_nonpositive is None else str(summ.last_nonpositive)
    out.write(f"last_nonpositive: {last}\n")
    return EXIT_OK


def cmd_certify(args, out: TextIO) -> int:
    if args.tail_smax < 12:
        raise UsageError("--tail-smax must be at least 12")
    cert = build_certificate(args.tail_smax)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(cert.dumps())
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from None
    out.write(f"wrote {len(cert.segments)} segments and {len(cert.tail.margins)} tail margins to {args.out}\n")
    return EXIT_OK


def cmd_check(args, out: TextIO) -> int:
    try:
        with open(args.cert, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.cert}: {exc}") from None
    try:
        cert = certfmt.loads(text)
    except certfmt.CertificateParseError as exc:
        raise UsageError(f"cannot parse {args.cert}: {exc}") from None
    report = check_certificate(cert)
    if not report.ok:
        print(f"FAIL {report.failure}", file=sys.stderr)
        return EXIT_FAIL
    out.write(f"PASS {report.segments_checked} segments, {report.margins_checked} tail margins\n")
    for note in report.notes:
        out.write(note + "\n")
    return EXIT_OK


def cmd_exceed(args, out: TextIO) -> int:
    w = find_exceeding(args.bound)
    out.write(f"n={w.n} x={w.x}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signcert", description="Sign of z(n) - (r(n)+1) m(n): evaluation, scans, certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", help="print n, z, m, r, x for one n")
    sp.add_argument("n", type=_integer)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("table", help="emit rows for a range of n")
    sp.add_argument("--from", dest="lo", type=_integer)
    sp.add_argument("--to", dest="hi", type=_integer)
    sp.add_argument("--preset", choices=["exercise1"])
    sp.add_argument("--format", choices=["csv", "plain"], default="csv")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("intervals", help="maximal blocks with r and m constant")
    sp.add_argument("--count", type=_integer, default=37)
    sp.set_defaults(func=cmd_intervals)

    sp = sub.add_parser("scan", help="sign runs and summary over [LO, HI]")
    sp.add_argument("lo", type=_integer)
    sp.add_argument("hi", type=_integer)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("certify", help="write a sign certificate")
    sp.add_argument("--tail-smax", dest="tail_smax", type=_integer, default=200)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("check", help="verify a certificate file")
    sp.add_argument("--cert", required=True)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("exceed", help="witness n with x(n) > B")
    sp.add_argument("bound", metavar="B", type=_integer)
    sp.set_defaults(func=cmd_exceed)
    return p


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
