"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Sequence

from . import verify
from .bernoulli import DEFAULT_P_EXACT, bernoulli_table
from .congruences import REGISTRY, check_all
from .errors import CheckpointMismatch, LerchError, RangeInvalid
from .search import FIELDS, SearchOptions, SearchRecord, search_range

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
SEARCH_CAP = 10**6


class UsageError(Exception):
    pass


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _abbrev(v, width: int = 40) -> str:
    s = "-" if v is None else str(v)
    if len(s) > width:
        return f"{s[:12]}...{s[-12:]} ({len(s)} chars)"
    return s


def _fmt(args) -> str:
    if getattr(args, "json", False):
        return "json"
    if getattr(args, "csv", False):
        return "csv"
    return args.format


def run_verify(
    scope: str,
    pmax: int | None = None,
    *,
    p_exact: int = DEFAULT_P_EXACT,
    threads: int = 1,
    known: dict | None = None,
    out=None,
) -> int:
    out = out or sys.stdout
    if scope == "known":
        known = known or {}
        rep = verify.known_lists(
            verify.KNOWN_BOUND,
            known.get("lerch", verify.KNOWN_LERCH),
            known.get("wilson", verify.KNOWN_WILSON),
            threads=threads,
        )
    elif scope == "identities":
        pmax = 199 if pmax is None else pmax
        if pmax < 5:
            raise UsageError("--pmax must be >= 5 for the identity suite")
        rep = verify.identities(pmax)
    elif scope == "congruences":
        rep = verify.congruences(DEFAULT_P_EXACT if pmax is None else pmax, p_exact)
    else:
        raise UsageError(f"unknown scope {scope!r}")
    for line in rep.lines:
        print(line, file=out)
    for msg in rep.failures:
        print(f"FAIL: {msg}", file=out)
    print(f"{rep.name}: {'PASS' if rep.ok else 'FAIL'} ({rep.checked} checks)", file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def run_report(p: int, *, fmt: str = "text", p_exact: int = DEFAULT_P_EXACT, out=None) -> int:
    out = out or sys.stdout
    if not is_prime_trial(p):
        raise UsageError(f"{p} is not prime")
    if p == 2:
        raise UsageError("the registry is stated for odd primes")
    results = check_all(p, p_exact=p_exact)
    if fmt == "json":
        for r in results:
            print(json.dumps(r.to_dict(), separators=(",", ":")), file=out)
        return EXIT_OK
    print(f"{'id':5} {'applicable':10} {'holds':6} {'lhs':>24} {'rhs':>24} {'modulus':>10}  method", file=out)
    for r in results:
        holds = "-" if r.holds is None else ("yes" if r.holds else "no")
        method = r.method_used or (r.error or "-")
        if r.note:
            method = f"{method} [{r.note}]"
        print(
            f"{r.id:5} {str(r.applicable):10} {holds:6} {_abbrev(r.lhs, 24):>24} "
            f"{_abbrev(r.rhs, 24):>24} {_abbrev(r.modulus if r.modulus else 'exact', 10):>10}  {method}",
            file=out,
        )
    return EXIT_OK


def run_search(
    lo: int,
    hi: int,
    *,
    fmt: str = "text",
    threads: int = 1,
    out_path: Path | None = None,
    checkpoint: Path | None = None,
    histogram: bool = False,
    c20: bool = False,
    p_exact: int = DEFAULT_P_EXACT,
    force: bool = False,
    out=None,
) -> int:
    out = out or sys.stdout
    if lo < 2 or hi < lo:
        raise UsageError(f"invalid range [{lo}, {hi}]")
    if hi > SEARCH_CAP and not force:
        raise UsageError(f"upper bound above {SEARCH_CAP} needs --force")
    if threads < 1:
        raise UsageError("--threads must be >= 1")
    file_fmt = "csv" if fmt == "csv" else "jsonl"
    on_record = None
    if out_path is None:
        if fmt == "csv":
            print(",".join(FIELDS), file=out)

        def on_record(rec: SearchRecord) -> None:
            if fmt == "json":
                print(rec.to_json(), file=out)
            elif fmt == "csv":
                print(",".join(rec.to_csv_row()), file=out)
            else:
                tags = [t for t, on in (("LERCH", rec.is_lerch), ("WILSON", rec.is_wilson), ("C20", rec.c20)) if on]
                print(
                    f"p={rec.p} lerch_residue={_abbrev(rec.lerch_residue)} "
                    f"wilson_residue={rec.wilson_residue} {' '.join(tags)}".rstrip(),
                    file=out,
                )

    opts = SearchOptions(
        threads=threads,
        checkpoint_path=checkpoint,
        out_path=out_path,
        fmt=file_fmt,
        emit_near_miss_histogram=histogram,
        c20=c20,
        p_exact=p_exact,
        on_record=on_record,
    )
    summary = search_range(lo, hi, opts)
    # with records on stdout the summary goes to stderr to keep the stream clean
    sout = sys.stderr if out_path is None and fmt != "text" else out
    if fmt == "text":
        print(f"primes classified: {summary.records_emitted} in [{lo}, {hi}]", file=sout)
        print(f"Lerch primes: {summary.found_lerch}", file=sout)
        print(f"Wilson primes: {summary.found_wilson}", file=sout)
        if c20:
            print(f"C20 solutions (p <= {p_exact}): {summary.found_c20}", file=sout)
        if summary.histogram is not None:
            print(f"lerch residue histogram: {summary.histogram}", file=sout)
    else:
        doc = {
            "range": [lo, hi],
            "records": summary.records_emitted,
            "found_lerch": summary.found_lerch,
            "found_wilson": summary.found_wilson,
            "found_c20": summary.found_c20,
        }
        if summary.histogram is not None:
            doc["histogram"] = summary.histogram
        print(json.dumps({"summary": doc}), file=sout)
    return EXIT_OK


def run_bernoulli(n: int, out=None) -> int:
    out = out or sys.stdout
    if n < 0:
        raise UsageError("--n must be >= 0")
    table = bernoulli_table(n)
    for i in range(n + 1):
        b = table[i]
        print(f"{i}: {b.numerator}/{b.denominator}", file=out)
    return EXIT_OK


def run_identities(pmax: int, *, fmt: str = "text", out=None) -> int:
    out = out or sys.stdout
    if pmax < 5:
        raise UsageError("--pmax must be >= 5")
    ok = True
    for p, em, beeger in verify.identity_rows(pmax):
        ok &= (em is not False) and beeger
        if fmt == "json":
            print(json.dumps({"p": p, "C10": em, "C11": beeger}, separators=(",", ":")), file=out)
        else:
            em_s = "n/a" if em is None else ("holds" if em else "FAILS")
            print(f"p={p} C10 {em_s} C11 {'holds' if beeger else 'FAILS'}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def _add_format(sp: argparse.ArgumentParser, choices=("text", "json", "csv")) -> None:
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--format", choices=choices, default="text")
    g.add_argument("--json", action="store_true", help="shorthand for --format json")
    if "csv" in choices:
        g.add_argument("--csv", action="store_true", help="shorthand for --format csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lerchprimes",
        description="Fermat/Wilson/Lerch quotients, Bernoulli congruences and prime searches.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--scope", choices=("known", "identities", "congruences"), default="known")
    sp.add_argument("--pmax", type=int, default=None)
    sp.add_argument("--p-exact", type=int, default=DEFAULT_P_EXACT)
    sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("report", help="evaluate every registry entry at one prime")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--p-exact", type=int, default=DEFAULT_P_EXACT)
    _add_format(sp, ("text", "json"))

    sp = sub.add_parser("search", help="classify all primes in a range")
    sp.add_argument("--from", dest="lo", type=int, required=True)
    sp.add_argument("--to", dest="hi", type=int, required=True)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--out", type=Path, default=None, help="write records here instead of stdout")
    sp.add_argument("--checkpoint", type=Path, default=None)
    sp.add_argument("--histogram", action="store_true", help="include the lerch residue histogram")
    sp.add_argument("--c20", action="store_true", help="decide B_(2p-2) = B_(p-1) mod p^2 exactly")
    sp.add_argument("--p-exact", type=int, default=DEFAULT_P_EXACT)
    sp.add_argument("--force", action="store_true", help=f"allow ranges above {SEARCH_CAP}")
    _add_format(sp)

    sp = sub.add_parser("bernoulli", help="print exact B_0..B_N")
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("identities", help="exact identity checks per prime")
    sp.add_argument("--pmax", type=int, default=199)
    _add_format(sp, ("text", "json"))

    sub.add_parser("registry", help="list the congruence registry")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        if args.command == "verify":
            return run_verify(args.scope, args.pmax, p_exact=args.p_exact, threads=args.threads)
        if args.command == "report":
            return run_report(args.p, fmt=_fmt(args), p_exact=args.p_exact)
        if args.command == "search":
            return run_search(
                args.lo, args.hi, fmt=_fmt(args), threads=args.threads, out_path=args.out,
                checkpoint=args.checkpoint, histogram=args.histogram, c20=args.c20,
                p_exact=args.p_exact, force=args.force,
            )
        if args.command == "bernoulli":
            return run_bernoulli(args.n)
        if args.command == "identities":
            return run_identities(args.pmax, fmt=_fmt(args))
        if args.command == "registry":
            for e in REGISTRY.values():
                mod = "exact" if e.modulus_exponent is None else f"p^{e.modulus_exponent}"
                print(f"{e.id:5} {mod:6} p>={e.min_p}  {e.statement}")
            return EXIT_OK
    except (UsageError, RangeInvalid, CheckpointMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except LerchError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
