"""Range search over primes for Lerch, Wilson and Wilson-Lerch candidates.

Primes come from a segmented sieve and are classified in fixed-size chunks,
optionally by a process pool.  A single merger consumes chunks in prime
order, so the record stream is identical for any worker count, and it is
the only writer of the output file and the checkpoint.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import tempfile
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional

from .bernoulli import DEFAULT_P_EXACT
from .congruences import CongruenceCheckRequest, Method, check
from .errors import CheckpointMismatch, RangeInvalid
from .numcore import powmod
from .quotients import lerch_from_residues

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FIELDS = ("p", "lerch_residue", "is_lerch", "wilson_residue", "is_wilson", "c20", "method")
SEGMENT = 1 << 16


def _base_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


def iter_primes(lo: int, hi: int, segment: int = SEGMENT) -> Iterator[int]:
    """Primes in [lo, hi] ascending, sieving one bounded segment at a time."""
    if lo < 2 or hi < lo:
        raise RangeInvalid(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    base = _base_primes(math.isqrt(hi))
    start = lo
    while start <= hi:
        stop = min(start + segment, hi + 1)
        flags = bytearray([1]) * (stop - start)
        for q in base:
            if q * q >= stop:
                break
            first = max(q * q, (start + q - 1) // q * q)
            flags[first - start :: q] = bytearray(len(range(first, stop, q)))
        for i, f in enumerate(flags):
            if f and start + i >= 2:
                yield start + i
        start = stop


def sieve(lo: int, hi: int) -> list[int]:
    return list(iter_primes(lo, hi))


@dataclass(frozen=True)
class SearchRecord:
    p: int
    lerch_residue: Optional[int]
    is_lerch: Optional[bool]
    wilson_residue: int
    is_wilson: bool
    c20: Optional[bool] = None
    method: str = "direct"

    def to_json(self) -> str:
        return json.dumps({f: getattr(self, f) for f in FIELDS}, separators=(",", ":"))

    def to_csv_row(self) -> list[str]:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        return [cell(getattr(self, f)) for f in FIELDS]


def _wilson_and_qsum_mod_p2(p: int) -> tuple[int, int]:
    # one pass over a = 1..p-1 at modulus p**3
    mod = p * p * p
    e = p - 1
    fact = 1
    s = 0
    for a in range(1, p):
        fact = fact * a % mod
        s += powmod(a, e, mod)
    fact += 1
    if fact % p:
        raise ArithmeticError(f"{p} is not prime")
    p2 = p * p
    return (fact // p) % p2, ((s - e) // p) % p2


def classify(p: int, *, c20: bool = False, p_exact: int = DEFAULT_P_EXACT) -> SearchRecord:
    """Lerch and Wilson status of one prime.

    With ``c20`` set, the Wilson-Lerch congruence is decided by exact
    Bernoulli arithmetic when p <= p_exact and left as None otherwise.
    """
    if p == 2:
        # W_2 = (1! + 1)/2 = 1; the Lerch quotient needs p > 2
        return SearchRecord(2, None, None, 1, False, None, "direct")
    wilson, qsum = _wilson_and_qsum_mod_p2(p)
    ell = lerch_from_residues(p, qsum, wilson)
    c20_value = None
    method = "direct"
    if c20 and p <= p_exact:
        r = check(CongruenceCheckRequest("C20", p, method=Method.EXACT), p_exact=p_exact)
        c20_value = bool(r.holds)
        method = "direct+exact-bernoulli"
    w1 = wilson % p
    return SearchRecord(p, ell, ell == 0, w1, w1 == 0, c20_value, method)


def _classify_chunk(args: tuple[list[int], bool, int]) -> list[SearchRecord]:
    primes, c20, p_exact = args
    return [classify(p, c20=c20, p_exact=p_exact) for p in primes]


@dataclass
class Checkpoint:
    schema_version: int
    range_lo: int
    range_hi: int
    next_prime: int
    found_lerch: list[int] = field(default_factory=list)
    found_wilson: list[int] = field(default_factory=list)
    found_c20: list[int] = field(default_factory=list)
    records_emitted: int = 0
    output_offset: int = 0
    lerch_histogram: dict[str, int] = field(default_factory=dict)

    def save(self, path: Path) -> None:
        """Write atomically: temp file in the same directory, then rename."""
        path = Path(path)
        fd, tmp = tempfile.mkstemp(prefix=path.name, suffix=".tmp", dir=path.parent or ".")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(asdict(self), fh, sort_keys=True)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def load(cls, path: Path) -> Checkpoint:
        with open(path) as fh:
            data = json.load(fh)
        if data.get("schema_version") != SCHEMA_VERSION:
            raise CheckpointMismatch(
                f"checkpoint schema {data.get('schema_version')} != {SCHEMA_VERSION}"
            )
        return cls(**data)


@dataclass
class SearchOptions:
    threads: int = 1
    checkpoint_path: Optional[Path] = None
    out_path: Optional[Path] = None
    fmt: str = "jsonl"  # or "csv"
    emit_near_miss_histogram: bool = False
    c20: bool = False
    p_exact: int = DEFAULT_P_EXACT
    chunk_size: int = 64
    checkpoint_every: int = 100
    checkpoint_seconds: float = 5.0
    on_record: Optional[Callable[[SearchRecord], None]] = None


@dataclass
class SearchSummary:
    range_lo: int
    range_hi: int
    records_emitted: int
    found_lerch: list[int]
    found_wilson: list[int]
    found_c20: list[int]
    histogram: Optional[dict[int, int]] = None
    resumed_from: Optional[int] = None
    elapsed: float = 0.0


def _chunks(items: Iterable[int], size: int) -> Iterator[list[int]]:
    buf: list[int] = []
    for x in items:
        buf.append(x)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def _open_output(opts: SearchOptions, ckpt: Checkpoint, resuming: bool):
    if opts.out_path is None:
        return None
    path = Path(opts.out_path)
    if resuming and path.exists():
        fh = open(path, "r+b")
        fh.truncate(ckpt.output_offset)
        fh.seek(ckpt.output_offset)
        return fh
    fh = open(path, "wb")
    if opts.fmt == "csv":
        fh.write((",".join(FIELDS) + "\r\n").encode())
    return fh


def _encode(rec: SearchRecord, fmt: str) -> bytes:
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf).writerow(rec.to_csv_row())
        return buf.getvalue().encode()
    return (rec.to_json() + "\n").encode()


def search_range(lo: int, hi: int, options: SearchOptions | None = None) -> SearchSummary:
    """Classify every prime in [lo, hi], streaming records in ascending order.

    If ``options.checkpoint_path`` names an existing checkpoint for the same
    range, the search resumes from it and the output file is cut back to the
    last checkpointed record before new records are appended.
    """
    opts = options or SearchOptions()
    if lo < 2 or hi < lo:
        raise RangeInvalid(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    if opts.fmt not in ("jsonl", "csv"):
        raise ValueError(f"unknown format {opts.fmt!r}")
    t0 = time.monotonic()

    resuming = False
    ckpt = Checkpoint(SCHEMA_VERSION, lo, hi, lo)
    if opts.checkpoint_path is not None and Path(opts.checkpoint_path).exists():
        ckpt = Checkpoint.load(opts.checkpoint_path)
        if (ckpt.range_lo, ckpt.range_hi) != (lo, hi):
            raise CheckpointMismatch(
                f"checkpoint covers [{ckpt.range_lo}, {ckpt.range_hi}], not [{lo}, {hi}]"
            )
        resuming = True
        log.info("resuming at %d after %d records", ckpt.next_prime, ckpt.records_emitted)
    resumed_from = ckpt.next_prime if resuming else None

    hist = Counter({int(k): v for k, v in ckpt.lerch_histogram.items()})
    out = _open_output(opts, ckpt, resuming)
    if out is not None and not resuming:
        ckpt.output_offset = out.tell()

    def write_checkpoint(next_prime: int) -> None:
        if out is not None:
            out.flush()
            os.fsync(out.fileno())
            ckpt.output_offset = out.tell()
        ckpt.next_prime = next_prime
        ckpt.lerch_histogram = {str(k): hist[k] for k in sorted(hist)}
        if opts.checkpoint_path is not None:
            ckpt.save(Path(opts.checkpoint_path))

    start = ckpt.next_prime
    chunks = _chunks(iter_primes(start, hi), opts.chunk_size) if start <= hi else iter(())
    jobs = ((c, opts.c20, opts.p_exact) for c in chunks)
    pool = ProcessPoolExecutor(max_workers=opts.threads) if opts.threads > 1 else None
    try:
        results = pool.map(_classify_chunk, jobs) if pool else map(_classify_chunk, jobs)
        since = 0
        last_save = time.monotonic()
        for records in results:
            for rec in records:
                if out is not None:
                    out.write(_encode(rec, opts.fmt))
                ckpt.records_emitted += 1
                if rec.is_lerch:
                    ckpt.found_lerch.append(rec.p)
                if rec.is_wilson:
                    ckpt.found_wilson.append(rec.p)
                if rec.c20:
                    ckpt.found_c20.append(rec.p)
                if rec.lerch_residue is not None:
                    hist[rec.lerch_residue] += 1
                if opts.on_record is not None:
                    opts.on_record(rec)
                since += 1
                now = time.monotonic()
                if since >= opts.checkpoint_every or now - last_save >= opts.checkpoint_seconds:
                    write_checkpoint(rec.p + 1)
                    since, last_save = 0, now
        write_checkpoint(hi + 1)
    finally:
        if pool is not None:
            pool.shutdown(wait=True, cancel_futures=True)
        if out is not None:
            out.close()

    return SearchSummary(
        lo, hi, ckpt.records_emitted,
        list(ckpt.found_lerch), list(ckpt.found_wilson), list(ckpt.found_c20),
        dict(sorted(hist.items())) if opts.emit_near_miss_histogram else None,
        resumed_from, time.monotonic() - t0,
    )
