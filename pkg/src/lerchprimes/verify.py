"""Batch verification suites behind the ``verify`` and ``identities`` commands."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import quotients as qt
from .bernoulli import DEFAULT_P_EXACT, bernoulli_table
from .congruences import (
    CongruenceCheckRequest,
    Method,
    PrimeContext,
    check,
    stringency_progression,
)
from .search import SearchOptions, search_range, sieve

KNOWN_LERCH = (3, 103, 839, 2237)
KNOWN_WILSON = (5, 13, 563)
KNOWN_BOUND = 10_000


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, message: str) -> None:
        self.checked += 1
        if not cond:
            self.failures.append(message)


def odd_primes(lo: int, hi: int) -> list[int]:
    return [p for p in sieve(max(lo, 2), hi) if p > 2] if hi >= max(lo, 2) else []


def known_lists(
    bound: int = KNOWN_BOUND,
    expected_lerch: Iterable[int] = KNOWN_LERCH,
    expected_wilson: Iterable[int] = KNOWN_WILSON,
    threads: int = 1,
) -> SuiteReport:
    rep = SuiteReport("known")
    summary = search_range(2, bound, SearchOptions(threads=threads))
    exp_l, exp_w = sorted(expected_lerch), sorted(expected_wilson)
    rep.lines.append(f"Lerch primes <= {bound}: {summary.found_lerch}")
    rep.lines.append(f"Wilson primes <= {bound}: {summary.found_wilson}")
    rep.expect(
        summary.found_lerch == exp_l,
        f"Lerch: expected {exp_l}, found {summary.found_lerch}; "
        f"missing {sorted(set(exp_l) - set(summary.found_lerch))}, "
        f"extra {sorted(set(summary.found_lerch) - set(exp_l))}",
    )
    rep.expect(
        summary.found_wilson == exp_w,
        f"Wilson: expected {exp_w}, found {summary.found_wilson}; "
        f"missing {sorted(set(exp_w) - set(summary.found_wilson))}, "
        f"extra {sorted(set(summary.found_wilson) - set(exp_w))}",
    )
    return rep


def identity_rows(pmax: int) -> Iterable[tuple[int, bool | None, bool]]:
    """(p, Euler-MacLaurin exact equality or None for p = 3, Beeger sum == W_p for k = 1..3)."""
    table = bernoulli_table(max(pmax - 1, 2))
    for p in odd_primes(3, pmax):
        em = None
        if p > 3:
            em = qt.euler_maclaurin_rhs(p, table) == qt.fermat_quotient_sum_exact(p)
        beeger = all(qt.beeger_sum(p, k) == qt.wilson_quotient(p, k) for k in (1, 2, 3))
        yield p, em, beeger


def identities(pmax: int) -> SuiteReport:
    rep = SuiteReport("identities")
    for p, em, beeger in identity_rows(pmax):
        if em is not None:
            rep.expect(em, f"Euler-MacLaurin sum identity fails at p={p}")
        rep.expect(beeger, f"Beeger sum differs from W_p at p={p}")
    rep.lines.append(f"exact identities checked for odd primes <= {pmax}: {rep.checked} checks")
    return rep


THEOREMS_ALL = ("C01", "C03", "C04", "C06", "C12")
THEOREMS_EXACT = ("C08", "C10", "C11", "C13", "C14", "C15", "C16", "C17")
TWO_METHOD = ("C01", "C02", "C03", "C04", "C05", "C08", "C09", "C17", "C19", "C20")


def congruences(
    pmax: int = DEFAULT_P_EXACT,
    p_exact: int = DEFAULT_P_EXACT,
    progress: Callable[[int], None] | None = None,
) -> SuiteReport:
    rep = SuiteReport("congruences")
    exact_hi = min(pmax, p_exact)
    for p in odd_primes(3, pmax):
        ctx = PrimeContext(p, p_exact)

        def run(cid: str, method: Method = Method.AUTO):
            return check(CongruenceCheckRequest(cid, p, method=method), context=ctx)

        for cid in THEOREMS_ALL:
            rep.expect(bool(run(cid).holds), f"{cid} fails at p={p}")
        if p <= exact_hi:
            if p >= 5:
                for cid in THEOREMS_EXACT:
                    meth = Method.EXACT if cid in ("C08", "C10", "C17") else Method.AUTO
                    rep.expect(bool(run(cid, meth).holds), f"{cid} fails at p={p}")
            ex = {cid: run(cid, Method.EXACT).holds for cid in ("C02", "C05", "C09", "C19", "C20")}
            rep.expect(ex["C02"] == ex["C05"], f"C02 and C05 disagree at p={p}")
            if p >= 5:
                verdicts = {run("C07").holds, run("C18").holds, ex["C09"], ex["C19"]}
                rep.expect(len(verdicts) == 1, f"Lerch criteria disagree at p={p}")
                for cid in TWO_METHOD:
                    a, b = run(cid, Method.EXACT), run(cid, Method.PADIC)
                    rep.expect(
                        (a.holds, a.lhs, a.rhs) == (b.holds, b.lhs, b.rhs),
                        f"{cid} exact vs padic-estimate differ at p={p}",
                    )
            else:
                rep.expect(run("C07").holds == run("C18").holds, "C07 and C18 disagree at p=3")
            rep.expect(not ex["C20"] or ex["C05"], f"C20 without C05 at p={p}")
        if progress is not None:
            progress(p)
    rows = stringency_progression(odd_primes(3, exact_hi), p_exact=p_exact, method=Method.EXACT)
    for row in rows:
        rep.expect(row.consistent, f"stringency progression broken at p={row.p}")
    c20 = [r.p for r in rows if r.wilson_lerch]
    rep.lines.append(f"congruence suite over odd primes <= {pmax} (exact to {exact_hi}): {rep.checked} checks")
    rep.lines.append(f"B_(2p-2) = B_(p-1) mod p^2 solutions <= {exact_hi}: {c20}")
    return rep
