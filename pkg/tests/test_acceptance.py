"""Acceptance criteria, one test each, at the stated tolerances.

The terminal summary (see conftest.py) prints a PASS/FAIL line per criterion.
"""

import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from lerchprimes.bernoulli import bernoulli_padic_estimate, bernoulli_table, w_quantity
from lerchprimes.congruences import (
    REGISTRY,
    CongruenceCheckRequest,
    Method,
    PrimeContext,
    c20_solutions,
    check,
)
from lerchprimes.numcore import PrimePowerModulus, rat_residue
from lerchprimes.quotients import (
    beeger_sum,
    euler_maclaurin_rhs,
    fermat_quotient_sum,
    fermat_quotient_sum_exact,
    wilson_quotient,
)
from lerchprimes.search import SearchOptions, search_range

from oracles import primes_by_trial_division, qsum_exact

C20_FIXTURE = [5]  # frozen from the exact-rational oracle run over p <= 1000
FULL_BUDGET_S = 30 * 60


@pytest.fixture(scope="module")
def known_run():
    t0 = time.perf_counter()
    summary = search_range(2, 10_000)
    return summary, time.perf_counter() - t0


def test_criterion_1_lerch_primes(known_run, record_property):
    summary, elapsed = known_run
    record_property("detail", f"Lerch <= 1e4: {summary.found_lerch} in {elapsed:.1f}s")
    assert summary.found_lerch == [3, 103, 839, 2237]
    assert elapsed < 60


def test_criterion_2_wilson_primes(known_run, record_property):
    summary, _ = known_run
    record_property("detail", f"Wilson <= 1e4: {summary.found_wilson}")
    assert summary.found_wilson == [5, 13, 563]


def test_criterion_3_exact_identities(record_property):
    t0 = time.perf_counter()
    table = bernoulli_table(198)
    n = 0
    for p in primes_by_trial_division(5, 199):
        assert euler_maclaurin_rhs(p, table) == fermat_quotient_sum_exact(p) == qsum_exact(p), p
        n += 1
    for p in primes_by_trial_division(3, 499):
        for k in (1, 2, 3):
            assert beeger_sum(p, k) == wilson_quotient(p, k), (p, k)
            n += 1
    elapsed = time.perf_counter() - t0
    record_property("detail", f"{n} exact identity checks in {elapsed:.1f}s")
    assert elapsed < 300


def test_criterion_4_congruence_suite(record_property):
    t0 = time.perf_counter()
    n = 0
    for p in primes_by_trial_division(3, 2000):
        ctx = PrimeContext(p, p_exact=2000)
        for cid in ("C01", "C03", "C04", "C06", "C12"):
            method = Method.DIRECT if cid in ("C06", "C12") else Method.EXACT
            r = check(CongruenceCheckRequest(cid, p, m=2 if cid == "C03" else None, method=method), context=ctx)
            assert r.holds, (cid, p)
            n += 1
        if p <= 499:
            for cid in ("C08", "C13", "C14", "C15", "C16", "C17"):
                if p < REGISTRY[cid].min_p:
                    continue
                method = Method.EXACT if Method.EXACT in REGISTRY[cid].methods else Method.DIRECT
                r = check(CongruenceCheckRequest(cid, p, method=method), context=ctx)
                assert r.holds, (cid, p)
                n += 1
    record_property("detail", f"{n} exact residue checks in {time.perf_counter() - t0:.1f}s")


def test_criterion_5_lerch_criteria_equivalence(record_property):
    mismatches = []
    for p in primes_by_trial_division(5, 499):
        ctx = PrimeContext(p)
        verdicts = {
            cid: check(CongruenceCheckRequest(cid, p, method=meth), context=ctx).holds
            for cid, meth in (
                ("C07", Method.DIRECT), ("C09", Method.EXACT),
                ("C18", Method.DIRECT), ("C19", Method.EXACT),
            )
        }
        if len(set(verdicts.values())) != 1:
            mismatches.append((p, verdicts))
    ctx = PrimeContext(3)
    c07 = check(CongruenceCheckRequest("C07", 3), context=ctx).holds
    c18 = check(CongruenceCheckRequest("C18", 3), context=ctx).holds
    record_property("detail", f"5..499 mismatches: {len(mismatches)}; p=3 C07={c07} C18={c18}")
    assert not mismatches
    assert c07 == c18


def test_criterion_6_method_independence(record_property):
    two_method = [e.id for e in REGISTRY.values() if len(e.methods) > 1 and e.id != "C03g"]
    table = bernoulli_table(2 * 499 - 2)
    n = 0
    for p in primes_by_trial_division(5, 499):
        m2 = PrimePowerModulus(p, 2)
        est = bernoulli_padic_estimate(p, wilson_quotient(p, 2), fermat_quotient_sum(p, 2))
        assert est.w_mod_p2 == rat_residue(w_quantity(p, table), m2), p
        assert est.b_low.congruent(table[p - 1], 2) and est.b_high.congruent(table[2 * p - 2], 2), p
        ctx = PrimeContext(p)
        for cid in two_method:
            a = check(CongruenceCheckRequest(cid, p, method=Method.EXACT), context=ctx)
            b = check(CongruenceCheckRequest(cid, p, method=Method.PADIC), context=ctx)
            assert (a.holds, a.lhs, a.rhs) == (b.holds, b.lhs, b.rhs), (cid, p)
            n += 1
    for p in primes_by_trial_division(5, 199):
        for m in (1, 2, 3):
            a = check(CongruenceCheckRequest("C03g", p, m=m, method=Method.EXACT))
            b = check(CongruenceCheckRequest("C03g", p, m=m, method=Method.DIRECT))
            assert (a.holds, a.lhs, a.rhs) == (b.holds, b.lhs, b.rhs), ("C03g", p, m)
            n += 1
    record_property("detail", f"{n} exact-vs-second-method comparisons agree; entries {two_method + ['C03g']}")


def test_criterion_7_c20_solutions(known_run, record_property):
    solutions = c20_solutions(1000)
    summary, _ = known_run
    both = sorted(set(summary.found_lerch) & set(summary.found_wilson))
    record_property("detail", f"C20 solutions <= 1000: {solutions}; Lerch and Wilson: {both}")
    assert 5 in solutions
    assert solutions == C20_FIXTURE
    assert not both


_REF = {}


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(
    kill_at=st.lists(st.integers(min_value=1, max_value=250), min_size=0, max_size=3),
    every=st.integers(min_value=1, max_value=40),
    threads=st.sampled_from([1, 2, 3]),
    fmt=st.sampled_from(["jsonl", "csv"]),
)
def test_criterion_8_determinism_and_resume(tmp_path, record_property, kill_at, every, threads, fmt):
    lo, hi = 2, 1500
    if fmt not in _REF:
        ref = tmp_path / f"ref.{fmt}"
        search_range(lo, hi, SearchOptions(out_path=ref, fmt=fmt))
        _REF[fmt] = ref.read_bytes()
    out, ck = tmp_path / f"run.{fmt}", tmp_path / "run.ckpt"
    for f in (out, ck):
        f.unlink(missing_ok=True)

    class Killed(Exception):
        pass

    for n in kill_at:
        count = [0]

        def on_record(rec, count=count, n=n):
            count[0] += 1
            if count[0] >= n:
                raise Killed

        try:
            search_range(lo, hi, SearchOptions(
                out_path=out, checkpoint_path=ck, fmt=fmt, threads=threads,
                checkpoint_every=every, chunk_size=11, on_record=on_record,
            ))
        except Killed:
            pass
    search_range(lo, hi, SearchOptions(out_path=out, checkpoint_path=ck, fmt=fmt, threads=threads))
    record_property("detail", "multi-process and resumed streams byte-identical to single-threaded")
    assert Path(out).read_bytes() == _REF[fmt]


@pytest.mark.slow
def test_criterion_9_performance(record_property):
    p = 99991
    fermat_quotient_sum(p, 2)  # warm imports
    t0 = time.perf_counter()
    fermat_quotient_sum(p, 2)
    one = time.perf_counter() - t0

    t0 = time.perf_counter()
    summary = search_range(2, 100_000)
    full = time.perf_counter() - t0
    soft = "within" if full < FULL_BUDGET_S else "OVER (soft)"
    record_property(
        "detail",
        f"fermat_quotient_sum({p}, 2) {one * 1000:.0f} ms; [2, 1e5] in {full:.0f}s, "
        f"{soft} the {FULL_BUDGET_S // 60} min budget; Lerch {summary.found_lerch}",
    )
    assert one < 0.2
    assert full < 2 * FULL_BUDGET_S
