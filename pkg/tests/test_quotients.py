from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lerchprimes.bernoulli import bernoulli_table
from lerchprimes.errors import NonWilsonIntegerDivision, NotApplicable, OutOfRange
from lerchprimes.quotients import (
    Weight,
    beeger_sum,
    beeger_sum_exact,
    binomial_pm1,
    euler_maclaurin_rhs,
    fermat_quotient,
    fermat_quotient_sum,
    fermat_quotient_sum_exact,
    harmonic,
    lerch_residue,
    lucas_lehmer_rhs,
    lucas_lehmer_rhs_all,
    quotient_bundle,
    weighted_qsum,
    wilson_quotient,
    wilson_quotient_exact,
)
from lerchprimes.quotients import _wilson_raw

from oracles import (
    fermat_quotient_exact,
    harmonic_exact,
    primes_by_trial_division,
    qsum_exact,
    reduce_rational,
    wilson_exact,
)

PRIMES_100 = primes_by_trial_division(3, 100)


def test_examples():
    assert fermat_quotient(2, 5, 2) == 3
    assert fermat_quotient_sum(5, 1) == 0
    assert fermat_quotient_sum(5, 2) == 20
    assert fermat_quotient_sum(3, 2) == 1
    assert wilson_quotient(5, 1) == 0
    assert wilson_quotient(7, 1) == 5
    assert lerch_residue(5) == 3
    assert lerch_residue(3) == 0
    assert lerch_residue(103) == 0
    assert weighted_qsum(3, Weight.H, 1) == 0
    assert weighted_qsum(5, Weight.H, 1) == 3
    assert binomial_pm1(2, 7, 3) == 15
    assert beeger_sum(7, 2) == 5


def test_euler_maclaurin_example():
    t = bernoulli_table(10)
    assert euler_maclaurin_rhs(5, t) == 70
    assert euler_maclaurin_rhs(5, t) == fermat_quotient_sum_exact(5)
    with pytest.raises(NotApplicable):
        euler_maclaurin_rhs(3, t)


def test_out_of_range():
    with pytest.raises(OutOfRange):
        binomial_pm1(7, 7)
    with pytest.raises(OutOfRange):
        lucas_lehmer_rhs(0, 7)
    with pytest.raises(OutOfRange):
        harmonic(3, 3)


def test_non_wilson_trap():
    with pytest.raises(NonWilsonIntegerDivision):
        _wilson_raw(9, 1)
    with pytest.raises(NonWilsonIntegerDivision):
        wilson_quotient_exact(8)


@pytest.mark.parametrize("p", PRIMES_100)
def test_against_exact_integers(p):
    qs, w = qsum_exact(p), wilson_exact(p)
    for k in (1, 2, 3):
        pk = p**k
        assert fermat_quotient_sum(p, k) == qs % pk
        assert wilson_quotient(p, k) == w % pk
        for a in (1, 2, p - 1):
            assert fermat_quotient(a, p, k) == fermat_quotient_exact(a, p) % pk
    assert fermat_quotient_sum_exact(p) == qs
    assert wilson_quotient_exact(p) == w
    assert beeger_sum_exact(p) == w
    b = quotient_bundle(p, 2)
    assert lerch_residue(p) == b.lerch_residue


@pytest.mark.parametrize("p", PRIMES_100)
def test_weighted_sums_against_fractions(p):
    q = [fermat_quotient_exact(a, p) for a in range(1, p)]
    h = [harmonic_exact(a) for a in range(1, p)]
    h2 = [harmonic_exact(a, 2) for a in range(1, p)]
    for k in (1, 2):
        pk = p**k
        assert weighted_qsum(p, Weight.H, k) == reduce_rational(sum(x * y for x, y in zip(h, q)), pk)
        assert weighted_qsum(p, Weight.H_SQUARED, k) == reduce_rational(
            sum(x * x * y for x, y in zip(h, q)), pk
        )
        assert weighted_qsum(p, "H_2", k) == reduce_rational(sum(x * y for x, y in zip(h2, q)), pk)
        assert weighted_qsum(p, Weight.UNIT, k) == sum(q) % pk


@given(st.data())
def test_logarithmic_property(data):
    p = data.draw(st.sampled_from(primes_by_trial_division(5, 2000)))
    a = data.draw(st.integers(min_value=1, max_value=p - 1))
    b = data.draw(st.integers(min_value=1, max_value=p - 1))
    # q_p(ab) = q_p(a) + q_p(b) mod p; ab may exceed p-1, so its quotient comes from the oracle
    assert fermat_quotient(a, p, 1) + fermat_quotient(b, p, 1) == fermat_quotient_exact(a * b, p) % p


def test_fermat_quotient_domain():
    with pytest.raises(OutOfRange):
        fermat_quotient(5, 5)
    with pytest.raises(OutOfRange):
        fermat_quotient(0, 5)


def test_quotient_sum_equals_wilson_mod_p():
    for p in primes_by_trial_division(3, 2000):
        assert fermat_quotient_sum(p, 1) == wilson_quotient(p, 1), p


@pytest.mark.parametrize("p", primes_by_trial_division(3, 60))
def test_binomials_and_lucas(p):
    for a in range(1, p):
        for k in (1, 2, 3):
            assert binomial_pm1(a, p, k) == comb(p - 1, a) % p**k
        assert lucas_lehmer_rhs(a, p) == comb(p - 1, a) % p**3
    assert lucas_lehmer_rhs_all(p) == [comb(p - 1, a) % p**3 for a in range(1, p)]


def test_wolstenholme():
    for p in primes_by_trial_division(5, 200):
        assert harmonic(p - 1).numerator % (p * p) == 0
        assert harmonic(p - 1, 2).numerator % p == 0


def test_beeger_sum_all_k():
    for p in primes_by_trial_division(3, 150):
        for k in (1, 2, 3):
            assert beeger_sum(p, k) == wilson_quotient(p, k)


def test_euler_maclaurin_small_primes():
    t = bernoulli_table(100)
    for p in primes_by_trial_division(5, 100):
        assert euler_maclaurin_rhs(p, t) == Fraction(qsum_exact(p))
