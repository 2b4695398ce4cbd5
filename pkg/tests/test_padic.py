from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lerchprimes.errors import InsufficientPrecision, PoleTooDeep
from lerchprimes.numcore import rat_valuation
from lerchprimes.padic import PadicLaurent


def test_cancellation_gives_zero():
    p = 7
    a = PadicLaurent.from_rational(Fraction(1, p), p, 4)
    z = a + PadicLaurent.from_rational(Fraction(-1, p), p, 4)
    assert z.is_zero
    assert z.abs_prec == 3


def test_from_rational_example():
    x = PadicLaurent.from_rational(Fraction(-5, 6), 5, 2)
    assert x.valuation == 1
    assert x.reduce(2) == 20


def test_valuation_additivity():
    p = 11
    a = PadicLaurent(p, 1, 3, 4)
    b = PadicLaurent(p, 1, 5, 4)
    assert (a * b).valuation == 2
    assert (a * b).unit == 15


def test_inverse_and_division():
    p = 5
    x = PadicLaurent.from_rational(Fraction(10, 3), p, 6)
    y = x.inv()
    assert y.valuation == -1
    assert (x * y).congruent(1, 5)
    with pytest.raises(ZeroDivisionError):
        PadicLaurent.zero(p, 3).inv()


def test_reduce_contract():
    p = 5
    pole = PadicLaurent.from_rational(Fraction(1, 5), p, 3)
    with pytest.raises(InsufficientPrecision):
        pole.reduce(1)
    short = PadicLaurent.from_rational(Fraction(2, 3), p, 1)
    assert short.reduce(1) == 4  # 2/3 = 2 * 2 = 4 mod 5
    with pytest.raises(InsufficientPrecision):
        short.reduce(2)


def test_pole_depth_limit():
    p = 3
    x = PadicLaurent.from_rational(Fraction(1, 9), p, 2)
    with pytest.raises(PoleTooDeep):
        x * PadicLaurent.from_rational(Fraction(1, 3), p, 2)


def test_addition_precision_degrades():
    p = 7
    a = PadicLaurent(p, -1, 2, 3)  # known modulo p^2
    b = PadicLaurent(p, 0, 1, 5)  # known modulo p^5
    s = a + b
    assert s.abs_prec == 2


nonzero = st.builds(
    Fraction,
    st.integers(min_value=1, max_value=10**8) | st.integers(min_value=-10**8, max_value=-1),
    st.integers(min_value=1, max_value=10**8),
)


@given(st.sampled_from([3, 5, 7, 13, 101]), nonzero, nonzero)
def test_ring_ops_match_exact_rationals(p, x, y):
    prec = 6
    if rat_valuation(x, p) < -1 or rat_valuation(y, p) < -1:
        return
    if abs(rat_valuation(x, p)) > 3 or abs(rat_valuation(y, p)) > 3:
        return
    a = PadicLaurent.from_rational(x, p, prec)
    b = PadicLaurent.from_rational(y, p, prec)
    for got, want in ((a + b, x + y), (a - b, x - y), (a * b, x * y), (a / b, x / y)):
        if want == 0:
            assert got.is_zero
            continue
        assert got.congruent(PadicLaurent.from_rational(want, p, prec + 6), got.abs_prec)
