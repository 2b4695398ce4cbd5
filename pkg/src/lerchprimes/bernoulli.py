"""Exact Bernoulli numbers (B_1 = -1/2) and p-adic Bernoulli data.

Even-index values come from the integer tangent-number triangle, which
needs only small-integer multiplications and additions; the rational
B_2k is recovered as (-1)**(k-1) * 2k * T_k / (4**k * (4**k - 1)).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import NotApplicable, TableTooSmall
from .numcore import (
    PrimePowerModulus,
    Rational,
    Residue,
    int_valuation,
    is_prime,
    powmod,
)
from .padic import PadicLaurent

try:
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover
    _big = int

DEFAULT_P_EXACT = 499


@dataclass(frozen=True)
class BernoulliTable:
    max_index: int
    values: tuple[Fraction, ...]

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError(n)
        if n > self.max_index:
            raise TableTooSmall(f"B_{n} requested, table stops at B_{self.max_index}")
        return self.values[n]

    def __len__(self) -> int:
        return self.max_index + 1

    def covers(self, n: int) -> bool:
        return n <= self.max_index


def _tangent_numbers(count: int) -> list[int]:
    if count < 1:
        return [0]
    t = [_big(0)] * (count + 1)
    t[1] = _big(1)
    for k in range(2, count + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, count + 1):
        for j in range(k, count + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return [int(x) for x in t]


def _build(n_max: int) -> BernoulliTable:
    values = [Fraction(0)] * (n_max + 1)
    values[0] = Fraction(1)
    if n_max >= 1:
        values[1] = Fraction(-1, 2)
    tangent = _tangent_numbers(n_max // 2)
    for k in range(1, n_max // 2 + 1):
        four_k = 1 << (2 * k)
        b = Fraction(2 * k * tangent[k], four_k * (four_k - 1))
        values[2 * k] = b if k % 2 else -b
    return BernoulliTable(n_max, tuple(values))


_lock = threading.Lock()
_cached: BernoulliTable | None = None


def bernoulli_table(n_max: int) -> BernoulliTable:
    """B_0..B_{n_max}, computed once and shared by later smaller requests."""
    global _cached
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    with _lock:
        if _cached is None or _cached.max_index < n_max:
            _cached = _build(n_max)
        table = _cached
    if table.max_index == n_max:
        return table
    return BernoulliTable(n_max, table.values[: n_max + 1])


def bernoulli(n: int) -> Fraction:
    return bernoulli_table(n)[n]


def bernoulli_polynomial(n: int, x: Rational, table: BernoulliTable | None = None) -> Fraction:
    """B_n(x) = sum_j C(n, j) B_j x**(n - j)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    table = table if table is not None else bernoulli_table(n)
    x = Fraction(x)
    return sum(
        (comb(n, j) * table[j] * x ** (n - j) for j in range(n + 1)), Fraction(0)
    )


def w_quantity(p: int, table: BernoulliTable) -> Fraction:
    """B_{p-1} - 1 + 1/p, which is p-integral for every odd prime p."""
    if not table.covers(p - 1):
        raise TableTooSmall(f"need B_{p - 1}, table stops at B_{table.max_index}")
    return table[p - 1] - 1 + Fraction(1, p)


def staudt_clausen_denominator(n: int) -> int:
    """Product of the primes q with (q - 1) | n, for even n >= 2."""
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    out = 1
    d = 1
    while d * d <= n:
        if n % d == 0:
            for e in {d, n // d}:
                if is_prime(e + 1):
                    out *= e + 1
        d += 1
    return out


@dataclass(frozen=True)
class BernoulliPadicEstimate:
    """Bernoulli data reconstructed from the quotient sums of one prime.

    ``w_mod_p2`` is B_{p-1} - 1 + 1/p mod p**2 taken from the Fermat-quotient
    sum; ``b_ratio`` is B_{2p-2}/(2p-2) to absolute precision p**2, solved
    from the mod p**2 evaluation of the Wilson quotient.
    """

    p: int
    w_mod_p2: Residue
    b_ratio: PadicLaurent
    provenance: str = "quotient-derived"

    @property
    def b_low(self) -> PadicLaurent:
        """B_{p-1} = w + 1 - 1/p, known modulo p**2."""
        return PadicLaurent.from_residue(self.w_mod_p2).add(1).sub(Fraction(1, self.p))

    @property
    def b_high(self) -> PadicLaurent:
        """B_{2p-2}, known modulo p**2."""
        return self.b_ratio.mul(2 * self.p - 2)


def bernoulli_padic_estimate(
    p: int, wilson_mod_p2: Residue, qsum_mod_p2: Residue
) -> BernoulliPadicEstimate:
    if p <= 3:
        raise NotApplicable("the quotient-derived estimate needs p > 3")
    for r in (wilson_mod_p2, qsum_mod_p2):
        if r.modulus != PrimePowerModulus(p, 2):
            raise ValueError(f"expected residues mod {p}^2, got {r.modulus}")
    w = PadicLaurent.from_residue(qsum_mod_p2)
    b_low = w.add(1).sub(Fraction(1, p))
    ratio = b_low.div(p - 1)
    b_ratio = (
        PadicLaurent.from_residue(wilson_mod_p2)
        .sub(Fraction(1, p))
        .add(ratio)
        .add(ratio.mul(ratio).mul(Fraction(p, 2)))
    )
    return BernoulliPadicEstimate(p, qsum_mod_p2, b_ratio)


def _omitted_term_bound(n: int, p: int, r: int) -> int:
    # lower bound on v_p of the Faulhaber terms j <= n - 2 at N = p**r:
    # C(n, j) B_j N**t / (t + 1) with t = n - j, and v_p(B_j) >= -1
    best = None
    for t in range(2, min(n + 1, 4 * p + 8) + 1):
        bound = r * t - 1 - int_valuation(t + 1, p)
        best = bound if best is None else min(best, bound)
    return best if best is not None else 10**9


def bernoulli_powersum(n: int, p: int, abs_prec: int) -> PadicLaurent:
    """B_n as a p-adic number known modulo p**abs_prec, via power sums.

    Uses sum_{a < N} a**n = B_n N + (n/2) B_{n-1} N**2 + O(higher terms)
    with N = p**r, choosing r so that the dropped terms vanish mod p**abs_prec.
    Cost is O(p**r) modular exponentiations.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n in (0, 1):
        return PadicLaurent.from_rational(Fraction(1) if n == 0 else Fraction(-1, 2), p, abs_prec)
    if n % 2:
        return PadicLaurent.zero(p, abs_prec)
    r = 1
    while _omitted_term_bound(n, p, r) < abs_prec:
        r += 1
    big_n = p**r
    mod = p ** (r + abs_prec)
    s = 0
    for a in range(1, big_n):
        if a % p:
            s += powmod(a, n, mod)
        elif n >= r + abs_prec:
            continue  # a divisible by p: a**n vanishes mod p**(r + abs_prec)
        else:
            s += powmod(a, n, mod)
    value = PadicLaurent._normalize(p, -r, s % mod, abs_prec)
    if n == 2:
        # (n/2) B_1 N**2 = -N**2 / 2
        value = value.add(Fraction(big_n, 2))
    return value
