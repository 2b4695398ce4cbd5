"""Fermat, Wilson and Lerch quotients, harmonic numbers and the sums built on them.

Fermat quotients to precision p**k are taken from a**(p-1) mod p**(k+1)
followed by exact division by p; no rational arithmetic is involved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .bernoulli import BernoulliTable
from .errors import NonWilsonIntegerDivision, NotApplicable, OutOfRange
from .numcore import PrimePowerModulus, Residue, powmod, rat_residue

MAX_QUOTIENT_EXPONENT = 3


class Weight(str, enum.Enum):
    UNIT = "unit"
    H = "H"
    H_SQUARED = "H^2"
    H2 = "H_2"


def _modulus(p: int, k: int) -> PrimePowerModulus:
    if not 1 <= k <= MAX_QUOTIENT_EXPONENT:
        raise OutOfRange(f"quotient precision k must be in 1..{MAX_QUOTIENT_EXPONENT}")
    return PrimePowerModulus(p, k)


def fermat_quotient(a: int, p: int, k: int = 1) -> Residue:
    m = _modulus(p, k)
    if not 1 <= a <= p - 1:
        raise OutOfRange(f"a={a} outside [1, {p - 1}]")
    r = powmod(a, p - 1, m.pk * p)
    return Residue((r - 1) // p, m)


def fermat_quotients(p: int, k: int = 1) -> list[int]:
    """[q_p(1), ..., q_p(p-1)] as least residues mod p**k."""
    m = _modulus(p, k)
    big = m.pk * p
    e = p - 1
    return [(powmod(a, e, big) - 1) // p for a in range(1, p)]


def _power_sum(p: int, mod: int) -> int:
    e = p - 1
    s = 0
    for a in range(1, p):
        s += powmod(a, e, mod)
    return s


def fermat_quotient_sum(p: int, k: int = 1) -> Residue:
    """Sum of q_p(a) over 1 <= a <= p-1, mod p**k."""
    m = _modulus(p, k)
    s = _power_sum(p, m.pk * p) - (p - 1)
    return Residue(s // p, m)


def _wilson_raw(n: int, k: int) -> int:
    # ((n-1)! + 1) / n mod n**k, with the divisibility used as a primality trap
    mod = n ** (k + 1)
    acc = 1
    for i in range(2, n):
        acc = acc * i % mod
    acc += 1
    if acc % n:
        raise NonWilsonIntegerDivision(f"({n}-1)! + 1 is not divisible by {n}")
    return acc // n


def wilson_quotient(p: int, k: int = 1) -> Residue:
    if not 1 <= k <= MAX_QUOTIENT_EXPONENT:
        raise OutOfRange(f"quotient precision k must be in 1..{MAX_QUOTIENT_EXPONENT}")
    if p < 3:
        raise NotApplicable("wilson_quotient works with odd primes; W_2 = 1")
    w = _wilson_raw(p, k)
    return Residue(w, _modulus(p, k))


def lerch_from_residues(p: int, qsum_mod_p2: int, wilson_mod_p2: int) -> int:
    diff = (qsum_mod_p2 - wilson_mod_p2) % (p * p)
    if diff % p:
        raise ArithmeticError(f"Lerch's congruence fails at {p}; is it prime?")
    return diff // p


def lerch_residue(p: int) -> Residue:
    """ell_p mod p; zero exactly for Lerch primes."""
    if p == 2:
        raise NotApplicable("the Lerch quotient is defined for p > 2")
    q = fermat_quotient_sum(p, 2)
    w = wilson_quotient(p, 2)
    return Residue(lerch_from_residues(p, q.value, w.value), PrimePowerModulus(p, 1))


@dataclass(frozen=True)
class QuotientBundle:
    p: int
    k: int
    qsum: Residue
    wilson: Residue
    lerch_residue: Residue


def quotient_bundle(p: int, k: int = 2) -> QuotientBundle:
    if k < 2:
        raise OutOfRange("the bundle needs k >= 2 to determine ell_p mod p")
    q = fermat_quotient_sum(p, k)
    w = wilson_quotient(p, k)
    ell = lerch_from_residues(p, q.value % (p * p), w.value % (p * p))
    return QuotientBundle(p, k, q, w, Residue(ell, PrimePowerModulus(p, 1)))


def harmonic(a: int, r: int = 1) -> Fraction:
    """H_a (r=1) or H_{a,2} (r=2); H_0 = 0."""
    if a < 0:
        raise OutOfRange("a must be >= 0")
    if r not in (1, 2):
        raise OutOfRange("only orders 1 and 2 are supported")
    return sum((Fraction(1, i**r) for i in range(1, a + 1)), Fraction(0))


def harmonic_residues(p: int, k: int) -> tuple[list[int], list[int]]:
    """H_a and H_{a,2} mod p**k for a = 1..p-1, built incrementally."""
    pk = p**k
    h1, h2 = [], []
    s1 = s2 = 0
    for a in range(1, p):
        inv = pow(a, -1, pk)
        s1 = (s1 + inv) % pk
        s2 = (s2 + inv * inv) % pk
        h1.append(s1)
        h2.append(s2)
    return h1, h2


def weighted_qsums(p: int, k: int) -> dict[Weight, Residue]:
    """All four weighted Fermat-quotient sums mod p**k in one pass."""
    m = _modulus(p, k)
    pk = m.pk
    q = fermat_quotients(p, k)
    h1, h2 = harmonic_residues(p, k)
    acc = {w: 0 for w in Weight}
    for qa, ha, ha2 in zip(q, h1, h2):
        acc[Weight.UNIT] += qa
        acc[Weight.H] += ha * qa
        acc[Weight.H_SQUARED] += ha * ha % pk * qa
        acc[Weight.H2] += ha2 * qa
    return {w: Residue(v, m) for w, v in acc.items()}


def weighted_qsum(p: int, weight: Weight | str, k: int = 1) -> Residue:
    """Sum over a of weight(a) * q_p(a) mod p**k."""
    return weighted_qsums(p, k)[Weight(weight)]


def binomial_pm1(a: int, p: int, k: int = 1) -> Residue:
    """C(p-1, a) mod p**k by the multiplicative formula."""
    m = _modulus(p, k)
    if not 0 <= a <= p - 1:
        raise OutOfRange(f"a={a} outside [0, {p - 1}]")
    num = den = 1
    for i in range(1, a + 1):
        num = num * (p - i) % m.pk
        den = den * i % m.pk
    return Residue(num * pow(den, -1, m.pk), m)


def binomials_pm1(p: int, k: int) -> list[int]:
    """C(p-1, a) mod p**k for a = 0..p-1."""
    pk = p**k
    out = [1]
    c = 1
    for a in range(1, p):
        c = c * (p - a) % pk * pow(a, -1, pk) % pk
        out.append(c)
    return out


def lucas_lehmer_rhs(a: int, p: int) -> Residue:
    """(-1)**a {1 - p H_a + (p**2/2)(H_a**2 - H_{a,2})} mod p**3, exactly."""
    if not 1 <= a <= p - 1:
        raise OutOfRange(f"a={a} outside [1, {p - 1}]")
    h1, h2 = harmonic(a, 1), harmonic(a, 2)
    value = 1 - p * h1 + Fraction(p * p, 2) * (h1 * h1 - h2)
    return rat_residue((-1) ** a * value, PrimePowerModulus(p, 3))


def lucas_lehmer_rhs_all(p: int) -> list[int]:
    """The same right-hand side for a = 1..p-1 via incremental residues mod p**3."""
    pk = p**3
    half = pow(2, -1, pk)
    h1, h2 = harmonic_residues(p, 3)
    out = []
    for a, (x, y) in enumerate(zip(h1, h2), start=1):
        v = (1 - p * x + p * p * half * (x * x - y)) % pk
        out.append(v if a % 2 == 0 else -v % pk)
    return out


def beeger_sum(p: int, k: int = 1) -> Residue:
    """Sum over a of (-1)**a C(p-1, a) q_p(a) mod p**k (equal to W_p)."""
    m = _modulus(p, k)
    q = fermat_quotients(p, k)
    c = binomials_pm1(p, k)
    s = 0
    for a in range(1, p):
        term = c[a] * q[a - 1]
        s += term if a % 2 == 0 else -term
    return Residue(s, m)


def fermat_quotient_sum_exact(p: int) -> int:
    return sum((a ** (p - 1) - 1) // p for a in range(1, p))


def wilson_quotient_exact(n: int) -> int:
    f = factorial(n - 1) + 1
    if f % n:
        raise NonWilsonIntegerDivision(f"({n}-1)! + 1 is not divisible by {n}")
    return f // n


def beeger_sum_exact(p: int) -> int:
    return sum((-1) ** a * comb(p - 1, a) * ((a ** (p - 1) - 1) // p) for a in range(1, p))


def euler_maclaurin_rhs(p: int, table: BernoulliTable) -> Fraction:
    """-1 + 1/p + sum_{j=1}^{p} C(p, j) p**(j-2) B_{p-j}, exactly."""
    if p <= 3:
        raise NotApplicable("the Euler-MacLaurin evaluation is stated for p > 3")
    table[p - 1]  # raises TableTooSmall early
    total = Fraction(-1) + Fraction(1, p)
    for j in range(1, p + 1):
        b = table[p - j]
        if b:
            total += comb(p, j) * Fraction(p) ** (j - 2) * b
    return total
