"""Residues modulo odd prime powers, exact rationals and p-adic valuations.

Rationals are plain :class:`fractions.Fraction` values, which already keep
numerator and denominator coprime with a positive denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import (
    InvalidModulus,
    ModulusMismatch,
    NegativeValuation,
    NotInvertible,
)

try:  # optional fast path; results are identical to the pure-int path
    import gmpy2

    def powmod(base: int, exp: int, mod: int) -> int:
        return int(gmpy2.powmod(base, exp, mod))

    def _remove(n: int, p: int) -> tuple[int, int]:
        y, c = gmpy2.remove(n, p)
        return int(y), int(c)

except ImportError:  # pragma: no cover
    gmpy2 = None

    def powmod(base: int, exp: int, mod: int) -> int:
        return pow(base, exp, mod)

    def _remove(n: int, p: int) -> tuple[int, int]:
        c = 0
        while n % p == 0:
            n //= p
            c += 1
        return n, c


Rational = Union[int, Fraction]

INF = math.inf
MAX_EXPONENT = 4

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePowerModulus:
    """The modulus p**k for an odd prime p and 1 <= k <= 4."""

    p: int
    k: int = 1
    pk: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 3 or not is_prime(self.p):
            raise InvalidModulus(f"p must be an odd prime, got {self.p!r}")
        if not 1 <= self.k <= MAX_EXPONENT:
            raise InvalidModulus(f"k must be in 1..{MAX_EXPONENT}, got {self.k!r}")
        object.__setattr__(self, "pk", self.p**self.k)

    def __int__(self) -> int:
        return self.pk

    def __str__(self) -> str:
        return f"{self.p}^{self.k}" if self.k > 1 else str(self.p)


@dataclass(frozen=True, eq=False)
class Residue:
    """A least nonnegative residue carrying its modulus.

    Comparing against a plain ``int`` reduces the integer first, so
    ``Residue(-1, m) == m.pk - 1`` and ``Residue(-1, m) == -1`` both hold.
    """

    value: int
    modulus: PrimePowerModulus

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.modulus.pk)

    def _other(self, other: object) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"{self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Residue | int) -> Residue:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Residue | int) -> Residue:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(self.value - o, self.modulus)

    def __rsub__(self, other: int) -> Residue:
        return Residue(other - self.value, self.modulus)

    def __mul__(self, other: Residue | int) -> Residue:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> Residue:
        return Residue(-self.value, self.modulus)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus.pk
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Residue({self.value} mod {self.modulus})"

    def inverse(self) -> Residue:
        return mod_inv(self.value, self.modulus)

    def reduce(self, k: int) -> Residue:
        """Project to the smaller modulus p**k."""
        if k > self.modulus.k:
            raise InvalidModulus(f"cannot lift {self!r} to exponent {k}")
        return Residue(self.value, PrimePowerModulus(self.modulus.p, k))


def mod_pow(base: int, exp: int, m: PrimePowerModulus) -> Residue:
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return Residue(powmod(base % m.pk, exp, m.pk), m)


def mod_inv(x: int, m: PrimePowerModulus) -> Residue:
    if x % m.p == 0:
        raise NotInvertible(f"{x} is divisible by {m.p}")
    return Residue(pow(x, -1, m.pk), m)


def factorial_mod(n: int, m: PrimePowerModulus) -> Residue:
    if n < 0:
        raise ValueError("n must be nonnegative")
    pk = m.pk
    acc = 1
    for i in range(2, n + 1):
        acc = acc * i % pk
    return Residue(acc, m)


def int_valuation(n: int, p: int) -> float | int:
    if n == 0:
        return INF
    return _remove(abs(n), p)[1]


def rat_valuation(x: Rational, p: int) -> float | int:
    """v_p(x), or ``INF`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def rat_residue(x: Rational, m: PrimePowerModulus) -> Residue:
    x = Fraction(x)
    if x.denominator % m.p == 0:
        raise NegativeValuation(f"{x} has a pole at {m.p}")
    return Residue(x.numerator * pow(x.denominator, -1, m.pk), m)


def rat_congruent(x: Rational, y: Rational, p: int, k: int) -> bool:
    """x == y (mod p**k) in the sense v_p(x - y) >= k."""
    return rat_valuation(Fraction(x) - Fraction(y), p) >= k


def pole_residue(x: Rational, p: int, k: int) -> tuple[int, int]:
    """Write x = N / p**e (e >= 0 minimal) and return (e, N mod p**(k + e)).

    With e == 0 this is ordinary reduction mod p**k; otherwise the pair
    pins down x modulo p**k in the rational sense.
    """
    x = Fraction(x)
    if x == 0:
        return 0, 0
    den, e = _remove(x.denominator, p)
    mod = p ** (k + e)
    return e, x.numerator * pow(den, -1, mod) % mod
