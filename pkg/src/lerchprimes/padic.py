"""Finite-precision p-adic numbers that may carry a pole of order <= 2.

A nonzero value is ``p**valuation * unit`` where ``unit`` is known modulo
``p**prec`` and is coprime to p.  The value is therefore known modulo
``p**(valuation + prec)``, its absolute precision.  A value that is zero
to the available precision is stored with ``unit == 0``, ``prec == 0`` and
``valuation`` equal to that absolute precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InsufficientPrecision, ModulusMismatch, PoleTooDeep
from .numcore import INF, PrimePowerModulus, Rational, Residue, _remove, rat_valuation

MIN_VALUATION = -2

Operand = Union["PadicLaurent", int, Fraction]


@dataclass(frozen=True)
class PadicLaurent:
    p: int
    valuation: int
    unit: int
    prec: int

    def __post_init__(self) -> None:
        if self.unit == 0:
            if self.prec != 0:
                raise ValueError("zero must be stored with prec == 0")
            return
        if self.prec < 1:
            raise ValueError("nonzero values need prec >= 1")
        if self.unit % self.p == 0:
            raise ValueError("unit part must be coprime to p")
        if self.valuation < MIN_VALUATION:
            raise PoleTooDeep(f"valuation {self.valuation} < {MIN_VALUATION}")
        object.__setattr__(self, "unit", self.unit % self.p**self.prec)

    # construction

    @classmethod
    def zero(cls, p: int, abs_prec: int) -> PadicLaurent:
        return cls(p, abs_prec, 0, 0)

    @classmethod
    def from_rational(cls, x: Rational, p: int, prec: int) -> PadicLaurent:
        """Expand an exact rational keeping ``prec`` unit digits.

        Zero is returned as the zero known modulo ``p**prec``.
        """
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, prec)
        num, vn = _remove(x.numerator, p)
        den, vd = _remove(x.denominator, p)
        mod = p**prec
        return cls(p, vn - vd, num * pow(den, -1, mod) % mod, prec)

    @classmethod
    def from_residue(cls, r: Residue) -> PadicLaurent:
        """Lift a residue mod p**k to a p-adic integer known modulo p**k."""
        p, k = r.modulus.p, r.modulus.k
        return cls._normalize(p, 0, r.value, k)

    @classmethod
    def _normalize(cls, p: int, v: int, x: int, abs_prec: int) -> PadicLaurent:
        # x * p**v known modulo p**abs_prec
        width = abs_prec - v
        if width <= 0:
            return cls.zero(p, abs_prec)
        x %= p**width
        if x == 0:
            return cls.zero(p, abs_prec)
        u, t = _remove(x, p)
        return cls(p, v + t, u, width - t)

    # queries

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def abs_prec(self) -> int:
        return self.valuation + self.prec

    @property
    def order(self) -> float | int:
        """Valuation, or INF for a (precision-limited) zero."""
        return INF if self.is_zero else self.valuation

    def _coerce(self, other: Operand, relative: bool) -> PadicLaurent:
        if isinstance(other, PadicLaurent):
            if other.p != self.p:
                raise ModulusMismatch(f"p={self.p} vs p={other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            v = rat_valuation(other, self.p)
            if v == INF:
                return PadicLaurent.zero(self.p, self.abs_prec if not relative else 10**6)
            # exact constants get enough digits not to limit the result
            need = max(self.prec, self.abs_prec - int(v), 1)
            return PadicLaurent.from_rational(other, self.p, need)
        return NotImplemented  # type: ignore[return-value]

    # arithmetic

    def add(self, other: Operand) -> PadicLaurent:
        b = self._coerce(other, relative=False)
        abs_prec = min(self.abs_prec, b.abs_prec)
        terms = [t for t in (self, b) if not t.is_zero]
        if not terms:
            return PadicLaurent.zero(self.p, abs_prec)
        v = min(t.valuation for t in terms)
        x = sum(t.unit * self.p ** (t.valuation - v) for t in terms)
        return PadicLaurent._normalize(self.p, v, x, abs_prec)

    def neg(self) -> PadicLaurent:
        if self.is_zero:
            return self
        return PadicLaurent(self.p, self.valuation, -self.unit, self.prec)

    def sub(self, other: Operand) -> PadicLaurent:
        b = self._coerce(other, relative=False)
        return self.add(b.neg())

    def mul(self, other: Operand) -> PadicLaurent:
        b = self._coerce(other, relative=True)
        if self.is_zero or b.is_zero:
            # zero known to p**A times something of valuation v is zero to p**(A+v)
            if self.is_zero and b.is_zero:
                return PadicLaurent.zero(self.p, self.valuation + b.valuation)
            z, nz = (self, b) if self.is_zero else (b, self)
            return PadicLaurent.zero(self.p, z.valuation + nz.valuation)
        prec = min(self.prec, b.prec)
        return PadicLaurent(
            self.p, self.valuation + b.valuation, self.unit * b.unit, prec
        )

    def inv(self) -> PadicLaurent:
        if self.is_zero:
            raise ZeroDivisionError("inverse of a p-adic zero")
        mod = self.p**self.prec
        return PadicLaurent(self.p, -self.valuation, pow(self.unit, -1, mod), self.prec)

    def div(self, other: Operand) -> PadicLaurent:
        return self.mul(self._coerce(other, relative=True).inv())

    def reduce(self, k: int) -> Residue:
        """The residue mod p**k, provided the value is p-integral to that precision."""
        m = PrimePowerModulus(self.p, k)
        if self.abs_prec < k:
            raise InsufficientPrecision(
                f"value known only modulo {self.p}^{self.abs_prec}, need {self.p}^{k}"
            )
        if self.is_zero:
            return Residue(0, m)
        if self.valuation < 0:
            raise InsufficientPrecision(f"value has a pole of order {-self.valuation}")
        return Residue(self.unit * self.p**self.valuation, m)

    def congruent(self, other: Operand, k: int) -> bool:
        """Whether v_p(self - other) >= k; raises if precision cannot decide."""
        d = self.sub(other)
        if not d.is_zero:
            return d.valuation >= k
        if d.abs_prec >= k:
            return True
        raise InsufficientPrecision(
            f"difference known only modulo {self.p}^{d.abs_prec}, need {self.p}^{k}"
        )

    def pole_residue(self, k: int) -> tuple[int, int]:
        """(e, N mod p**(k + e)) with value = N / p**e, mirroring numcore.pole_residue."""
        e = max(0, -self.valuation) if not self.is_zero else 0
        if self.abs_prec < k:
            raise InsufficientPrecision(f"need precision {k}, have {self.abs_prec}")
        if self.is_zero:
            return 0, 0
        mod = self.p ** (k + e)
        return e, self.unit * self.p ** (self.valuation + e) % mod

    __add__ = add
    __radd__ = add
    __sub__ = sub
    __mul__ = mul
    __rmul__ = mul
    __truediv__ = div
    __neg__ = neg

    def __rsub__(self, other: Operand) -> PadicLaurent:
        return self.neg().add(other)

    def __rtruediv__(self, other: Operand) -> PadicLaurent:
        return self.inv().mul(other)

    def __repr__(self) -> str:
        if self.is_zero:
            return f"PadicLaurent(0 + O({self.p}^{self.valuation}))"
        return (
            f"PadicLaurent({self.p}^{self.valuation} * {self.unit} + O({self.p}^{self.abs_prec}))"
        )
