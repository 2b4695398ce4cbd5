"""Registry of the Lerch/Wilson congruences and identities, evaluated per prime.

Every entry is checked by computing both sides as exact rationals or as
p-adic values and testing v_p(lhs - rhs) >= k.  Integer residues (W_p,
quotient sums) enter as their least representatives mod p**3, which is
enough for every modulus in the registry.

Methods:

* ``direct``: quotient-based residue arithmetic only.
* ``exact-bernoulli``: exact rational Bernoulli numbers from the table.
* ``padic-estimate``: Bernoulli data reconstructed from W_p and the
  Fermat-quotient sum.  Such verdicts are algebraic consistency checks
  on the same data, never independent evidence.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Union

from . import quotients as qt
from .bernoulli import (
    DEFAULT_P_EXACT,
    bernoulli_padic_estimate,
    bernoulli_powersum,
    bernoulli_table,
)
from .errors import InsufficientPrecision, LerchError, MethodUnavailable, NotApplicable
from .numcore import PrimePowerModulus, Residue, is_prime, pole_residue, rat_valuation
from .padic import PadicLaurent
from .quotients import Weight

Value = Union[int, Fraction, PadicLaurent]

SAME_DATA = "derived-from-same-data"


class Method(str, enum.Enum):
    AUTO = "auto"
    DIRECT = "direct"
    EXACT = "exact-bernoulli"
    PADIC = "padic-estimate"


D, E, P = Method.DIRECT, Method.EXACT, Method.PADIC


@dataclass(frozen=True)
class CongruenceId:
    id: str
    modulus_exponent: int | None  # None: exact identity
    min_p: int
    kind: str
    statement: str
    methods: tuple[Method, ...]
    bernoulli_index: str | None = None  # "low" needs B_{p-1}, "high" also B_{2p-2}


_ENTRIES = [
    CongruenceId("C01", 1, 3, "congruence", "W_p = B_{p-1} - 1 + 1/p (mod p)", (E, P), "low"),
    CongruenceId("C02", 1, 3, "congruence", "B_{p-1} - 1 + 1/p = 0 (mod p)  [Wilson prime]", (E, P), "low"),
    CongruenceId("C03", 1, 3, "congruence",
                 "(B_{2p-2} - 1 + 1/p)/(2p-2) = (B_{p-1} - 1 + 1/p)/(p-1) (mod p)", (E, P), "high"),
    CongruenceId("C03g", 1, 3, "congruence",
                 "(B_{m(p-1)} - 1 + 1/p)/(m(p-1)) = (B_{p-1} - 1 + 1/p)/(p-1) (mod p)", (E, D), "general"),
    CongruenceId("C04", 1, 3, "congruence", "W_p = B_{2p-2} - B_{p-1} (mod p)", (E, P), "high"),
    CongruenceId("C05", 1, 3, "congruence", "B_{2p-2} = B_{p-1} (mod p)  [Wilson prime]", (E, P), "high"),
    CongruenceId("C06", 1, 3, "congruence", "sum q_p(a) = W_p (mod p)", (D,)),
    CongruenceId("C07", 2, 3, "congruence", "sum q_p(a) = W_p (mod p^2)  [Lerch prime]", (D,)),
    CongruenceId("C08", 2, 5, "congruence", "sum q_p(a) = B_{p-1} - 1 + 1/p (mod p^2)", (E, P), "low"),
    CongruenceId("C09", 2, 3, "congruence", "W_p = B_{p-1} - 1 + 1/p (mod p^2)  [Lerch prime]", (E, P), "low"),
    CongruenceId("C10", None, 5, "exact-identity",
                 "sum q_p(a) = -1 + 1/p + sum_{j=1}^{p} C(p,j) p^{j-2} B_{p-j}", (E,), "low"),
    CongruenceId("C11", 3, 3, "exact-identity", "W_p = sum (-1)^a C(p-1,a) q_p(a)", (D,)),
    CongruenceId("C12", 1, 3, "congruence", "C(p-1,a) = (-1)^a (mod p), 1 <= a <= p-1", (D,)),
    CongruenceId("C13", 3, 3, "congruence",
                 "C(p-1,a) = (-1)^a {1 - p H_a + (p^2/2) H_a^2 - (p^2/2) H_{a,2}} (mod p^3)", (D,)),
    CongruenceId("C14", 3, 3, "congruence",
                 "W_p = sum q - p sum H_a q + (p^2/2) sum H_a^2 q - (p^2/2) sum H_{a,2} q (mod p^3)", (D,)),
    CongruenceId("C15", 2, 3, "congruence", "C(p-1,a) = (-1)^a (1 - p H_a) (mod p^2)", (D,)),
    CongruenceId("C16", 2, 3, "congruence", "W_p = sum q - p sum H_a q (mod p^2)", (D,)),
    CongruenceId("C17", 2, 5, "congruence",
                 "W_p = 1/p - B_{p-1}/(p-1) + B_{2p-2}/(2p-2) - (p/2)(B_{p-1}/(p-1))^2 (mod p^2)",
                 (E, P), "high"),
    CongruenceId("C18", 1, 3, "congruence", "sum H_a q_p(a) = 0 (mod p)  [Lerch prime]", (D,)),
    CongruenceId("C19", 1, 3, "congruence",
                 "W_p = B_{2p-2}/(2p) - B_{p-1}^2/(2p-2) (mod p)  [Lerch prime]", (E, P), "high"),
    CongruenceId("C20", 2, 3, "congruence", "B_{2p-2} = B_{p-1} (mod p^2)  [Wilson-Lerch]", (E, P), "high"),
]

REGISTRY: dict[str, CongruenceId] = {e.id: e for e in _ENTRIES}


@dataclass(frozen=True)
class CongruenceCheckRequest:
    id: str
    p: int
    m: int | None = None
    method: Method = Method.AUTO

    def __post_init__(self) -> None:
        if self.id not in REGISTRY:
            raise KeyError(f"unknown registry id {self.id!r}")
        if self.m is not None and self.m < 1:
            raise ValueError("m must be a positive integer")
        object.__setattr__(self, "method", Method(self.method))


@dataclass
class CongruenceResult:
    id: str
    p: int
    applicable: bool
    holds: bool | None
    lhs: int | str | None
    rhs: int | str | None
    modulus: int | None
    method_used: str | None
    note: str = ""
    m: int | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------- evaluation


@dataclass
class _Bern:
    """Bernoulli-side ingredients in whichever representation a method yields."""

    low: Value  # B_{p-1}
    high: Value | None  # B_{2p-2}

    def w(self, p: int) -> Value:
        return self.low - 1 + Fraction(1, p)


def _index_cap(p_exact: int) -> int:
    return 2 * p_exact - 2


class PrimeContext:
    """Shared per-prime data for a batch of registry checks."""

    def __init__(self, p: int, p_exact: int = DEFAULT_P_EXACT) -> None:
        PrimePowerModulus(p, 1)  # validates an odd prime
        self.p = p
        self.p_exact = p_exact

    @cached_property
    def wilson3(self) -> int:
        return qt.wilson_quotient(self.p, 3).value

    @cached_property
    def qsum3(self) -> int:
        return qt.fermat_quotient_sum(self.p, 3).value

    @cached_property
    def weighted2(self) -> dict[Weight, int]:
        return {w: r.value for w, r in qt.weighted_qsums(self.p, 2).items()}

    def exact_feasible(self, index: int) -> bool:
        return index <= _index_cap(self.p_exact)

    def table(self, index: int):
        if not self.exact_feasible(index):
            raise MethodUnavailable(
                f"B_{index} exceeds the exact range (P_exact={self.p_exact})"
            )
        # one table for the whole exact range, so ascending scans never rebuild it
        return bernoulli_table(_index_cap(self.p_exact))

    @cached_property
    def estimate(self):
        p = self.p
        m2 = PrimePowerModulus(p, 2)
        return bernoulli_padic_estimate(
            p, Residue(self.wilson3, m2), Residue(self.qsum3, m2)
        )

    def bern(self, method: Method, need_high: bool) -> _Bern:
        p = self.p
        if method is Method.EXACT:
            t = self.table(2 * p - 2 if need_high else p - 1)
            return _Bern(t[p - 1], t[2 * p - 2] if need_high else None)
        if method is Method.PADIC:
            if p <= 3:
                raise MethodUnavailable("the quotient-derived estimate needs p > 3")
            est = self.estimate
            return _Bern(est.b_low, est.b_high)
        raise MethodUnavailable(str(method))


def _holds(lhs: Value, rhs: Value, p: int, k: int) -> bool:
    if isinstance(lhs, PadicLaurent):
        return lhs.congruent(rhs, k)
    if isinstance(rhs, PadicLaurent):
        return rhs.congruent(lhs, k)
    return rat_valuation(Fraction(lhs) - Fraction(rhs), p) >= k


def evidence(x: Value, p: int, k: int | None) -> int | str:
    """A side reported at modulus p**k: a residue, or 'N/p^e' when it has a pole."""
    if k is None:
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    try:
        if isinstance(x, PadicLaurent):
            e, n = x.pole_residue(k)
        else:
            e, n = pole_residue(x, p, k)
    except InsufficientPrecision:
        return repr(x)
    if e == 0:
        return n
    return f"{n}/{p}" if e == 1 else f"{n}/{p}^{e}"


Sides = tuple[Value, Value]
Evaluator = Callable[[PrimeContext, Method, int], Sides]


def _c01(c: PrimeContext, meth: Method, m: int) -> Sides:
    return c.wilson3, c.bern(meth, False).w(c.p)


def _c02(c, meth, m):
    return c.bern(meth, False).w(c.p), 0


def _c03(c, meth, m):
    p = c.p
    b = c.bern(meth, True)
    return (b.high - 1 + Fraction(1, p)) / (2 * p - 2), b.w(p) / (p - 1)


def _c03g(c, meth, m):
    p = c.p
    n = m * (p - 1)
    if meth is Method.EXACT:
        t = c.table(n)
        high, low = t[n], t[p - 1]
    else:
        # (B_n - 1 + 1/p)/n mod p needs B_n to absolute precision 1 + v_p(n)
        need = 1 + int(rat_valuation(n, p))
        high = bernoulli_powersum(n, p, need)
        low = bernoulli_powersum(p - 1, p, 1)
    return (high - 1 + Fraction(1, p)) / n, (low - 1 + Fraction(1, p)) / (p - 1)


def _c04(c, meth, m):
    b = c.bern(meth, True)
    return c.wilson3, b.high - b.low


def _c05(c, meth, m):
    b = c.bern(meth, True)
    return b.high, b.low


def _c06(c, meth, m):
    return c.qsum3, c.wilson3


_c07 = _c06


def _c08(c, meth, m):
    return c.qsum3, c.bern(meth, False).w(c.p)


def _c09(c, meth, m):
    return c.wilson3, c.bern(meth, False).w(c.p)


def _c10(c, meth, m):
    t = c.table(c.p - 1)
    return qt.fermat_quotient_sum_exact(c.p), qt.euler_maclaurin_rhs(c.p, t)


def _c11(c, meth, m):
    return qt.beeger_sum(c.p, 3).value, c.wilson3


def _c14(c, meth, m):
    p = c.p
    s = c.weighted2
    half_p2 = Fraction(p * p, 2)
    rhs = (
        c.qsum3
        - p * s[Weight.H]
        + half_p2 * s[Weight.H_SQUARED]
        - half_p2 * s[Weight.H2]
    )
    return c.wilson3, rhs


def _c16(c, meth, m):
    return c.wilson3, c.qsum3 - c.p * c.weighted2[Weight.H]


def _c17(c, meth, m):
    p = c.p
    b = c.bern(meth, True)
    r = b.low / (p - 1)
    rhs = Fraction(1, p) - r + b.high / (2 * p - 2) - r * r * Fraction(p, 2)
    return c.wilson3, rhs


def _c18(c, meth, m):
    return c.weighted2[Weight.H], 0


def _c19(c, meth, m):
    p = c.p
    b = c.bern(meth, True)
    return c.wilson3, b.high / (2 * p) - b.low * b.low / (2 * p - 2)


def _c20(c, meth, m):
    b = c.bern(meth, True)
    return b.high, b.low


_EVALUATORS: dict[str, Evaluator] = {
    "C01": _c01, "C02": _c02, "C03": _c03, "C03g": _c03g, "C04": _c04,
    "C05": _c05, "C06": _c06, "C07": _c07, "C08": _c08, "C09": _c09,
    "C10": _c10, "C11": _c11, "C14": _c14, "C16": _c16, "C17": _c17,
    "C18": _c18, "C19": _c19, "C20": _c20,
}


def _per_a(c: PrimeContext, entry_id: str) -> tuple[bool, int, int, int]:
    """Binomial congruences quantified over a; returns (holds, a, lhs, rhs) at the witness a."""
    p = c.p
    if entry_id == "C12":
        k = 1
        rhs = [1 if a % 2 == 0 else p - 1 for a in range(1, p)]
    elif entry_id == "C13":
        k = 3
        rhs = qt.lucas_lehmer_rhs_all(p)
    else:
        k = 2
        pk = p * p
        h1, _ = qt.harmonic_residues(p, 2)
        rhs = [((1 - p * h) if a % 2 == 0 else -(1 - p * h)) % pk for a, h in enumerate(h1, 1)]
    lhs = qt.binomials_pm1(p, k)[1:]
    for a, (x, y) in enumerate(zip(lhs, rhs), start=1):
        if x != y:
            return False, a, x, y
    return True, p - 1, lhs[-1], rhs[-1]


def _index_needed(entry: CongruenceId, p: int, m: int) -> int:
    if entry.bernoulli_index == "high":
        return 2 * p - 2
    if entry.bernoulli_index == "general":
        return m * (p - 1)
    return p - 1


def resolve_method(entry: CongruenceId, ctx: PrimeContext, requested: Method, m: int = 2) -> Method:
    p = ctx.p
    index = _index_needed(entry, p, m)
    if requested is not Method.AUTO:
        if requested not in entry.methods:
            raise MethodUnavailable(f"{entry.id} has no {requested.value} evaluation")
        if requested is Method.EXACT and not ctx.exact_feasible(index):
            raise MethodUnavailable(
                f"{entry.id} at p={p} needs B_{index}, beyond P_exact={ctx.p_exact}"
            )
        if requested is Method.PADIC and p <= 3:
            raise MethodUnavailable("the quotient-derived estimate needs p > 3")
        return requested
    if entry.id == "C03g":
        return Method.EXACT if ctx.exact_feasible(index) else Method.DIRECT
    if Method.DIRECT in entry.methods:
        return Method.DIRECT
    if Method.EXACT in entry.methods and ctx.exact_feasible(index):
        return Method.EXACT
    if Method.PADIC in entry.methods and p > 3:
        return Method.PADIC
    raise MethodUnavailable(f"no evaluation of {entry.id} is available at p={p}")


def check(
    request: CongruenceCheckRequest,
    *,
    p_exact: int = DEFAULT_P_EXACT,
    context: PrimeContext | None = None,
) -> CongruenceResult:
    """Evaluate one registry entry at one prime.

    Raises MethodUnavailable when the requested (or any, for auto) method
    cannot evaluate the entry.  An entry outside its stated range of primes
    comes back with ``applicable=False`` and ``holds=None``.
    """
    entry = REGISTRY[request.id]
    ctx = context if context is not None else PrimeContext(request.p, p_exact)
    if ctx.p != request.p:
        raise ValueError("context belongs to a different prime")
    p = ctx.p
    m = request.m if request.m is not None else 2
    k = entry.modulus_exponent
    modulus = p**k if k is not None else None
    result_m = m if entry.id == "C03g" else None
    if p < entry.min_p:
        return CongruenceResult(
            entry.id, p, False, None, None, None, modulus, None,
            note=f"stated for p >= {entry.min_p}", m=result_m,
        )
    method = resolve_method(entry, ctx, request.method, m)
    note = SAME_DATA if method is Method.PADIC else ""

    if entry.id in ("C12", "C13", "C15"):
        ok, a, x, y = _per_a(ctx, entry.id)
        note = "all 1 <= a <= p-1" if ok else f"fails at a={a}"
        return CongruenceResult(entry.id, p, True, ok, x, y, modulus, method.value, note)

    lhs, rhs = _EVALUATORS[entry.id](ctx, method, m)
    if k is None:
        holds = Fraction(lhs) == Fraction(rhs)
    else:
        holds = _holds(lhs, rhs, p, k)
    return CongruenceResult(
        entry.id, p, True, holds,
        evidence(lhs, p, k), evidence(rhs, p, k),
        modulus, method.value, note, m=result_m,
    )


def check_all(p: int, *, p_exact: int = DEFAULT_P_EXACT) -> list[CongruenceResult]:
    """Every registry entry (C03g with m = 2) at p, sharing one context."""
    ctx = PrimeContext(p, p_exact)
    out = []
    for entry in _ENTRIES:
        req = CongruenceCheckRequest(entry.id, p, m=2 if entry.id == "C03g" else None)
        try:
            out.append(check(req, context=ctx))
        except LerchError as exc:
            k = entry.modulus_exponent
            out.append(
                CongruenceResult(
                    entry.id, p, p >= entry.min_p, None, None, None,
                    p**k if k else None, None,
                    error=f"{type(exc).__name__}: {exc}",
                    m=2 if entry.id == "C03g" else None,
                )
            )
    return out


@dataclass
class LerchCriteria:
    p: int
    agree: bool
    verdicts: dict[str, bool] = field(default_factory=dict)
    methods: dict[str, str] = field(default_factory=dict)


LERCH_CRITERIA = ("C07", "C09", "C18", "C19")


def lerch_criteria_agree(
    p: int, *, p_exact: int = DEFAULT_P_EXACT, method: Method = Method.AUTO
) -> LerchCriteria:
    """Evaluate the four Lerch-prime criteria; at p = 3 only C07 and C18.

    ``method`` applies to the Bernoulli-side criteria C09 and C19.
    """
    ctx = PrimeContext(p, p_exact)
    ids = LERCH_CRITERIA if p > 3 else ("C07", "C18")
    verdicts, methods = {}, {}
    for cid in ids:
        meth = method if cid in ("C09", "C19") else Method.AUTO
        r = check(CongruenceCheckRequest(cid, p, method=meth), context=ctx)
        verdicts[cid] = bool(r.holds)
        methods[cid] = r.method_used or ""
    return LerchCriteria(p, len(set(verdicts.values())) == 1, verdicts, methods)


@dataclass
class StringencyRow:
    p: int
    kummer_johnson: bool  # C03
    wilson: bool  # C05
    wilson_lerch: bool  # C20
    consistent: bool


def stringency_progression(
    primes, *, p_exact: int = DEFAULT_P_EXACT, method: Method = Method.AUTO
) -> list[StringencyRow]:
    """C03 / C05 / C20 verdicts per prime; each level must imply the one before."""
    rows = []
    for p in primes:
        ctx = PrimeContext(p, p_exact)
        v = [
            bool(check(CongruenceCheckRequest(cid, p, method=method), context=ctx).holds)
            for cid in ("C03", "C05", "C20")
        ]
        consistent = v[0] and (not v[1] or v[0]) and (not v[2] or v[1])
        rows.append(StringencyRow(p, v[0], v[1], v[2], consistent))
    return rows


def c20_solutions(pmax: int, *, p_exact: int | None = None) -> list[int]:
    """All odd primes p <= pmax with B_{2p-2} = B_{p-1} (mod p^2), by exact arithmetic."""
    p_exact = pmax if p_exact is None else p_exact
    out = []
    for p in range(3, pmax + 1, 2):
        if is_prime(p):
            r = check(CongruenceCheckRequest("C20", p, method=Method.EXACT), p_exact=p_exact)
            if r.holds:
                out.append(p)
    return out
