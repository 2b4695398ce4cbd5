"""Workbench for Fermat, Wilson and Lerch quotients and the Bernoulli congruences linking them."""

from .bernoulli import (
    BernoulliPadicEstimate,
    BernoulliTable,
    bernoulli_padic_estimate,
    bernoulli_polynomial,
    bernoulli_table,
    staudt_clausen_denominator,
    w_quantity,
)
from .congruences import (
    REGISTRY,
    CongruenceCheckRequest,
    CongruenceResult,
    Method,
    check,
    check_all,
    lerch_criteria_agree,
)
from .numcore import (
    PrimePowerModulus,
    Residue,
    factorial_mod,
    mod_inv,
    mod_pow,
    rat_congruent,
    rat_residue,
    rat_valuation,
)
from .padic import PadicLaurent
from .quotients import (
    QuotientBundle,
    beeger_sum,
    binomial_pm1,
    euler_maclaurin_rhs,
    fermat_quotient,
    fermat_quotient_sum,
    harmonic,
    lerch_residue,
    lucas_lehmer_rhs,
    weighted_qsum,
    wilson_quotient,
)
from .search import SearchOptions, SearchRecord, classify, search_range, sieve

__version__ = "0.1.0"
