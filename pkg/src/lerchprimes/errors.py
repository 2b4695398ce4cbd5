"""Exception hierarchy shared by every module of the workbench."""

from __future__ import annotations


class LerchError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModulus(LerchError, ValueError):
    pass


class ModulusMismatch(LerchError, ValueError):
    pass


class NotInvertible(LerchError, ZeroDivisionError):
    pass


class NegativeValuation(LerchError, ValueError):
    """A rational with a pole at p cannot be reduced to a residue."""


class InsufficientPrecision(LerchError, ArithmeticError):
    pass


class PoleTooDeep(LerchError, ArithmeticError):
    """A p-adic value would carry a pole deeper than the supported 1/p^2."""


class OutOfRange(LerchError, ValueError):
    pass


class NotApplicable(LerchError):
    """The requested statement is not asserted for this prime."""


class MethodUnavailable(LerchError):
    pass


class TableTooSmall(LerchError, IndexError):
    pass


class NonWilsonIntegerDivision(LerchError, ArithmeticError):
    """(n-1)! + 1 was not divisible by n, so n is not prime."""


class RangeInvalid(LerchError, ValueError):
    pass


class CheckpointMismatch(LerchError):
    pass
