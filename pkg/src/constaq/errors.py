"""Exception hierarchy shared by every constaq module."""

from __future__ import annotations


class ConstaqError(Exception):
    """Base class for all library errors."""


class NotPrime(ConstaqError, ValueError):
    pass


class ReducibleModulus(ConstaqError, ValueError):
    pass


class NoSuchSubfield(ConstaqError, ValueError):
    pass


class FieldMismatch(ConstaqError, TypeError):
    pass


class DivisionByZero(ConstaqError, ZeroDivisionError):
    pass


class LogOfZero(ConstaqError, ValueError):
    pass


class LengthMismatch(ConstaqError, ValueError):
    pass


class InvalidPlan(ConstaqError, ValueError):
    """A transform plan violates n | p^k' - 1, p does not divide n, or beta^n = lambda."""


class RepeatedRootPlan(InvalidPlan):
    pass


class ZeroLambda(ConstaqError, ValueError):
    pass


class NotConjugacyClosed(ConstaqError, ValueError):
    pass


class ContainmentViolated(ConstaqError, ValueError):
    pass


class InconsistentVerdict(ConstaqError, AssertionError):
    """Two independent containment criteria disagreed (a bug, never expected)."""


class BudgetExceeded(ConstaqError, RuntimeError):
    def __init__(self, message: str, lower_bound: int | None = None):
        super().__init__(message)
        self.lower_bound = lower_bound


class AlphabetViolation(ConstaqError, ValueError):
    pass


class DecodeFailure(ConstaqError, RuntimeError):
    pass


class IndexOutOfRange(ConstaqError, IndexError):
    pass


class OverlappingAncillaSets(ConstaqError, ValueError):
    pass


class MessageSpaceEmpty(ConstaqError, ValueError):
    pass


class DimensionMismatch(ConstaqError, ValueError):
    pass


class NotBasisError(ConstaqError, ValueError):
    pass
