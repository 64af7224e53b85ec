"""
Monores Errors
Typed failures raised by the engine; every one is a ValueError
"""


class MonoresError(ValueError):
    """Base class for all engine errors."""


class MalformedInputError(MonoresError):
    """Unknown variable index, negative exponent, length mismatch or bad payload."""


class UnsupportedReductionError(MonoresError):
    """gcd reduction asked for on non-integral exponents."""


class NoCenterError(MonoresError):
    """The singular locus is empty so no center exists."""


class NotSingularError(MonoresError):
    """An invariant was requested at a point outside Sing(J, c)."""


class IllegalCenterError(MonoresError):
    """A blowup center is empty or not contained in Sing(J, c)."""


class InternalInvariantError(MonoresError):
    """A bookkeeping invariant of the algorithm was broken."""


class UnsupportedStrategyError(MonoresError):
    """A strategy was asked for on a root it does not apply to."""


class IndeterminateResultError(MonoresError):
    """A statistic was requested from a truncated tree."""


class SmoothInputError(MonoresError):
    """The toric input is smooth (critical value below 2)."""


class DomainError(MonoresError):
    """A combinatorial function was evaluated outside its domain."""
