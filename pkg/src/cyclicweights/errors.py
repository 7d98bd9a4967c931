"""Exception hierarchy shared by every module."""


class CyclicWeightsError(ValueError):
    """Base class; all library errors are invalid-parameter style errors."""


class NonPrimeP(CyclicWeightsError):
    pass


class NonPrimitiveModulus(CyclicWeightsError):
    pass


class TooLarge(CyclicWeightsError):
    """An enumeration or table would exceed the configured guard."""


class BadParams(CyclicWeightsError):
    pass


class NotSymmetric(CyclicWeightsError):
    pass


class BadRank(CyclicWeightsError):
    pass


class UnsupportedPrime(CyclicWeightsError):
    """The requested closed form only exists for p = 3 mod 4 (or p = 3)."""


class InexactDivision(CyclicWeightsError):
    """A division that must be exact left a remainder."""


class NonRationalMoment(CyclicWeightsError):
    pass


class ZeroCoefficient(CyclicWeightsError):
    pass


class ArityMismatch(CyclicWeightsError):
    pass


def exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise InexactDivision(f"{num} is not divisible by {den}")
    return q


class InconsistentCensus(CyclicWeightsError):
    """Census counts contradict a structural identity (signals a bug)."""
