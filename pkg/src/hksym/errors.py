"""Exception hierarchy. Every error carries a stable name used in reports."""


class HksymError(ValueError):
    """Base class for all domain errors raised by hksym."""


class NotAUnit(HksymError):
    pass


class PoleAtMinusOne(HksymError):
    pass


class OutOfRange(HksymError):
    pass


class UnsupportedWeight(HksymError):
    pass


class InvalidSquare(HksymError):
    pass


class TruncationTooSmall(HksymError):
    pass


class WellDefinednessViolation(HksymError):
    pass


class ZeroDegree(HksymError):
    pass


class UnsupportedInsertion(HksymError):
    pass


class ImprimitiveGenusTwo(HksymError):
    pass
