"""Exception types raised across the package."""


class SemitraceError(Exception):
    """Base class for all library errors."""


class EmptyInput(SemitraceError):
    pass


class GcdNotOne(SemitraceError):
    pass


class BoundTooLarge(SemitraceError):
    pass


class EmptyGenerators(SemitraceError):
    pass


class MixedSemigroups(SemitraceError):
    pass


class NotAGenerator(SemitraceError):
    pass


class NotInsideRing(SemitraceError):
    pass


class NotMinimalMultiplicity(SemitraceError):
    pass


class PrincipalIdeal(SemitraceError):
    pass


class DvrInput(SemitraceError):
    pass


class NotPrime(SemitraceError):
    pass


class CapExceeded(SemitraceError):
    def __init__(self, needed: int, cap: int):
        super().__init__(f"degree {needed} needs a cap above {cap}")
        self.needed = needed
        self.cap = cap


class NotHomogeneous(SemitraceError):
    pass


class NotMinimal(SemitraceError):
    pass


class CertificateNotFound(SemitraceError):
    """No syzygy-trace certificate for the Ext tail within the search depth."""


class BatteryDisagreement(SemitraceError):
    """The sixteen conditions disagreed on some ideal; carries the evidence."""

    def __init__(self, message: str, record: dict):
        super().__init__(message)
        self.record = record
