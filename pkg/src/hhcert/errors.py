"""Exception types shared across the package."""


class HHCertError(Exception):
    """Base class for every error raised by hhcert."""


class NonIntegralMultiplicity(HHCertError):
    pass


class NegativeMultiplicity(HHCertError):
    pass


class NotSemisimple(HHCertError):
    pass


class NotConstant(HHCertError):
    pass


class NonIntegral(HHCertError):
    pass


class TraceError(HHCertError):
    pass


class OrderMismatch(HHCertError):
    pass


class BadRange(HHCertError):
    pass


class CapExceeded(HHCertError):
    pass


class UnsupportedResidue(HHCertError):
    pass


class MixedRadicand(HHCertError):
    pass


class NonMonicModulus(HHCertError):
    pass


class RadicandNotSquare(HHCertError):
    pass


class Inconclusive(HHCertError):
    pass


class NotAffine(HHCertError):
    pass


class NonPolynomialQuotient(HHCertError):
    pass


class ParseError(HHCertError):
    pass


class NotUnipotent(HHCertError):
    pass


class BudgetExceeded(HHCertError):
    pass


class DataError(HHCertError):
    """A bundled or user supplied dataset is malformed or inconsistent."""
