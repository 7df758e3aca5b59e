"""Exception hierarchy shared by every module."""


class OpIneqError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(OpIneqError):
    pass


class NoConvergence(OpIneqError):
    pass


class NotPSD(OpIneqError):
    pass


class SingularMatrix(OpIneqError):
    pass


class DimMismatch(OpIneqError):
    pass


class HypothesisUnmet(OpIneqError):
    pass


class NotApplicable(OpIneqError):
    pass


class DegenerateDenominator(OpIneqError):
    pass
