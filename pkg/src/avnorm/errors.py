"""Exception hierarchy shared by every module."""


class AvnError(Exception):
    """Base class for all package errors."""


class SingularMatrix(AvnError):
    pass


class DimensionMismatch(AvnError):
    pass


class UnsupportedRepresentation(AvnError):
    pass


class NotFullDimensional(AvnError):
    pass


class NotPointed(AvnError):
    pass


class TooManyGenerators(AvnError):
    pass


class BoundednessViolation(AvnError):
    pass


class NormalizationError(AvnError):
    pass


class AxiomViolation(AvnError):
    """An asymmetric norm failed its sampled axiom check at construction."""


class NotProper(AvnError):
    pass


class ConeRangeMismatch(AvnError):
    pass


class BadWeights(AvnError):
    pass


class UnknownExample(AvnError):
    pass


class ParseError(AvnError):
    pass
