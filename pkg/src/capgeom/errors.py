"""Exception types raised across the library."""


class CapGeomError(Exception):
    """Base class for every error raised by capgeom."""


class NotPrime(CapGeomError, ValueError):
    pass


class FieldTooLarge(CapGeomError, ValueError):
    pass


class FieldMismatch(CapGeomError, ValueError):
    pass


class NotASubfield(CapGeomError, ValueError):
    pass


class SpaceTooLarge(CapGeomError, ValueError):
    pass


class ZeroVector(CapGeomError, ValueError):
    pass


class DuplicatePoints(CapGeomError, ValueError):
    pass


class DimensionMismatch(CapGeomError, ValueError):
    pass


class FieldNotSquareOrder(CapGeomError, ValueError):
    pass


class NotACap(CapGeomError, ValueError):
    pass


class PointInSet(CapGeomError, ValueError):
    pass


class SpaceTooLargeForSearch(CapGeomError, ValueError):
    pass


class NotADivisor(CapGeomError, ValueError):
    pass


class TargetInfeasible(CapGeomError, ValueError):
    pass


class SearchLimitExceeded(CapGeomError, RuntimeError):
    pass


class DivisibilityViolation(CapGeomError, ValueError):
    pass


class BadParameter(CapGeomError, ValueError):
    pass


class BadDimension(CapGeomError, ValueError):
    pass


class NotASquare(CapGeomError, ValueError):
    pass


class GroupTooLarge(CapGeomError, RuntimeError):
    pass


class DivisionByZero(CapGeomError, ZeroDivisionError):
    pass
