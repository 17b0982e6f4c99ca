"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CayleyError(Exception):
    """Base class for every error raised by the package."""


# field arithmetic
class DivisionByZero(CayleyError, ZeroDivisionError):
    pass


class MixedFields(CayleyError, ValueError):
    pass


class InfiniteField(CayleyError, ValueError):
    pass


class UnsupportedField(CayleyError, ValueError):
    pass


class UnknownField(CayleyError, ValueError):
    pass


class FieldTooLarge(CayleyError, ValueError):
    pass


class WrongField(CayleyError, ValueError):
    pass


class SmallField(CayleyError, ValueError):
    """Operation needs |K| >= 4."""


class BadCharacteristic(CayleyError, ValueError):
    pass


# projective space
class DegenerateInput(CayleyError, ValueError):
    pass


class NotCollinear(CayleyError, ValueError):
    pass


class TooDegenerate(CayleyError, ValueError):
    pass


class SingularMatrix(CayleyError, ValueError):
    pass


# surface
class NotAffineSurfacePoint(CayleyError, ValueError):
    pass


class NotOnParabola(CayleyError, ValueError):
    pass


class PlaneThroughQ3(CayleyError, ValueError):
    pass


class NoGeneratorInPlane(CayleyError, ValueError):
    pass


# collineations
class ZeroScale(CayleyError, ValueError):
    pass


# metric geometry
class ParallelPoints(CayleyError, ValueError):
    pass


class NotAnAntiflag(CayleyError, ValueError):
    pass


class DistanceMismatch(CayleyError, ValueError):
    pass


class NotParallel(CayleyError, ValueError):
    pass


class DegenerateU1(CayleyError, ValueError):
    pass


class NotAnIsometry(CayleyError, ValueError):
    pass


# cli
class UnknownSuite(CayleyError, ValueError):
    pass
