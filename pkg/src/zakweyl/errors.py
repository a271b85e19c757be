"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 2); numerical
breakdowns derive from :class:`NumericalError` (CLI exit code 3).
"""

from __future__ import annotations


class ZakWeylError(Exception):
    """Base class for all package errors."""


class InputError(ZakWeylError, ValueError):
    pass


class NumericalError(ZakWeylError, ArithmeticError):
    pass


class ValidationError(InputError):
    pass


class NonPositiveHopping(ValidationError):
    pass


class ParseError(InputError):
    pass


class IllPlacedEnergy(InputError):
    """Energy in the open lower half-plane."""


class NotInGap(InputError):
    pass


class SymmetryViolation(InputError):
    pass


class IsolatedBandViolation(NumericalError):
    """The requested band touches a neighbour (or the index is out of range)."""


class RootFindingFailure(NumericalError):
    pass


class DegenerateEigenvalue(NumericalError):
    pass


class BandEdgeSingularity(NumericalError):
    pass


class DirichletPole(NumericalError):
    pass


class DirichletPoleOnBand(DirichletPole):
    pass


class QuadratureFailure(NumericalError):
    pass


class SnapFailure(NumericalError):
    pass
