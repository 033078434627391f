"""
Exception hierarchy of :mod:`sbInt`.

Every exception raised on purpose by the package derives from
:class:`SbIntError`. The domain errors also derive from :class:`ValueError`
and the overflow indicator from :class:`OverflowError`, so generic handlers
keep working.

---------------
Module Contents
---------------
Classes:
    * SbIntError
    * DomainError
    * DivergenceError
    * DimensionMismatchError
    * UnsupportedFamilyError
    * UnsupportedDimensionError
    * FloatOverflowError
"""


class SbIntError(Exception):
    """
    Base class of all sbInt errors.
    """


class DomainError(SbIntError, ValueError):
    """
    An argument lies outside the domain of the requested operation.
    """


class DivergenceError(DomainError):
    """
    The requested integral diverges (ball weight exponent q <= -1).
    """


class DimensionMismatchError(DomainError):
    """
    A multi-index does not have one entry per coordinate of the space.
    """


class UnsupportedFamilyError(SbIntError):
    """
    The integral family is unknown or not covered by the requested operation.
    """


class UnsupportedDimensionError(SbIntError):
    """
    The deterministic quadrature only supports real dimension n <= 2 and
    complex dimension N = 1.
    """


class FloatOverflowError(SbIntError, OverflowError):
    """
    A value does not fit into the double precision range.
    """
