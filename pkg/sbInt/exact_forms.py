"""
The :mod:`sbInt.exact_forms` module implements exact arithmetic in the normal
form ``rational * π^(s/2)``. Every integral with an even exponent p = 2m and
an integer weight q = k has a value of this shape, because its gamma
functions all have integer or half-integer arguments.

The exponent of π is counted in half units so that odd real dimensions
(powers of √π) and even ones (integer powers of π) stay in one closed form.

---------------
Module Contents
---------------
Classes:
    * ExactValue
    * MultiIndex
Functions:
    * exact_mul
    * exact_gamma_half_integer
    * exact_factorial
    * exact_to_log
    * exact_from_float
    * multiindex_factorial
    * pi_power
"""
import math
import operator
import sys
from fractions import Fraction

from sbInt.errors import DomainError
from sbInt.special_functions import LN_PI


class ExactValue:
    """
    An exact value ``(numerator / denominator) * π^(pi_half_exponent / 2)``.

    The rational part is kept reduced with a positive denominator and zero is
    always stored as ``(0, 1, 0)``, so two equal values have identical
    triples.

    :param numerator: numerator of the rational factor; a
        :class:`fractions.Fraction` is accepted as well
    :type numerator: int or fractions.Fraction
    :param denominator: denominator of the rational factor, non-zero
    :type denominator: int
    :param pi_half_exponent: the power of √π
    :type pi_half_exponent: int
    """
    __slots__ = ('_coefficient', '_pi_half_exponent')

    def __init__(self, numerator, denominator=1, pi_half_exponent=0):
        """
        Constructor method.
        """
        if denominator == 0:
            raise DomainError("ExactValue denominator must not be zero")
        coefficient = Fraction(numerator) / Fraction(denominator)
        pi_half_exponent = operator.index(pi_half_exponent)
        if coefficient == 0:
            pi_half_exponent = 0
        self._coefficient = coefficient
        self._pi_half_exponent = pi_half_exponent

    @classmethod
    def zero(cls):
        """
        Returns the canonical zero (0, 1, 0).

        :rtype: ExactValue
        """
        return cls(0)

    @classmethod
    def one(cls):
        """
        Returns the unit (1, 1, 0).

        :rtype: ExactValue
        """
        return cls(1)

    @property
    def numerator(self):
        """
        Numerator of the rational factor, carrying the sign.
        """
        return self._coefficient.numerator

    @property
    def denominator(self):
        """
        Positive denominator of the rational factor.
        """
        return self._coefficient.denominator

    @property
    def pi_half_exponent(self):
        """
        The exponent s of π^(s / 2).
        """
        return self._pi_half_exponent

    @property
    def coefficient(self):
        """
        The rational factor as a :class:`fractions.Fraction`.
        """
        return self._coefficient

    def as_tuple(self):
        """
        Returns the normal form triple.

        :return: (numerator, denominator, pi_half_exponent)
        :rtype: tuple
        """
        return (self.numerator, self.denominator, self._pi_half_exponent)

    def is_zero(self):
        """
        Returns True for the exact zero.

        :rtype: bool
        """
        return self._coefficient == 0

    def reciprocal(self):
        """
        Returns 1 / self.

        :return: the reciprocal value
        :rtype: ExactValue
        :raises DomainError: for zero
        """
        if self.is_zero():
            raise DomainError("the reciprocal of zero is undefined")
        return ExactValue(1 / self._coefficient, 1, -self._pi_half_exponent)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactValue(other)
        if not isinstance(other, ExactValue):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactValue(other)
        if not isinstance(other, ExactValue):
            return NotImplemented
        return exact_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactValue(other)
        if not isinstance(other, ExactValue):
            return NotImplemented
        return exact_mul(self, other.reciprocal())

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return exact_mul(ExactValue(other), self.reciprocal())
        return NotImplemented

    def __pow__(self, exponent):
        exponent = operator.index(exponent)
        if exponent < 0:
            return self.reciprocal() ** -exponent
        return ExactValue(self._coefficient ** exponent, 1,
                          self._pi_half_exponent * exponent)

    def __float__(self):
        if self.is_zero():
            return 0.0
        sign = -1.0 if self._coefficient < 0 else 1.0
        return sign * math.exp(exact_to_log(abs(self)))

    def __abs__(self):
        return ExactValue(abs(self._coefficient), 1, self._pi_half_exponent)

    def __repr__(self):
        return "ExactValue({}, {}, {})".format(*self.as_tuple())

    def __str__(self):
        """
        Renders the value as ``num/den·π^(s/2)`` with unit factors dropped,
        e.g. ``4/3·π``, ``3/4·π^(1/2)``, ``π^2`` or ``1/12``.
        """
        if self.is_zero():
            return "0"
        s = self._pi_half_exponent
        if s == 0:
            pi_part = ""
        elif s == 2:
            pi_part = "π"
        elif s % 2 == 0:
            pi_part = "π^{}".format(s // 2)
        else:
            pi_part = "π^({}/2)".format(s)

        if self.denominator == 1:
            rational = str(self.numerator)
        else:
            rational = "{}/{}".format(self.numerator, self.denominator)

        if not pi_part:
            return rational
        if self._coefficient == 1:
            return pi_part
        if self._coefficient == -1:
            return "-" + pi_part
        return rational + "·" + pi_part


def exact_mul(a, b):
    """
    Multiplies two exact values; the π exponents add.

    :param a: first factor
    :type a: ExactValue
    :param b: second factor
    :type b: ExactValue
    :return: the product in normal form
    :rtype: ExactValue
    """
    return ExactValue(a.coefficient * b.coefficient, 1,
                      a.pi_half_exponent + b.pi_half_exponent)


def pi_power(pi_half_exponent):
    """
    Returns π^(s/2) as an exact value.

    :param pi_half_exponent: the power s of √π
    :type pi_half_exponent: int
    :rtype: ExactValue
    """
    return ExactValue(1, 1, pi_half_exponent)


def exact_factorial(k):
    """
    Returns k! as an exact value.

    :param k: a nonnegative integer
    :type k: int
    :rtype: ExactValue
    :raises DomainError: for negative k
    """
    k = operator.index(k)
    if k < 0:
        raise DomainError("factorial of a negative integer {}".format(k))
    return ExactValue(math.factorial(k))


def exact_gamma_half_integer(two_t):
    """
    Exact gamma function at an integer or half-integer argument t = two_t / 2.

    Γ(k) = (k - 1)! for integer k and
    Γ(m + 1/2) = (2m)! / (4^m m!) √π for half-integers.

    :param two_t: twice the argument, two_t >= 1
    :type two_t: int
    :return: Γ(two_t / 2)
    :rtype: ExactValue
    :raises DomainError: for two_t <= 0
    """
    two_t = operator.index(two_t)
    if two_t <= 0:
        raise DomainError("exact gamma needs a positive argument, got "
                          "{}/2".format(two_t))
    if two_t % 2 == 0:
        return ExactValue(math.factorial(two_t // 2 - 1))
    m = (two_t - 1) // 2
    return ExactValue(math.factorial(2 * m), 4 ** m * math.factorial(m), 1)


def exact_to_log(value):
    """
    Natural logarithm of a positive exact value.

    :param value: a positive exact value
    :type value: ExactValue
    :return: ln(num / den) + (s / 2) ln π
    :rtype: float
    :raises DomainError: for zero or negative values
    """
    coefficient = value.coefficient
    if coefficient <= 0:
        raise DomainError("the logarithm needs a positive value, got "
                          "{}".format(value))
    try:
        ratio = float(coefficient)
    except OverflowError:
        ratio = math.inf
    if sys.float_info.min <= ratio < math.inf:
        log_rational = math.log(ratio)
    else:
        # subnormal or out of range; math.log accepts integers of any size
        log_rational = (math.log(coefficient.numerator)
                        - math.log(coefficient.denominator))
    return log_rational + 0.5 * value.pi_half_exponent * LN_PI


def exact_from_float(x):
    """
    Exact rational image of a decimal number, taken from its shortest
    round-trip representation (0.1 becomes 1/10).

    :param x: a finite real number
    :type x: float or int or fractions.Fraction
    :rtype: ExactValue
    """
    if isinstance(x, (int, Fraction)):
        return ExactValue(x)
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("no exact image of {}".format(x))
    return ExactValue(Fraction(repr(x)))


class MultiIndex(tuple):
    """
    A multi-index α = (α_1, ..., α_n) of nonnegative integers.

    :param entries: the entries of the multi-index
    :type entries: iterable of int
    """
    def __new__(cls, entries=()):
        """
        Constructor method. Validates the entries.
        """
        values = []
        for entry in entries:
            try:
                entry = operator.index(entry)
            except TypeError:
                if isinstance(entry, float) and entry.is_integer():
                    entry = int(entry)
                else:
                    raise DomainError("multi-index entries must be integers, "
                                      "got {!r}".format(entry))
            if entry < 0:
                raise DomainError("multi-index entries must be nonnegative, "
                                  "got {}".format(entry))
            values.append(entry)
        return super().__new__(cls, values)

    def __repr__(self):
        return "MultiIndex({})".format(list(self))

    @property
    def order(self):
        """
        |α| = α_1 + ... + α_n
        """
        return sum(self)

    def factorial(self):
        """
        α! = α_1! ... α_n!, with 0! = 1.

        :rtype: int
        """
        result = 1
        for entry in self:
            result *= math.factorial(entry)
        return result

    def scaled(self, m):
        """
        Returns the entrywise multiple mα.

        :param m: a nonnegative integer
        :type m: int
        :rtype: MultiIndex
        """
        return MultiIndex(m * entry for entry in self)

    def is_even(self):
        """
        Returns True if every entry is even.

        :rtype: bool
        """
        return all(entry % 2 == 0 for entry in self)

    def halved(self):
        """
        Returns α / 2 for an all-even multi-index.

        :rtype: MultiIndex
        :raises DomainError: if an entry is odd
        """
        if not self.is_even():
            raise DomainError("{} has odd entries".format(self))
        return MultiIndex(entry // 2 for entry in self)


def multiindex_factorial(alpha):
    """
    α! as an exact integer value.

    :param alpha: the multi-index
    :type alpha: MultiIndex
    :rtype: ExactValue
    """
    return ExactValue(MultiIndex(alpha).factorial())
