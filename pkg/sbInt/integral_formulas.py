"""
The :mod:`sbInt.integral_formulas` module evaluates the closed forms of the
integrals of ``|x^α|^p`` and ``|<x, y>|^p`` over the unit sphere, the unit
ball (with weight ``(1 - |x|^2)^q``) and all of space (with weight
``e^(-|x|^2)``), in real space R^n and complex space C^N, under the Lebesgue
measures V, S and under the normalized measures ν, σ.

The 16 integral families carry the labels J1 - J8 (real) and K1 - K8
(complex):

=========  ============  ==============  ==============  ===========
integrand  Gaussian       sphere          ball, q != 0    ball, q = 0
=========  ============  ==============  ==============  ===========
monomial   J1 / K1       J2 / K2         J3 / K3         J4 / K4
inner      J5 / K5       J6 / K6         J7 / K7         J8 / K8
=========  ============  ==============  ==============  ===========

One prime marks the normalized measure, two primes the integer case
p = 2m, q = k under the Lebesgue measure and three primes the integer case
under the normalized measure. Every value is assembled in log space; integer
cases additionally carry an exact value ``rational * π^(s/2)``.

---------------
Module Contents
---------------
Classes:
    * SpaceKind
    * Space
    * Region
    * Measure
    * Limit
    * MonomialAbsPower
    * InnerProductPower
    * SignedMonomial
    * IntegralSpec
    * IntegralValue
    * FamilyPattern
Functions:
    * ball_volume
    * sphere_surface
    * region_measure
    * evaluate
    * family_label
    * parse_family
    * asymptotic_exponent
    * asymptotic_spread
"""
import dataclasses
import enum
import logging
import math
import operator
import re
from fractions import Fraction
from typing import Optional

from sbInt import INTEGER_TOL
from sbInt.errors import (DimensionMismatchError, DivergenceError,
                          DomainError, UnsupportedFamilyError)
from sbInt.exact_forms import (ExactValue, MultiIndex, exact_factorial,
                               exact_from_float, exact_gamma_half_integer,
                               multiindex_factorial, pi_power)
from sbInt.special_functions import (LN_2, LN_PI, exp_or_none,
                                     finite_argument, log_gamma,
                                     log_pochhammer)

logger = logging.getLogger(__name__)

DEFAULT_ASYMPTOTIC_POINTS = (1e3, 1e4, 1e5, 1e6)


class SpaceKind(enum.Enum):
    REAL = 'real'
    COMPLEX = 'complex'


class Region(enum.Enum):
    GAUSSIAN = 'gaussian'
    SPHERE = 'sphere'
    BALL = 'ball'


class Measure(enum.Enum):
    """
    STANDARD is the Lebesgue measure V (or S on the sphere), NORMALIZED the
    rescaled ν, σ with ν(ball) = σ(sphere) = 1.
    """
    STANDARD = 'lebesgue'
    NORMALIZED = 'normalized'


class Limit(enum.Enum):
    Q_TO_INFINITY = 'q'
    P_TO_INFINITY = 'p'


def _exponent(name, value):
    value = finite_argument(name, value)
    if value < 0:
        raise DomainError("{} must be nonnegative, got {}".format(name, value))
    return value


@dataclasses.dataclass(frozen=True)
class Space:
    """
    Real space R^n or complex space C^N. ``dim`` is n or N; the complex space
    C^N is identified with R^(2N).

    :param kind: real or complex
    :type kind: SpaceKind
    :param dim: the dimension n or N, at least 1
    :type dim: int
    """
    kind: SpaceKind
    dim: int

    def __post_init__(self):
        object.__setattr__(self, 'kind', SpaceKind(self.kind))
        try:
            dim = operator.index(self.dim)
        except TypeError:
            raise DomainError("dimension must be an integer, got {!r}".format(
                self.dim))
        if dim < 1:
            raise DomainError("dimension must be at least 1, got {}".format(
                dim))
        object.__setattr__(self, 'dim', dim)

    @classmethod
    def real(cls, n):
        """
        The real space ℝⁿ.

        :param n: real dimension, n >= 1
        :type n: int
        :rtype: Space
        """
        return cls(SpaceKind.REAL, n)

    @classmethod
    def complex(cls, N):
        """
        The complex space ℂᴺ, of real dimension 2N.

        :param N: complex dimension, N >= 1
        :type N: int
        :rtype: Space
        """
        return cls(SpaceKind.COMPLEX, N)

    @property
    def is_complex(self):
        """
        True for ℂᴺ.
        """
        return self.kind is SpaceKind.COMPLEX

    @property
    def real_dim(self):
        """
        The real dimension: n, or 2N for complex space.
        """
        return 2 * self.dim if self.is_complex else self.dim


@dataclasses.dataclass(frozen=True)
class MonomialAbsPower:
    """
    The integrand |x^α|^p = |x_1|^(α_1 p) ... |x_n|^(α_n p).

    :param alpha: the multi-index, one entry per coordinate
    :type alpha: MultiIndex
    :param p: the exponent, p >= 0
    :type p: float
    """
    alpha: MultiIndex
    p: float

    def __post_init__(self):
        object.__setattr__(self, 'alpha', MultiIndex(self.alpha))
        object.__setattr__(self, 'p', _exponent("p", self.p))

    @property
    def degree(self):
        """
        Homogeneity degree |α| p.
        """
        return self.alpha.order * self.p


@dataclasses.dataclass(frozen=True)
class InnerProductPower:
    """
    The integrand |<x, y>|^p. By rotation invariance only the anchor norm |y|
    enters the integral.

    :param p: the exponent, p >= 0
    :type p: float
    :param anchor_norm: the norm of the anchor y (or w), >= 0
    :type anchor_norm: float
    """
    p: float
    anchor_norm: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'p', _exponent("p", self.p))
        object.__setattr__(self, 'anchor_norm',
                           _exponent("anchor norm", self.anchor_norm))

    @property
    def degree(self):
        return self.p


@dataclasses.dataclass(frozen=True)
class SignedMonomial:
    """
    The integrand x^α without absolute values (real space only).

    :param alpha: the multi-index
    :type alpha: MultiIndex
    """
    alpha: MultiIndex

    def __post_init__(self):
        object.__setattr__(self, 'alpha', MultiIndex(self.alpha))

    @property
    def degree(self):
        return self.alpha.order


@dataclasses.dataclass(frozen=True)
class IntegralSpec:
    """
    Full description of one integral.

    :param space: the space R^n or C^N
    :type space: Space
    :param region: Gaussian-weighted space, unit sphere or unit ball
    :type region: Region
    :param integrand: the integrand
    :type integrand: MonomialAbsPower or InnerProductPower or SignedMonomial
    :param q: exponent of the ball weight (1 - |x|^2)^q, q > -1. It is
        ignored (and stored as 0) for the other regions.
    :type q: float
    :param measure: Lebesgue or normalized measure
    :type measure: Measure
    """
    space: Space
    region: Region
    integrand: object
    q: float = 0.0
    measure: Measure = Measure.STANDARD

    def __post_init__(self):
        object.__setattr__(self, 'region', Region(self.region))
        object.__setattr__(self, 'measure', Measure(self.measure))

        integrand = self.integrand
        if not isinstance(integrand, (MonomialAbsPower, InnerProductPower,
                                      SignedMonomial)):
            raise TypeError("unknown integrand {!r}".format(integrand))
        if isinstance(integrand, (MonomialAbsPower, SignedMonomial)):
            if len(integrand.alpha) != self.space.dim:
                raise DimensionMismatchError(
                    "multi-index {} has {} entries but the space has "
                    "dimension {}".format(list(integrand.alpha),
                                          len(integrand.alpha),
                                          self.space.dim))
        if isinstance(integrand, SignedMonomial) and self.space.is_complex:
            raise DomainError("signed monomials are only defined in real "
                              "space")

        if self.region is Region.BALL:
            q = finite_argument("q", self.q)
            if q <= -1:
                raise DivergenceError(
                    "the ball integral diverges for q <= -1 (got q = "
                    "{})".format(q))
        else:
            q = 0.0
        object.__setattr__(self, 'q', q)

    def replace(self, **changes):
        """
        Returns a copy with some fields replaced.

        :rtype: IntegralSpec
        """
        return dataclasses.replace(self, **changes)

    @property
    def normalized(self):
        return self.measure is Measure.NORMALIZED


@dataclasses.dataclass(frozen=True)
class IntegralValue:
    """
    Value of an integral. All integrals in scope are positive, so the value
    is carried by its logarithm; ``value`` is absent when it leaves the double
    range and ``exact`` is present for the integer parameter cases.

    A vanishing integral (odd signed monomial, zero anchor) is the dedicated
    zero state: ``log_value`` is None, ``value`` is 0.0 and ``exact`` is the
    exact zero.
    """
    log_value: Optional[float]
    value: Optional[float]
    exact: Optional[ExactValue] = None

    @classmethod
    def from_log(cls, log_value, exact=None):
        """
        Builds a value from its logarithm. The linear value is None when it
        leaves the normal double range.

        :param log_value: natural logarithm of the integral
        :type log_value: float
        :param exact: the exact form, if known
        :type exact: ExactValue or None
        :rtype: IntegralValue
        """
        return cls(log_value, exp_or_none(log_value), exact)

    @classmethod
    def zero(cls):
        """
        The vanishing integral.

        :rtype: IntegralValue
        """
        return cls(None, 0.0, ExactValue.zero())

    @property
    def is_zero(self):
        """
        True for the vanishing integral.
        """
        return self.log_value is None


def _nearest_integer(x):
    nearest = round(x)
    if abs(x - nearest) <= INTEGER_TOL:
        return int(nearest)
    return None


def _half_of_even(p):
    nearest = _nearest_integer(p)
    if nearest is not None and nearest % 2 == 0:
        return nearest // 2
    return None


def _measure_of(measure):
    return Measure(measure)


def _dimension(n):
    return Space.real(n).dim


def ball_volume(n, measure=Measure.STANDARD):
    """
    Volume of the unit ball of R^n, V = π^(n/2) / Γ(1 + n/2), or 1 under ν.

    :param n: real dimension
    :type n: int
    :param measure: the measure
    :type measure: Measure
    :rtype: IntegralValue
    """
    n = _dimension(n)
    if _measure_of(measure) is Measure.NORMALIZED:
        return IntegralValue(0.0, 1.0, ExactValue.one())
    log_value = 0.5 * n * LN_PI - log_gamma(1 + 0.5 * n)
    exact = pi_power(n) / exact_gamma_half_integer(n + 2)
    return IntegralValue.from_log(log_value, exact)


def sphere_surface(n, measure=Measure.STANDARD):
    """
    Surface area of the unit sphere of R^n, S = n π^(n/2) / Γ(1 + n/2), or 1
    under σ.

    :param n: real dimension
    :type n: int
    :param measure: the measure
    :type measure: Measure
    :rtype: IntegralValue
    """
    n = _dimension(n)
    if _measure_of(measure) is Measure.NORMALIZED:
        return IntegralValue(0.0, 1.0, ExactValue.one())
    log_value = math.log(n) + 0.5 * n * LN_PI - log_gamma(1 + 0.5 * n)
    exact = n * pi_power(n) / exact_gamma_half_integer(n + 2)
    return IntegralValue.from_log(log_value, exact)


def region_measure(space, region, measure=Measure.STANDARD):
    """
    The total measure against which normalized values are taken: S(sphere)
    for the sphere and V(ball) for the ball and for Gaussian-weighted space.

    :param space: the space
    :type space: Space
    :param region: the region
    :type region: Region
    :param measure: the measure
    :type measure: Measure
    :rtype: IntegralValue
    """
    if Region(region) is Region.SPHERE:
        return sphere_surface(space.real_dim, measure)
    return ball_volume(space.real_dim, measure)


def _exact_density(space, region):
    # dν/dV = Γ(1 + d/2) / π^(d/2),  dσ/dS = Γ(d/2) / (2 π^(d/2))
    d = space.real_dim
    if region is Region.SPHERE:
        return exact_gamma_half_integer(d) * pi_power(-d) / 2
    return exact_gamma_half_integer(d + 2) * pi_power(-d)


# ------------------------------------------------------------------------
# real monomials |x^α|^p

def _log_j1(n, alpha, p, q, normalized):
    if normalized:
        return (log_pochhammer(1.0, 0.5 * n)
                + sum(log_pochhammer(0.5, 0.5 * a * p) for a in alpha))
    return sum(log_gamma(0.5 * (1 + a * p)) for a in alpha)


def _log_j2(n, alpha, p, q, normalized):
    degree = alpha.order * p
    if normalized:
        return (sum(log_pochhammer(0.5, 0.5 * a * p) for a in alpha)
                - log_pochhammer(0.5 * n, 0.5 * degree))
    return (LN_2 + sum(log_gamma(0.5 * (1 + a * p)) for a in alpha)
            - log_gamma(0.5 * (n + degree)))


def _log_j3(n, alpha, p, q, normalized):
    degree = alpha.order * p
    if normalized:
        return (log_pochhammer(1.0, q)
                + sum(log_pochhammer(0.5, 0.5 * a * p) for a in alpha)
                - log_pochhammer(1 + 0.5 * n, q + 0.5 * degree))
    return (log_gamma(1 + q)
            + sum(log_gamma(0.5 * (1 + a * p)) for a in alpha)
            - log_gamma(1 + q + 0.5 * (n + degree)))


def _log_j4(n, alpha, p, q, normalized):
    degree = alpha.order * p
    if normalized:
        return (sum(log_pochhammer(0.5, 0.5 * a * p) for a in alpha)
                - log_pochhammer(1 + 0.5 * n, 0.5 * degree))
    return (sum(log_gamma(0.5 * (1 + a * p)) for a in alpha)
            - log_gamma(1 + 0.5 * (n + degree)))


def _exact_monomial_numerator(alpha, m):
    # Π Γ(1/2 + m α_j)
    result = ExactValue.one()
    for a in alpha:
        result = result * exact_gamma_half_integer(1 + 2 * m * a)
    return result


def _exact_j1(n, alpha, m, k):
    return _exact_monomial_numerator(alpha, m)


def _exact_j2(n, alpha, m, k):
    return (2 * _exact_monomial_numerator(alpha, m)
            / exact_gamma_half_integer(n + 2 * m * alpha.order))


def _exact_j3(n, alpha, m, k):
    return (exact_factorial(k) * _exact_monomial_numerator(alpha, m)
            / exact_gamma_half_integer(2 + 2 * k + n + 2 * m * alpha.order))


def _exact_j4(n, alpha, m, k):
    return (_exact_monomial_numerator(alpha, m)
            / exact_gamma_half_integer(2 + n + 2 * m * alpha.order))


# ------------------------------------------------------------------------
# real inner products |<x, y>|^p, without the factor |y|^p

def _log_j5(n, alpha, p, q, normalized):
    if normalized:
        return log_gamma(1 + 0.5 * n) + log_pochhammer(0.5, 0.5 * p)
    return 0.5 * (n - 1) * LN_PI + log_gamma(0.5 * (1 + p))


def _log_j6(n, alpha, p, q, normalized):
    if normalized:
        return log_pochhammer(0.5, 0.5 * p) - log_pochhammer(0.5 * n, 0.5 * p)
    return (LN_2 + 0.5 * (n - 1) * LN_PI + log_gamma(0.5 * (1 + p))
            - log_gamma(0.5 * (n + p)))


def _log_j7(n, alpha, p, q, normalized):
    if normalized:
        return (log_pochhammer(1.0, q) + log_pochhammer(0.5, 0.5 * p)
                - log_pochhammer(1 + 0.5 * n, q + 0.5 * p))
    return (0.5 * (n - 1) * LN_PI + log_gamma(1 + q)
            + log_gamma(0.5 * (1 + p)) - log_gamma(1 + q + 0.5 * (n + p)))


def _log_j8(n, alpha, p, q, normalized):
    if normalized:
        return (log_pochhammer(0.5, 0.5 * p)
                - log_pochhammer(1 + 0.5 * n, 0.5 * p))
    return (0.5 * (n - 1) * LN_PI + log_gamma(0.5 * (1 + p))
            - log_gamma(1 + 0.5 * (n + p)))


def _exact_j5(n, alpha, m, k):
    return pi_power(n - 1) * exact_gamma_half_integer(1 + 2 * m)


def _exact_j6(n, alpha, m, k):
    return (2 * pi_power(n - 1) * exact_gamma_half_integer(1 + 2 * m)
            / exact_gamma_half_integer(n + 2 * m))


def _exact_j7(n, alpha, m, k):
    return (pi_power(n - 1) * exact_factorial(k)
            * exact_gamma_half_integer(1 + 2 * m)
            / exact_gamma_half_integer(2 + 2 * k + n + 2 * m))


def _exact_j8(n, alpha, m, k):
    # the denominator is Γ(1 + n/2 + m), the q = 0 case of J7''
    return (pi_power(n - 1) * exact_gamma_half_integer(1 + 2 * m)
            / exact_gamma_half_integer(2 + n + 2 * m))


# ------------------------------------------------------------------------
# complex monomials |z^α|^p

def _log_k1(N, alpha, p, q, normalized):
    if normalized:
        return (log_gamma(N + 1)
                + sum(log_pochhammer(1.0, 0.5 * a * p) for a in alpha))
    return N * LN_PI + sum(log_gamma(1 + 0.5 * a * p) for a in alpha)


def _log_k2(N, alpha, p, q, normalized):
    degree = alpha.order * p
    if normalized:
        return (sum(log_pochhammer(1.0, 0.5 * a * p) for a in alpha)
                - log_pochhammer(N, 0.5 * degree))
    return (LN_2 + N * LN_PI
            + sum(log_gamma(1 + 0.5 * a * p) for a in alpha)
            - log_gamma(N + 0.5 * degree))


def _log_k3(N, alpha, p, q, normalized):
    degree = alpha.order * p
    if normalized:
        return (log_pochhammer(1.0, q)
                + sum(log_pochhammer(1.0, 0.5 * a * p) for a in alpha)
                - log_pochhammer(1 + N, q + 0.5 * degree))
    return (N * LN_PI + log_gamma(1 + q)
            + sum(log_gamma(1 + 0.5 * a * p) for a in alpha)
            - log_gamma(1 + q + N + 0.5 * degree))


def _log_k4(N, alpha, p, q, normalized):
    degree = alpha.order * p
    if normalized:
        return (sum(log_pochhammer(1.0, 0.5 * a * p) for a in alpha)
                - log_pochhammer(1 + N, 0.5 * degree))
    return (N * LN_PI + sum(log_gamma(1 + 0.5 * a * p) for a in alpha)
            - log_gamma(1 + N + 0.5 * degree))


def _exact_k1(N, alpha, m, k):
    return pi_power(2 * N) * multiindex_factorial(alpha.scaled(m))


def _exact_k2(N, alpha, m, k):
    return (2 * pi_power(2 * N) * multiindex_factorial(alpha.scaled(m))
            / exact_factorial(N - 1 + m * alpha.order))


def _exact_k3(N, alpha, m, k):
    return (pi_power(2 * N) * exact_factorial(k)
            * multiindex_factorial(alpha.scaled(m))
            / exact_factorial(N + k + m * alpha.order))


def _exact_k4(N, alpha, m, k):
    return (pi_power(2 * N) * multiindex_factorial(alpha.scaled(m))
            / exact_factorial(N + m * alpha.order))


# ------------------------------------------------------------------------
# complex inner products |<z, w>|^p, without the factor |w|^p

def _log_k5(N, alpha, p, q, normalized):
    if normalized:
        return log_gamma(N + 1) + log_pochhammer(1.0, 0.5 * p)
    return N * LN_PI + log_gamma(1 + 0.5 * p)


def _log_k6(N, alpha, p, q, normalized):
    if normalized:
        return log_pochhammer(1.0, 0.5 * p) - log_pochhammer(N, 0.5 * p)
    return (LN_2 + N * LN_PI + log_gamma(1 + 0.5 * p)
            - log_gamma(N + 0.5 * p))


def _log_k7(N, alpha, p, q, normalized):
    if normalized:
        return (log_pochhammer(1.0, q) + log_pochhammer(1.0, 0.5 * p)
                - log_pochhammer(N + 1, q + 0.5 * p))
    return (N * LN_PI + log_gamma(1 + q) + log_gamma(1 + 0.5 * p)
            - log_gamma(N + 1 + q + 0.5 * p))


def _log_k8(N, alpha, p, q, normalized):
    if normalized:
        return log_pochhammer(1.0, 0.5 * p) - log_pochhammer(N + 1, 0.5 * p)
    return (N * LN_PI + log_gamma(1 + 0.5 * p)
            - log_gamma(N + 1 + 0.5 * p))


def _exact_k5(N, alpha, m, k):
    return pi_power(2 * N) * exact_factorial(m)


def _exact_k6(N, alpha, m, k):
    return (2 * pi_power(2 * N) * exact_factorial(m)
            / exact_factorial(N - 1 + m))


def _exact_k7(N, alpha, m, k):
    return (pi_power(2 * N) * exact_factorial(k) * exact_factorial(m)
            / exact_factorial(N + k + m))


def _exact_k8(N, alpha, m, k):
    return (pi_power(2 * N) * exact_factorial(m)
            / exact_factorial(N + m))


_FORMULAS = {
    'J1': (_log_j1, _exact_j1), 'J2': (_log_j2, _exact_j2),
    'J3': (_log_j3, _exact_j3), 'J4': (_log_j4, _exact_j4),
    'J5': (_log_j5, _exact_j5), 'J6': (_log_j6, _exact_j6),
    'J7': (_log_j7, _exact_j7), 'J8': (_log_j8, _exact_j8),
    'K1': (_log_k1, _exact_k1), 'K2': (_log_k2, _exact_k2),
    'K3': (_log_k3, _exact_k3), 'K4': (_log_k4, _exact_k4),
    'K5': (_log_k5, _exact_k5), 'K6': (_log_k6, _exact_k6),
    'K7': (_log_k7, _exact_k7), 'K8': (_log_k8, _exact_k8),
}

_REGION_OFFSET = {Region.GAUSSIAN: 1, Region.SPHERE: 2, Region.BALL: 3}

_PRIMES = {
    (False, False): "",
    (False, True): "'",
    (True, False): "''",
    (True, True): "'''",
}


def _snap(spec):
    """
    Snap p and q to integers within INTEGER_TOL.

    :return: the snapped spec, m with p = 2m (or None) and the integer q = k
        (or None)
    :rtype: tuple
    """
    integrand = spec.integrand
    m = _half_of_even(integrand.p)
    if m is not None:
        integrand = dataclasses.replace(integrand, p=2.0 * m)
    k = None
    q = spec.q
    if spec.region is Region.BALL:
        k = _nearest_integer(q)
        if k is not None:
            q = float(k)
    return spec.replace(integrand=integrand, q=q), m, k


def _base_family(spec):
    """
    The unprimed family label, e.g. 'J3' or 'K8'.
    """
    letter = 'K' if spec.space.is_complex else 'J'
    number = _REGION_OFFSET[spec.region]
    if spec.region is Region.BALL and spec.q == 0:
        number += 1
    if isinstance(spec.integrand, InnerProductPower):
        number += 4
    return "{}{}".format(letter, number)


def family_label(spec):
    """
    Returns the J/K label of a spec, e.g. ``"J3'''"`` for a real ball
    monomial with even p, integer q and the normalized measure. Signed
    monomials are labelled ``"custom"``.

    :param spec: the integral
    :type spec: IntegralSpec
    :rtype: str
    """
    if isinstance(spec.integrand, SignedMonomial):
        return "custom"
    snapped, m, k = _snap(spec)
    integer = m is not None and (snapped.region is not Region.BALL
                                 or k is not None)
    return _base_family(snapped) + _PRIMES[(integer, snapped.normalized)]


def evaluate(spec, with_exact=True):
    """
    Evaluates an integral in closed form.

    :param spec: the integral
    :type spec: IntegralSpec
    :param with_exact: also build the exact value when p is an even integer
        and (for the ball) q is an integer
    :type with_exact: bool
    :return: the value
    :rtype: IntegralValue
    """
    integrand = spec.integrand
    if isinstance(integrand, SignedMonomial):
        if not integrand.alpha.is_even():
            logger.debug("odd signed monomial %s vanishes by symmetry",
                         list(integrand.alpha))
            return IntegralValue.zero()
        # x^α = |x^(α/2)|^2 for an all-even α
        spec = spec.replace(
            integrand=MonomialAbsPower(integrand.alpha.halved(), 2.0))
        integrand = spec.integrand

    spec, m, k = _snap(spec)
    integrand = spec.integrand
    p = integrand.p

    inner = isinstance(integrand, InnerProductPower)
    anchor_log = 0.0
    if inner and p > 0:
        if integrand.anchor_norm == 0:
            return IntegralValue.zero()
        anchor_log = p * math.log(integrand.anchor_norm)

    family = _base_family(spec)
    log_formula, exact_formula = _FORMULAS[family]
    alpha = getattr(integrand, 'alpha', None)
    dim = spec.space.dim
    log_value = log_formula(dim, alpha, p, spec.q, spec.normalized)
    log_value += anchor_log

    exact = None
    integer = m is not None and (spec.region is not Region.BALL
                                 or k is not None)
    if with_exact and integer:
        exact = exact_formula(dim, alpha, m, k or 0)
        if spec.normalized:
            exact = exact * _exact_density(spec.space, spec.region)
        if inner:
            exact = exact * exact_from_float(integrand.anchor_norm) ** (2 * m)

    logger.debug("evaluated %s as %s: log value %r", spec, family, log_value)
    return IntegralValue.from_log(log_value, exact)


@dataclasses.dataclass(frozen=True)
class FamilyPattern:
    """
    The parameter pattern behind a J/K label.

    :param label: the normalized label, e.g. ``"K7'''"``
    :type label: str
    :param space_kind: real (J) or complex (K)
    :type space_kind: SpaceKind
    :param inner_product: True for the families 5 - 8
    :type inner_product: bool
    :param region: the region
    :type region: Region
    :param q_free: True for the ball families 4 and 8 (q = 0)
    :type q_free: bool
    :param measure: Lebesgue for no or two primes, normalized otherwise
    :type measure: Measure
    :param integer_level: True for two or three primes
    :type integer_level: bool
    """
    label: str
    space_kind: SpaceKind
    inner_product: bool
    region: Region
    q_free: bool
    measure: Measure
    integer_level: bool

    @property
    def base(self):
        return self.label.rstrip("'")

    def spec(self, dim, alpha=None, p=2.0, q=0.0, anchor_norm=1.0):
        """
        Builds a spec of this family. The multi-index defaults to
        e_1 = (1, 0, ..., 0); q is forced to 0 for the q-free families.

        :rtype: IntegralSpec
        """
        space = Space(self.space_kind, dim)
        if self.inner_product:
            integrand = InnerProductPower(p, anchor_norm)
        else:
            if alpha is None:
                alpha = [1] + [0] * (space.dim - 1)
            integrand = MonomialAbsPower(alpha, p)
        if self.q_free:
            q = 0.0
        return IntegralSpec(space, self.region, integrand, q, self.measure)


_LABEL_PATTERN = re.compile(r"^([JK])([1-8])('{0,3})$")
_UNICODE_PRIMES = (("‴", "'''"), ("″", "''"), ("′", "'"))
_NUMBER_REGION = {1: Region.GAUSSIAN, 2: Region.SPHERE, 3: Region.BALL,
                  4: Region.BALL}


def parse_family(label):
    """
    Parses a family label such as ``"J6'''"`` (unicode primes are accepted).

    :param label: the label
    :type label: str
    :rtype: FamilyPattern
    :raises UnsupportedFamilyError: for unknown labels
    """
    text = str(label).strip()
    for unicode_prime, ascii_prime in _UNICODE_PRIMES:
        text = text.replace(unicode_prime, ascii_prime)
    match = _LABEL_PATTERN.match(text)
    if match is None:
        raise UnsupportedFamilyError("unknown integral family {!r}".format(
            label))
    letter, number, primes = match.groups()
    number = int(number)
    return FamilyPattern(
        label=text,
        space_kind=SpaceKind.REAL if letter == 'J' else SpaceKind.COMPLEX,
        inner_product=number > 4,
        region=_NUMBER_REGION[(number - 1) % 4 + 1],
        q_free=number in (4, 8),
        measure=(Measure.NORMALIZED if len(primes) % 2 == 1
                 else Measure.STANDARD),
        integer_level=len(primes) >= 2,
    )


def _rational(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return Fraction(repr(float(x)))


def asymptotic_exponent(spec, limit):
    """
    Exponent e of the growth law value ~ t^e |y|^p as t = q or t = p tends to
    infinity, for the families with a known rate:

    * q -> infinity: J3, J7, K3, K7 (and their primed variants)
    * p -> infinity: J6, J7, J8, K6, K7, K8 (and their primed variants)

    :param spec: the integral
    :type spec: IntegralSpec
    :param limit: the parameter that grows
    :type limit: Limit
    :return: the exponent
    :rtype: fractions.Fraction
    :raises UnsupportedFamilyError: for any other family
    """
    limit = Limit(limit)
    integrand = spec.integrand
    complex_space = spec.space.is_complex
    dim = Fraction(spec.space.dim)
    inner = isinstance(integrand, InnerProductPower)
    monomial = isinstance(integrand, MonomialAbsPower)

    if limit is Limit.Q_TO_INFINITY and spec.region is Region.BALL:
        if monomial:
            degree = integrand.alpha.order * _rational(integrand.p)
        elif inner:
            degree = _rational(integrand.p)
        else:
            degree = None
        if degree is not None:
            if complex_space:
                return -(dim + degree / 2)
            return -(dim + degree) / 2

    if limit is Limit.P_TO_INFINITY and inner:
        if spec.region is Region.SPHERE:
            return -(dim - 1) if complex_space else -(dim - 1) / 2
        if spec.region is Region.BALL:
            q = _rational(spec.q)
            return -(dim + q) if complex_space else -(dim + 1 + 2 * q) / 2

    raise UnsupportedFamilyError(
        "unsupported: no asymptotic rate for {} as {} -> infinity".format(
            family_label(spec), limit.value))


def asymptotic_spread(spec, limit, points=DEFAULT_ASYMPTOTIC_POINTS):
    """
    Ratio max / min of value(t) t^(-e) over the sample points, with the
    anchor factor |y|^p removed. A bounded spread is the two-sided growth
    law value ~ t^e.

    :param spec: the integral
    :type spec: IntegralSpec
    :param limit: the parameter that grows
    :type limit: Limit
    :param points: the sample values of t
    :type points: tuple
    :return: the spread, >= 1
    :rtype: float
    """
    limit = Limit(limit)
    exponent = float(asymptotic_exponent(spec, limit))
    integrand = spec.integrand
    if isinstance(integrand, InnerProductPower):
        integrand = dataclasses.replace(integrand, anchor_norm=1.0)

    scaled = []
    for t in points:
        if limit is Limit.Q_TO_INFINITY:
            sample = spec.replace(integrand=integrand, q=t)
        else:
            sample = spec.replace(
                integrand=dataclasses.replace(integrand, p=t))
        value = evaluate(sample, with_exact=False)
        scaled.append(value.log_value - exponent * math.log(t))
    logger.debug("asymptotic log profile for %s: %r", spec, scaled)
    return math.exp(max(scaled) - min(scaled))
