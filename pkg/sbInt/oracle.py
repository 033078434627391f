"""
The :mod:`sbInt.oracle` module computes the integrals of
:mod:`sbInt.integral_formulas` without using their closed forms: seeded Monte
Carlo estimates in any dimension, deterministic quadrature in low dimension
and a hybrid of both for ball weights with -1 < q < 0.

Random numbers come from numpy's ``PCG64`` generator. The samples are split
into chunks of ``chunk_size``; chunk ``i`` draws from its own stream seeded
with ``SeedSequence(seed, spawn_key=(i,))``, and the chunk statistics are
merged in chunk order. An estimate is therefore a pure function of
``(spec, samples, seed, chunk_size)``, whatever the number of worker threads.

---------------
Module Contents
---------------
Classes:
    * OracleConfig
    * Estimate
Functions:
    * sample_sphere
    * sample_ball
    * sample_gaussian
    * mc_estimate
    * radial_quadrature
    * quadrature_estimate
    * hybrid_estimate
"""
import dataclasses
import logging
import math
import operator
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import integrate

from sbInt import DEFAULT_CHUNK_SIZE, DEFAULT_RTOL, DEFAULT_SAMPLES
from sbInt.errors import (DivergenceError, DomainError,
                          UnsupportedDimensionError)
from sbInt.integral_formulas import (InnerProductPower, Measure,
                                     MonomialAbsPower, Region, SignedMonomial,
                                     ball_volume, region_measure)
from sbInt.special_functions import LN_PI

logger = logging.getLogger(__name__)

_MAX_SEED = 2 ** 64 - 1
_QUAD_LIMIT = 200


@dataclasses.dataclass(frozen=True)
class OracleConfig:
    """
    Monte Carlo settings.

    :param samples: number of samples, >= 1
    :type samples: int
    :param seed: 64-bit unsigned seed
    :type seed: int
    :param chunk_size: samples per random stream, >= 1
    :type chunk_size: int
    """
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self):
        for name in ('samples', 'seed', 'chunk_size'):
            try:
                value = operator.index(getattr(self, name))
            except TypeError:
                raise DomainError("{} must be an integer, got {!r}".format(
                    name, getattr(self, name)))
            object.__setattr__(self, name, value)
        if self.samples < 1:
            raise DomainError("samples must be positive, got {}".format(
                self.samples))
        if self.chunk_size < 1:
            raise DomainError("chunk_size must be positive, got {}".format(
                self.chunk_size))
        if not 0 <= self.seed <= _MAX_SEED:
            raise DomainError("seed must be a 64-bit unsigned integer, got "
                              "{}".format(self.seed))

    def chunk_sizes(self):
        """
        Returns the number of samples of every chunk, in chunk order.

        :rtype: list
        """
        full, rest = divmod(self.samples, self.chunk_size)
        sizes = [self.chunk_size] * full
        if rest:
            sizes.append(rest)
        return sizes

    def generator(self, chunk_index):
        """
        Returns the random generator of one chunk.

        :param chunk_index: index of the chunk
        :type chunk_index: int
        :rtype: numpy.random.Generator
        """
        sequence = np.random.SeedSequence(self.seed, spawn_key=(chunk_index,))
        return np.random.Generator(np.random.PCG64(sequence))


@dataclasses.dataclass(frozen=True)
class Estimate:
    """
    Result of a randomized computation.

    :param mean: the estimate
    :type mean: float
    :param standard_error: sample standard deviation / sqrt(samples_used)
    :type standard_error: float
    :param samples_used: number of samples
    :type samples_used: int
    """
    mean: float
    standard_error: float
    samples_used: int

    def z_score(self, reference):
        """
        Returns (mean - reference) / standard_error. A zero standard error
        gives 0 for an exact match within DEFAULT_RTOL and infinity
        otherwise.

        :param reference: the value to compare with
        :type reference: float
        :rtype: float
        """
        deviation = self.mean - reference
        if self.standard_error > 0:
            return deviation / self.standard_error
        if math.isclose(self.mean, reference, rel_tol=DEFAULT_RTOL,
                        abs_tol=DEFAULT_RTOL):
            return 0.0
        return math.copysign(math.inf, deviation)

    def agrees_with(self, reference, z_max=4.0, rtol=DEFAULT_RTOL):
        """
        Checks whether the reference lies within z_max standard errors of the
        mean, or within rtol of it (constant integrands have a standard error
        at rounding level).

        :param reference: the value to compare with
        :type reference: float
        :param z_max: admissible number of standard errors
        :type z_max: float
        :param rtol: relative tolerance
        :type rtol: float
        :rtype: bool
        """
        if math.isclose(self.mean, reference, rel_tol=rtol, abs_tol=rtol):
            return True
        return abs(self.z_score(reference)) <= z_max


def sample_sphere(rng, size, real_dim):
    """
    Uniform points on the unit sphere of R^d from normalized standard normal
    vectors.

    :param rng: the random generator
    :type rng: numpy.random.Generator
    :param size: number of points
    :type size: int
    :param real_dim: the real dimension d
    :type real_dim: int
    :return: array of shape (size, real_dim)
    :rtype: np.ndarray
    """
    points = rng.standard_normal((size, real_dim))
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def sample_ball(rng, size, real_dim):
    """
    Uniform points in the unit ball of R^d: a uniform direction times the
    radius U^(1/d).

    :return: the points, shape (size, real_dim), and their squared radii
    :rtype: tuple
    """
    directions = sample_sphere(rng, size, real_dim)
    radii = rng.random(size) ** (1.0 / real_dim)
    return directions * radii[:, np.newaxis], radii ** 2


def sample_gaussian(rng, size, real_dim):
    """
    Points of R^d with density proportional to e^(-|x|^2), i.e. independent
    normal coordinates of variance 1/2.

    :rtype: np.ndarray
    """
    return rng.normal(scale=math.sqrt(0.5), size=(size, real_dim))


def _default_anchor(space):
    if space.is_complex:
        return np.full(space.dim, (1 + 1j) / math.sqrt(2 * space.dim))
    return np.full(space.dim, 1.0 / math.sqrt(space.dim))


def _anchor_vector(space, integrand, anchor_direction):
    if anchor_direction is None:
        direction = _default_anchor(space)
    else:
        dtype = complex if space.is_complex else float
        direction = np.asarray(anchor_direction, dtype=dtype)
        if direction.shape != (space.dim,):
            raise DomainError("the anchor direction must have shape "
                              "({},)".format(space.dim))
        norm = np.linalg.norm(direction)
        if norm == 0:
            raise DomainError("the anchor direction must not vanish")
        direction = direction / norm
    return integrand.anchor_norm * direction


def _integrand_values(spec, points, anchor=None):
    """
    Evaluates the integrand at real coordinate rows (complex points are
    stored as (Re z, Im z)).
    """
    integrand = spec.integrand
    space = spec.space
    if space.is_complex:
        coordinates = points[:, :space.dim] + 1j * points[:, space.dim:]
    else:
        coordinates = points

    if isinstance(integrand, MonomialAbsPower):
        exponents = np.asarray(integrand.alpha, dtype=float) * integrand.p
        return np.prod(np.abs(coordinates) ** exponents, axis=1)
    if isinstance(integrand, InnerProductPower):
        # <z, w> = z_1 conj(w_1) + ... + z_N conj(w_N)
        products = coordinates @ np.conj(anchor)
        return np.abs(products) ** integrand.p
    if isinstance(integrand, SignedMonomial):
        exponents = np.asarray(integrand.alpha, dtype=int)
        return np.prod(coordinates ** exponents, axis=1)
    raise TypeError("unknown integrand {!r}".format(integrand))


def _chunk_statistics(spec, rng, size, anchor):
    real_dim = spec.space.real_dim
    if spec.region is Region.SPHERE:
        values = _integrand_values(spec, sample_sphere(rng, size, real_dim),
                                   anchor)
    elif spec.region is Region.BALL:
        points, radii_sq = sample_ball(rng, size, real_dim)
        values = _integrand_values(spec, points, anchor)
        if spec.q != 0:
            values = values * (1.0 - radii_sq) ** spec.q
    else:
        values = _integrand_values(spec, sample_gaussian(rng, size, real_dim),
                                   anchor)
    mean = float(np.mean(values))
    m2 = float(np.sum((values - mean) ** 2))
    return size, mean, m2


def _merge(first, second):
    # pairwise update of count, mean and sum of squared deviations
    count_a, mean_a, m2_a = first
    count_b, mean_b, m2_b = second
    count = count_a + count_b
    delta = mean_b - mean_a
    mean = mean_a + delta * count_b / count
    m2 = m2_a + m2_b + delta * delta * count_a * count_b / count
    return count, mean, m2


def _measure_scale(spec):
    """
    Total mass of the sampling distribution under the spec's measure.
    """
    real_dim = spec.space.real_dim
    if spec.region is Region.GAUSSIAN:
        log_mass = 0.5 * real_dim * LN_PI
        if spec.measure is Measure.NORMALIZED:
            log_mass -= ball_volume(real_dim).log_value
        return math.exp(log_mass)
    return region_measure(spec.space, spec.region, spec.measure).value


def mc_estimate(spec, config=None, workers=1, anchor_direction=None):
    """
    Monte Carlo estimate of an integral under the spec's measure.

    :param spec: the integral; balls need q >= 0
    :type spec: sbInt.integral_formulas.IntegralSpec
    :param config: sample count, seed and chunk size
    :type config: OracleConfig
    :param workers: number of threads; does not change the result
    :type workers: int
    :param anchor_direction: direction of the anchor y (or w) for inner
        products; defaults to the normalized all-ones vector
    :type anchor_direction: np.ndarray
    :return: the estimate
    :rtype: Estimate
    :raises DomainError: for a ball weight with q < 0
    """
    if config is None:
        config = OracleConfig()
    if spec.region is Region.BALL and spec.q < 0:
        raise DomainError("plain Monte Carlo needs q >= 0 (got q = {}); use "
                          "hybrid_estimate".format(spec.q))
    anchor = None
    if isinstance(spec.integrand, InnerProductPower):
        anchor = _anchor_vector(spec.space, spec.integrand, anchor_direction)

    sizes = config.chunk_sizes()
    logger.debug("Monte Carlo over %d chunks (%d samples, seed %d)",
                 len(sizes), config.samples, config.seed)

    def run_chunk(index):
        return _chunk_statistics(spec, config.generator(index), sizes[index],
                                 anchor)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            statistics = list(pool.map(run_chunk, range(len(sizes))))
    else:
        statistics = [run_chunk(index) for index in range(len(sizes))]

    total = statistics[0]
    for chunk in statistics[1:]:
        total = _merge(total, chunk)
    count, mean, m2 = total

    if count > 1:
        standard_error = math.sqrt(m2 / (count - 1)) / math.sqrt(count)
    else:
        standard_error = 0.0
    scale = _measure_scale(spec)
    estimate = Estimate(mean * scale, standard_error * scale, count)
    logger.debug("Monte Carlo estimate %r", estimate)
    return estimate


def _check_tolerance(tol):
    tol = float(tol)
    if not tol >= 1e-12:
        raise DomainError("quadrature tolerance must be at least 1e-12, got "
                          "{}".format(tol))
    return tol


def _quad(function, lower, upper, tol, **kwargs):
    value, error = integrate.quad(function, lower, upper, epsabs=0.0,
                                  epsrel=tol, limit=_QUAD_LIMIT, **kwargs)
    logger.debug("quad on [%r, %r]: %r (error estimate %r)", lower, upper,
                 value, error)
    return value


def radial_quadrature(effective_dim, power, q, tol=1e-10):
    """
    Computes the radial integral ∫_0^1 r^(d - 1 + power) (1 - r^2)^q dr.

    On [0, 1/√2] the factor r^(d - 1 + power) is handled as an algebraic
    weight. On [1/√2, 1] the substitution u = (1 - r^2)^(q + 1) removes the
    endpoint singularity of (1 - r^2)^q and leaves
    ∫ r^(d - 2 + power) / (2 (q + 1)) du with r = (1 - u^(1/(q+1)))^(1/2).

    :param effective_dim: the real dimension d (any real with d + power > 0)
    :type effective_dim: float
    :param power: homogeneity degree of the integrand
    :type power: float
    :param q: weight exponent, q > -1
    :type q: float
    :param tol: relative tolerance
    :type tol: float
    :return: the integral
    :rtype: float
    :raises DivergenceError: for q <= -1
    """
    tol = _check_tolerance(tol)
    q = float(q)
    if q <= -1:
        raise DivergenceError("the radial integral diverges for q <= -1 (got "
                              "q = {})".format(q))
    exponent = float(effective_dim) - 1.0 + float(power)
    if exponent <= -1:
        raise DomainError("the radial integral needs dim + power > 0")

    split = math.sqrt(0.5)
    inner = _quad(lambda r: (1.0 - r * r) ** q, 0.0, split, tol,
                  weight='alg', wvar=(exponent, 0.0))

    inverse = 1.0 / (q + 1.0)

    def substituted(u):
        r = math.sqrt(1.0 - u ** inverse)
        return r ** (exponent - 1.0) * 0.5 * inverse

    outer = _quad(substituted, 0.0, 0.5 ** (q + 1.0), tol)
    return inner + outer


def _gaussian_radial(effective_dim, power, tol):
    # ∫_0^∞ r^(d - 1 + power) e^(-r^2) dr
    exponent = float(effective_dim) - 1.0 + float(power)
    head = _quad(lambda r: math.exp(-r * r), 0.0, 1.0, tol,
                 weight='alg', wvar=(exponent, 0.0))
    tail = _quad(lambda r: r ** exponent * math.exp(-r * r), 1.0, math.inf,
                 tol)
    return head + tail


def _angular_integral(spec, tol):
    """
    ∫_S g dS of the angular part g of the integrand, with the anchor on the
    first axis.
    """
    space = spec.space
    anchor = None
    if isinstance(spec.integrand, InnerProductPower):
        anchor = np.zeros(space.dim, dtype=complex if space.is_complex
                          else float)
        anchor[0] = spec.integrand.anchor_norm

    if space.real_dim == 1:
        points = np.array([[1.0], [-1.0]])
        return float(np.sum(_integrand_values(spec, points, anchor)))

    def on_circle(theta):
        point = np.array([[math.cos(theta), math.sin(theta)]])
        return float(_integrand_values(spec, point, anchor)[0])

    # |cos|, |sin| have kinks at the quarter angles
    quarter = 0.5 * math.pi
    return sum(_quad(on_circle, j * quarter, (j + 1) * quarter, tol)
               for j in range(4))


def quadrature_estimate(spec, tol=1e-10):
    """
    Deterministic value of a low-dimensional integral: the angular integral
    over the circle (or the two-point sphere of R^1) composed with the
    radial integral of the polar coordinates formula.

    :param spec: the integral, in R^1, R^2 or C^1
    :type spec: sbInt.integral_formulas.IntegralSpec
    :param tol: relative tolerance, >= 1e-12
    :type tol: float
    :return: the value under the spec's measure
    :rtype: float
    :raises UnsupportedDimensionError: in higher dimension
    """
    tol = _check_tolerance(tol)
    space = spec.space
    if space.real_dim > 2:
        raise UnsupportedDimensionError(
            "quadrature supports R^1, R^2 and C^1, got {} dimension "
            "{}".format(space.kind.value, space.dim))

    angular = _angular_integral(spec, tol)
    degree = spec.integrand.degree
    if spec.region is Region.SPHERE:
        radial = 1.0
    elif spec.region is Region.BALL:
        radial = radial_quadrature(space.real_dim, degree, spec.q, tol)
    else:
        radial = _gaussian_radial(space.real_dim, degree, tol)
    value = angular * radial

    if spec.measure is Measure.NORMALIZED:
        value /= region_measure(space, spec.region).value
    return value


def hybrid_estimate(spec, config=None, tol=1e-10, workers=1):
    """
    Ball integral with a singular weight, -1 < q < 0: Monte Carlo for the
    sphere part times radial_quadrature for the radial part.

    :param spec: the integral over the ball
    :type spec: sbInt.integral_formulas.IntegralSpec
    :param config: Monte Carlo settings of the sphere part
    :type config: OracleConfig
    :param tol: relative tolerance of the radial part
    :type tol: float
    :param workers: number of threads of the sphere part
    :type workers: int
    :return: the estimate; its standard error comes from the sphere part
    :rtype: Estimate
    """
    if spec.region is not Region.BALL or not -1 < spec.q < 0:
        raise DomainError("hybrid_estimate needs a ball with -1 < q < 0")
    sphere_part = mc_estimate(spec.replace(region=Region.SPHERE), config,
                              workers=workers)
    real_dim = spec.space.real_dim
    factor = radial_quadrature(real_dim, spec.integrand.degree, spec.q, tol)
    if spec.measure is Measure.NORMALIZED:
        # dν = d r^(d-1) dr dσ
        factor *= real_dim
    return Estimate(sphere_part.mean * factor,
                    sphere_part.standard_error * factor,
                    sphere_part.samples_used)
