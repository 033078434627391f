"""
Tests for the :mod:`sbInt.oracle` module
"""
import math
import random

import numpy as np
import pytest
from scipy.spatial.transform import Rotation as Rotation3d

from sbInt.errors import (DivergenceError, DomainError,
                          UnsupportedDimensionError)
from sbInt.integral_formulas import (InnerProductPower, IntegralSpec, Measure,
                                     MonomialAbsPower, Region, SignedMonomial,
                                     Space, SpaceKind, evaluate)
from sbInt.oracle import (Estimate, OracleConfig, hybrid_estimate,
                          mc_estimate, quadrature_estimate, radial_quadrature,
                          sample_ball, sample_gaussian, sample_sphere)
from sbInt.special_functions import beta

# TOLERANCES
RTOL = 1e-12
QUADRATURE_RTOL = 1e-9

# MAXIMAL DEVIATION IN STANDARD ERRORS
Z_MAX = 4.0

# MONTE CARLO SAMPLES PER SPEC IN THE COVERAGE TEST
COVERAGE_SAMPLES = 1000000


def closed_form(spec):
    return evaluate(spec).value


class TestOracleConfig:
    """
    Tests for the :class:`sbInt.oracle.OracleConfig`
    """
    def test_validation(self):
        """
        Sample counts, seeds and chunk sizes are checked.

        :return: None
        """
        with pytest.raises(DomainError):
            OracleConfig(samples=0)
        with pytest.raises(DomainError):
            OracleConfig(seed=-1)
        with pytest.raises(DomainError):
            OracleConfig(seed=2 ** 64)
        with pytest.raises(DomainError):
            OracleConfig(chunk_size=0)
        with pytest.raises(DomainError):
            OracleConfig(samples=1.5)

    def test_chunk_sizes(self):
        """
        The samples are split into full chunks and a remainder.

        :return: None
        """
        assert OracleConfig(10, 0, 4).chunk_sizes() == [4, 4, 2]
        assert OracleConfig(8, 0, 4).chunk_sizes() == [4, 4]
        assert OracleConfig(3, 0, 100).chunk_sizes() == [3]

    def test_generator_streams(self):
        """
        Every chunk has its own reproducible stream.

        :return: None
        """
        config = OracleConfig(100, 7, 10)

        first = config.generator(3).random(5)
        again = config.generator(3).random(5)
        other = config.generator(4).random(5)

        assert np.all(first == again)
        assert not np.any(first == other)


class TestEstimate:
    """
    Tests for the :class:`sbInt.oracle.Estimate`
    """
    def test_z_score(self):
        """
        Deviation in standard errors.

        :return: None
        """
        estimate = Estimate(1.0, 0.1, 100)

        assert math.isclose(estimate.z_score(1.2), -2.0, rel_tol=RTOL)
        assert estimate.agrees_with(1.3)
        assert not estimate.agrees_with(1.5)

    def test_zero_standard_error(self):
        """
        Constant integrands are compared within the relative tolerance.

        :return: None
        """
        estimate = Estimate(2.0, 0.0, 10)

        assert estimate.z_score(2.0) == 0.0
        assert estimate.z_score(1.0) == math.inf
        assert estimate.agrees_with(2.0 * (1 + 1e-14))
        assert not estimate.agrees_with(2.001)


class TestSamplers:
    """
    Tests for the samplers
    """
    def test_sphere_points(self):
        """
        Sphere points have norm 1.

        :return: None
        """
        rng = np.random.default_rng(1)
        points = sample_sphere(rng, 1000, 5)

        assert points.shape == (1000, 5)
        assert np.allclose(np.linalg.norm(points, axis=1), 1.0, rtol=RTOL)

    def test_sphere_moments(self):
        """
        The mean of x_j^2 on the sphere is 1/n.

        :return: None
        """
        rng = np.random.default_rng(2)
        size = 10 ** 6

        for n in (2, 3, 8):
            squares = sample_sphere(rng, size, n)[:, 0] ** 2
            standard_error = np.std(squares, ddof=1) / math.sqrt(size)

            assert abs(np.mean(squares) - 1.0 / n) <= 5 * standard_error

    def test_ball_points(self):
        """
        Ball points lie inside the ball; the radius is distributed as
        U^(1/n), so E|x|^2 = n / (n + 2).

        :return: None
        """
        rng = np.random.default_rng(3)
        size = 200000

        for n in (1, 2, 4):
            points, radii_sq = sample_ball(rng, size, n)
            norms_sq = np.sum(points ** 2, axis=1)

            assert np.all(norms_sq <= 1.0)
            assert np.allclose(norms_sq, radii_sq, rtol=1e-10)
            standard_error = np.std(radii_sq, ddof=1) / math.sqrt(size)
            assert abs(np.mean(radii_sq) - n / (n + 2)) <= 5 * standard_error

    def test_gaussian_variance(self):
        """
        Coordinates have variance 1/2.

        :return: None
        """
        rng = np.random.default_rng(4)
        points = sample_gaussian(rng, 400000, 3)

        assert np.allclose(np.var(points, axis=0), 0.5, rtol=1e-2)


class TestMonteCarlo:
    """
    Tests for :func:`sbInt.oracle.mc_estimate`
    """
    def test_constant_integrand(self):
        """
        α = 0 on the normalized sphere gives exactly 1.

        :return: None
        """
        spec = IntegralSpec(Space.real(3), Region.SPHERE,
                            MonomialAbsPower([0, 0, 0], 3.0),
                            measure=Measure.NORMALIZED)
        estimate = mc_estimate(spec, OracleConfig(100000, 5))

        assert math.isclose(estimate.mean, 1.0, rel_tol=RTOL)
        assert estimate.standard_error <= RTOL
        assert estimate.samples_used == 100000

    def test_circle(self):
        """
        ∫ cos^2 over the circle is π.

        :return: None
        """
        spec = IntegralSpec(Space.real(2), Region.SPHERE,
                            MonomialAbsPower([1, 0], 2.0))
        estimate = mc_estimate(spec, OracleConfig(10 ** 6, 42))

        assert estimate.agrees_with(math.pi, z_max=Z_MAX)

    def test_complex_ball(self):
        """
        K7''' with N = 2, m = 1, k = 1 is 1/12.

        :return: None
        """
        spec = IntegralSpec(Space.complex(2), Region.BALL,
                            InnerProductPower(2.0), q=1.0,
                            measure=Measure.NORMALIZED)
        estimate = mc_estimate(spec, OracleConfig(10 ** 6, 42))

        assert estimate.agrees_with(1.0 / 12.0, z_max=Z_MAX)

    def test_determinism(self):
        """
        Equal configurations give bit-identical estimates, for any number of
        worker threads.

        :return: None
        """
        spec = IntegralSpec(Space.complex(3), Region.BALL,
                            MonomialAbsPower([1, 2, 0], 1.5), q=0.5)
        config = OracleConfig(50000, 1234, 1000)

        serial = mc_estimate(spec, config)
        again = mc_estimate(spec, config)
        parallel = mc_estimate(spec, config, workers=4)

        assert serial == again
        assert serial == parallel

    def test_seed_changes_estimate(self):
        """
        Different seeds give different estimates.

        :return: None
        """
        spec = IntegralSpec(Space.real(3), Region.GAUSSIAN,
                            InnerProductPower(1.0))

        first = mc_estimate(spec, OracleConfig(10000, 1))
        second = mc_estimate(spec, OracleConfig(10000, 2))

        assert first.mean != second.mean

    def test_negative_q(self):
        """
        Plain Monte Carlo rejects singular ball weights.

        :return: None
        """
        spec = IntegralSpec(Space.real(2), Region.BALL,
                            MonomialAbsPower([1, 0], 2.0), q=-0.5)

        with pytest.raises(DomainError):
            mc_estimate(spec, OracleConfig(1000))

    def test_rotation_invariance(self):
        """
        The inner product integral only depends on the anchor norm.

        :return: None
        """
        spec = IntegralSpec(Space.real(3), Region.BALL,
                            InnerProductPower(3.0, 1.5), q=0.5)
        expected = closed_form(spec)

        for i in range(5):
            rotation = Rotation3d.random(random_state=i)
            direction = rotation.apply(np.array([1.0, 0.0, 0.0]))
            estimate = mc_estimate(spec, OracleConfig(200000, i),
                                   anchor_direction=direction)

            assert estimate.agrees_with(expected, z_max=Z_MAX)

    def test_anchor_direction_validation(self):
        """
        The anchor direction must match the space and must not vanish.

        :return: None
        """
        spec = IntegralSpec(Space.real(3), Region.SPHERE,
                            InnerProductPower(2.0))

        with pytest.raises(DomainError):
            mc_estimate(spec, OracleConfig(100), anchor_direction=[1.0, 0.0])
        with pytest.raises(DomainError):
            mc_estimate(spec, OracleConfig(100),
                        anchor_direction=[0.0, 0.0, 0.0])

    def test_zero_by_symmetry(self):
        """
        Signed monomials with an odd entry average to zero.

        :return: None
        """
        for n in (2, 3, 4):
            for region in (Region.SPHERE, Region.BALL):
                alpha = [1] + [2] * (n - 1)
                spec = IntegralSpec(Space.real(n), region,
                                    SignedMonomial(alpha))
                estimate = mc_estimate(spec, OracleConfig(100000, n))

                assert evaluate(spec).value == 0.0
                assert estimate.agrees_with(0.0, z_max=Z_MAX)

    def test_coverage(self):
        """
        Over 200 random specs the closed form lies within 4 standard errors
        of the Monte Carlo estimate in at least 99% of the cases.

        :return: None
        """
        rng = random.Random(2024)
        passed = 0

        for i in range(200):
            space = Space(rng.choice(list(SpaceKind)), rng.randint(1, 8))
            region = rng.choice(list(Region))
            measure = rng.choice(list(Measure))
            if rng.random() < 0.5:
                alpha = [0] * space.dim
                for j in range(rng.randint(0, 6)):
                    alpha[rng.randrange(space.dim)] += 1
                integrand = MonomialAbsPower(alpha, rng.uniform(0, 6))
            else:
                integrand = InnerProductPower(rng.uniform(0, 6),
                                              rng.uniform(0.5, 2))
            spec = IntegralSpec(space, region, integrand,
                                rng.uniform(0, 5), measure)

            estimate = mc_estimate(spec, OracleConfig(COVERAGE_SAMPLES, i),
                                   workers=4)
            if estimate.agrees_with(closed_form(spec), z_max=Z_MAX):
                passed += 1

        assert passed >= 198


class TestRadialQuadrature:
    """
    Tests for :func:`sbInt.oracle.radial_quadrature`
    """
    def test_values(self):
        """
        Known radial integrals.

        :return: None
        """
        assert math.isclose(radial_quadrature(2, 0, 0), 0.5,
                            rel_tol=QUADRATURE_RTOL)
        assert math.isclose(radial_quadrature(1, 0, -0.5), math.pi / 2,
                            rel_tol=QUADRATURE_RTOL)
        assert math.isclose(radial_quadrature(3, 2, 1), 0.5 * beta(2.5, 2),
                            rel_tol=QUADRATURE_RTOL)

    def test_beta(self):
        """
        ∫ r^(d - 1 + s) (1 - r^2)^q dr = B((d + s)/2, q + 1) / 2.

        :return: None
        """
        for i in range(30):
            dim = random.uniform(0.5, 8)
            power = random.uniform(0, 6)
            q = random.uniform(-0.95, 4)
            expected = 0.5 * beta(0.5 * (dim + power), q + 1)

            assert math.isclose(radial_quadrature(dim, power, q), expected,
                                rel_tol=QUADRATURE_RTOL)

    def test_domain(self):
        """
        q <= -1 diverges; tolerances below 1e-12 are rejected.

        :return: None
        """
        with pytest.raises(DivergenceError):
            radial_quadrature(2, 0, -1)
        with pytest.raises(DomainError):
            radial_quadrature(2, 0, 0, tol=1e-13)


class TestQuadrature:
    """
    Tests for :func:`sbInt.oracle.quadrature_estimate`
    """
    @staticmethod
    def grid():
        """
        Low-dimensional specs over all regions and both measures.
        """
        integrands = {
            Space.real(1): [MonomialAbsPower([0], 0.0),
                            MonomialAbsPower([1], 0.5),
                            MonomialAbsPower([2], 1.0),
                            InnerProductPower(3.0, 0.7)],
            Space.real(2): [MonomialAbsPower([1, 0], 2.0),
                            MonomialAbsPower([1, 1], 0.5),
                            MonomialAbsPower([2, 1], 1.0),
                            InnerProductPower(1.5, 1.2)],
            Space.complex(1): [MonomialAbsPower([1], 2.0),
                               MonomialAbsPower([2], 0.75),
                               InnerProductPower(2.5, 0.8)],
        }
        specs = []
        for space, candidates in integrands.items():
            for integrand in candidates:
                specs.append(IntegralSpec(space, Region.GAUSSIAN, integrand))
                specs.append(IntegralSpec(space, Region.SPHERE, integrand,
                                          measure=Measure.NORMALIZED))
                for q in (-0.5, 0.0, 1.5):
                    specs.append(IntegralSpec(space, Region.BALL, integrand,
                                              q))
        return specs

    def test_examples(self):
        """
        Integrals with elementary values.

        :return: None
        """
        circle = IntegralSpec(Space.real(2), Region.SPHERE,
                              MonomialAbsPower([1, 1], 2.0))
        interval = IntegralSpec(Space.real(1), Region.BALL,
                                MonomialAbsPower([2], 1.0), q=0.5)
        disk = IntegralSpec(Space.complex(1), Region.BALL,
                            MonomialAbsPower([1], 2.0))

        assert math.isclose(quadrature_estimate(circle), math.pi / 4,
                            rel_tol=QUADRATURE_RTOL)
        assert math.isclose(quadrature_estimate(interval), math.pi / 8,
                            rel_tol=QUADRATURE_RTOL)
        assert math.isclose(quadrature_estimate(disk), math.pi / 2,
                            rel_tol=QUADRATURE_RTOL)

    def test_grid(self):
        """
        Quadrature matches the closed forms on the low-dimensional grid.

        :return: None
        """
        specs = self.grid()
        assert len(specs) >= 50

        for spec in specs:
            assert math.isclose(quadrature_estimate(spec, 1e-10),
                                closed_form(spec), rel_tol=QUADRATURE_RTOL)

    def test_convergence(self):
        """
        Halving the tolerance does not increase the deviation from the
        closed form.

        :return: None
        """
        for spec in self.grid()[::5]:
            expected = closed_form(spec)
            coarse = abs(quadrature_estimate(spec, 1e-6) - expected)
            fine = abs(quadrature_estimate(spec, 5e-7) - expected)

            assert fine <= coarse + 1e-14 * expected

    def test_unsupported_dimension(self):
        """
        Quadrature is limited to R^1, R^2 and C^1.

        :return: None
        """
        for space in (Space.real(3), Space.complex(2)):
            spec = IntegralSpec(space, Region.SPHERE, InnerProductPower(2.0))
            with pytest.raises(UnsupportedDimensionError):
                quadrature_estimate(spec)


class TestHybrid:
    """
    Tests for :func:`sbInt.oracle.hybrid_estimate`
    """
    def test_constant_sphere_part(self):
        """
        With a constant integrand only the radial part remains:
        3 ∫ r^2 (1 - r^2)^(-1/2) dr = 3π/4.

        :return: None
        """
        spec = IntegralSpec(Space.real(3), Region.BALL,
                            MonomialAbsPower([0, 0, 0], 0.0), q=-0.5,
                            measure=Measure.NORMALIZED)
        estimate = hybrid_estimate(spec, OracleConfig(1000, 0))

        assert math.isclose(estimate.mean, 3 * math.pi / 4,
                            rel_tol=QUADRATURE_RTOL)
        assert math.isclose(estimate.mean, closed_form(spec),
                            rel_tol=QUADRATURE_RTOL)

    def test_agreement(self):
        """
        Hybrid estimates bracket the closed forms. A constant sphere part
        (the C^1 case) leaves only the quadrature error.

        :return: None
        """
        specs = [
            IntegralSpec(Space.real(2), Region.BALL,
                         MonomialAbsPower([2, 0], 1.0), q=-0.25),
            IntegralSpec(Space.complex(1), Region.BALL,
                         InnerProductPower(2.0), q=-0.5),
            IntegralSpec(Space.real(4), Region.BALL,
                         InnerProductPower(1.5, 2.0), q=-0.9,
                         measure=Measure.NORMALIZED),
        ]

        for spec in specs:
            estimate = hybrid_estimate(spec, OracleConfig(200000, 3))
            assert estimate.agrees_with(closed_form(spec), z_max=Z_MAX,
                                        rtol=QUADRATURE_RTOL)

    def test_domain(self):
        """
        The hybrid path is reserved for balls with -1 < q < 0.

        :return: None
        """
        spec = IntegralSpec(Space.real(2), Region.BALL,
                            MonomialAbsPower([1, 0], 2.0), q=0.5)

        with pytest.raises(DomainError):
            hybrid_estimate(spec, OracleConfig(1000))
