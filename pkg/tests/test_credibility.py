import numpy as np
import pytest

from riskscale.credibility import (
    EllipticalShiftModel,
    GaussianShiftModel,
    GenericShiftModel,
    build_cstar,
    premium_elliptical,
    premium_gaussian,
    premium_mc,
    premium_scalar,
    shift_joint_sample,
)
from riskscale.errors import (
    DegenerateDenominatorError,
    ParameterError,
    ShapeError,
    SingularMatrixError,
)
from riskscale.radial import ChiSquareSqrt, Pareto, PointMass
from riskscale.rng import RngStream


def _gaussian_density(mu, tau2):
    def h(points):
        return np.exp(-(points[:, 0] - mu) ** 2 / (2 * tau2)) / np.sqrt(2 * np.pi * tau2)
    return h


class TestScalarPremium:
    def test_reference_value(self):
        # frozen from the Monte Carlo posterior-mean oracle (see TestPremiumMC)
        assert premium_scalar(0.0, 1.0, 3.0, 4.0) == 3.0

    def test_fixed_point_at_prior_mean(self):
        assert premium_scalar(5.0, 2.0, 7.0, 5.0) == 5.0

    def test_vanishing_credibility_weight(self):
        assert abs(premium_scalar(5.0, 1.0, 1e12, 2.0) - 2.0) < 1e-9

    def test_parameter_errors(self):
        with pytest.raises(ParameterError):
            premium_scalar(0.0, -1.0, 1.0, 0.0)
        with pytest.raises(ParameterError):
            premium_scalar(0.0, 1.0, 0.0, 0.0)


class TestGaussianModel:
    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            GaussianShiftModel(mu=[0.0, 0.0], sigma=np.eye(3), sigma0=np.eye(3))

    def test_non_square_sigma(self):
        with pytest.raises(ShapeError):
            GaussianShiftModel(mu=[0.0, 0.0], sigma=np.ones((2, 3)), sigma0=np.eye(2))

    def test_asymmetric_rejected(self):
        with pytest.raises(ParameterError):
            GaussianShiftModel(mu=[0.0, 0.0], sigma=[[1.0, 0.3], [0.0, 1.0]],
                               sigma0=np.eye(2))

    def test_indefinite_rejected(self):
        with pytest.raises(ParameterError):
            GaussianShiftModel(mu=[0.0], sigma=[[-1.0]], sigma0=[[2.0]])

    def test_degenerate_sum_rejected(self):
        with pytest.raises(SingularMatrixError):
            GaussianShiftModel(mu=[0.0, 0.0], sigma=np.zeros((2, 2)),
                               sigma0=[[1.0, 1.0], [1.0, 1.0]])

    def test_singular_prior_allowed(self):
        model = GaussianShiftModel(mu=[0.0, 0.0], sigma=np.eye(2),
                                   sigma0=[[1.0, 1.0], [1.0, 1.0]])
        assert np.isfinite(premium_gaussian(model, [1.0, 2.0])).all()


class TestGaussianPremium:
    def test_scalar_case(self):
        model = GaussianShiftModel(mu=[0.0], sigma=[[1.0]], sigma0=[[3.0]])
        assert np.allclose(premium_gaussian(model, [4.0]), [3.0])

    def test_zero_noise_returns_observation(self):
        model = GaussianShiftModel(mu=[5.0, -1.0], sigma=np.zeros((2, 2)),
                                   sigma0=np.eye(2))
        x = np.array([2.0, 7.0])
        assert np.array_equal(premium_gaussian(model, x), x)

    def test_diagonal_reduces_to_scalar_premiums(self):
        model = GaussianShiftModel(mu=[0.0, 0.0], sigma=[[1.0, 0.0], [0.0, 2.0]],
                                   sigma0=[[2.0, 0.0], [0.0, 1.0]])
        value = premium_gaussian(model, [3.0, 3.0])
        expected = [premium_scalar(0.0, 1.0, 2.0, 3.0),
                    premium_scalar(0.0, 2.0, 1.0, 3.0)]
        assert np.allclose(value, expected, atol=1e-12)
        assert np.allclose(value, [2.0, 1.0], atol=1e-12)

    def test_forms_agree_on_random_instances(self):
        gen = RngStream(200).generator()
        for _ in range(20):
            a = gen.standard_normal((3, 3))
            b = gen.standard_normal((3, 3))
            model = GaussianShiftModel(mu=gen.standard_normal(3),
                                       sigma=a.T @ a + 0.5 * np.eye(3),
                                       sigma0=b.T @ b + 0.5 * np.eye(3))
            x = gen.standard_normal(3)
            first = premium_gaussian(model, x, method="sum_inverse")
            second = premium_gaussian(model, x, method="noise_inverse")
            assert np.abs(first - second).max() < 1e-10

    def test_noise_inverse_requires_invertible_sigma(self):
        model = GaussianShiftModel(mu=[0.0], sigma=[[0.0]], sigma0=[[1.0]])
        with pytest.raises(SingularMatrixError):
            premium_gaussian(model, [1.0], method="noise_inverse")

    def test_affine_consistency_doubling_is_exact(self):
        gen = RngStream(201).generator()
        a = gen.standard_normal((3, 3))
        b = gen.standard_normal((3, 3))
        sigma = a.T @ a + 0.5 * np.eye(3)
        sigma0 = b.T @ b + 0.5 * np.eye(3)
        mu = gen.standard_normal(3)
        x = gen.standard_normal(3)
        adj = premium_gaussian(GaussianShiftModel(mu, sigma, sigma0), x) - x
        doubled_mu = x + 2.0 * (mu - x)
        adj2 = premium_gaussian(GaussianShiftModel(doubled_mu, sigma, sigma0), x) - x
        assert np.array_equal(adj2, 2.0 * adj)

    def test_dimension_mismatch(self):
        model = GaussianShiftModel(mu=[0.0], sigma=[[1.0]], sigma0=[[1.0]])
        with pytest.raises(ShapeError):
            premium_gaussian(model, [1.0, 2.0])


class TestBuildCstar:
    def test_identity_input(self):
        got = build_cstar(np.eye(6))
        d = 3
        assert np.array_equal(got[:d, :d], np.eye(d))
        assert np.array_equal(got[:d, d:], np.zeros((d, d)))
        assert np.array_equal(got[d:, :d], np.eye(d))
        assert np.array_equal(got[d:, d:], np.eye(d))

    def test_block_diagonal_input(self):
        gen = RngStream(202).generator()
        cii = gen.standard_normal((2, 2))
        cjj = gen.standard_normal((2, 2))
        c = np.zeros((4, 4))
        c[:2, :2] = cii
        c[2:, 2:] = cjj
        got = build_cstar(c)
        assert np.array_equal(got[:2, :2], cii)
        assert np.array_equal(got[:2, 2:], np.zeros((2, 2)))
        assert np.array_equal(got[2:, :2], cjj)
        assert np.array_equal(got[2:, 2:], cjj)

    def test_general_blocks_by_hand(self):
        gen = RngStream(203).generator()
        c = gen.standard_normal((4, 4))
        got = build_cstar(c)
        manual = np.block([
            [c[:2, :2] + c[:2, 2:], c[:2, 2:]],
            [c[2:, :2] + c[2:, 2:], c[2:, 2:]],
        ])
        assert np.array_equal(got, manual)

    def test_gram_of_identity_cstar(self):
        # hand block multiplication: (C*)^T C* for C = I_2d
        cstar = build_cstar(np.eye(4))
        gram = cstar.T @ cstar
        expected = np.block([[2 * np.eye(2), np.eye(2)], [np.eye(2), np.eye(2)]])
        assert np.array_equal(gram, expected)

    def test_odd_dimension_rejected(self):
        with pytest.raises(ShapeError):
            build_cstar(np.eye(3))


class TestEllipticalPremium:
    def _block_diag_model(self, gen, d=3):
        a = gen.standard_normal((d, d))
        b = gen.standard_normal((d, d))
        sigma = a.T @ a + 0.5 * np.eye(d)
        sigma0 = b.T @ b + 0.5 * np.eye(d)
        mu = gen.standard_normal(d)
        c = np.zeros((2 * d, 2 * d))
        c[:d, :d] = np.linalg.cholesky(sigma).T
        c[d:, d:] = np.linalg.cholesky(sigma0).T
        elliptical = EllipticalShiftModel(c=c, nu=np.concatenate([np.zeros(d), mu]),
                                          radial=PointMass(1.0))
        gaussian = GaussianShiftModel(mu=mu, sigma=sigma, sigma0=sigma0)
        return elliptical, gaussian

    def test_block_diagonal_reduction(self):
        gen = RngStream(204).generator()
        for _ in range(20):
            elliptical, gaussian = self._block_diag_model(gen)
            x = gen.standard_normal(3)
            diff = premium_elliptical(elliptical, x) - premium_gaussian(gaussian, x)
            assert np.abs(diff).max() < 1e-9

    def test_fixed_point_at_mu(self):
        gen = RngStream(205).generator()
        elliptical, _ = self._block_diag_model(gen)
        mu = elliptical.nu[3:]
        assert np.allclose(premium_elliptical(elliptical, mu), mu, atol=1e-12)

    def test_identity_mixing_halves_observation(self):
        model = EllipticalShiftModel(c=np.eye(4), nu=np.zeros(4),
                                     radial=ChiSquareSqrt(4.0))
        x = np.array([3.0, 5.0])
        assert np.allclose(premium_elliptical(model, x), x / 2.0, atol=1e-12)

    def test_radial_choice_never_enters(self):
        c = RngStream(206).generator().standard_normal((4, 4))
        x = [1.0, -2.0]
        values = [
            premium_elliptical(
                EllipticalShiftModel(c=c, nu=[0.0, 0.0, 1.0, 2.0], radial=law), x)
            for law in (PointMass(1.0), Pareto(2.0))
        ]
        assert np.array_equal(values[0], values[1])

    def test_nonzero_noise_offset_rejected(self):
        with pytest.raises(ParameterError):
            EllipticalShiftModel(c=np.eye(4), nu=[0.1, 0.0, 0.0, 0.0],
                                 radial=PointMass(1.0))

    def test_singular_mixing_rejected(self):
        with pytest.raises(SingularMatrixError):
            EllipticalShiftModel(c=np.zeros((4, 4)), nu=np.zeros(4),
                                 radial=PointMass(1.0))


class TestPremiumMC:
    def test_scalar_gaussian_matches_closed_form(self):
        model = GenericShiftModel(
            prior_density=_gaussian_density(0.0, 3.0),
            noise_sampler=lambda gen, m: gen.standard_normal((m, 1)),
        )
        est, se = premium_mc(model, [4.0], 10**6, RngStream(207))
        assert abs(est[0] - 3.0) < 3.0 * se[0]
        assert se[0] < 0.01

    def test_flat_prior_returns_observation(self):
        model = GenericShiftModel(
            prior_density=lambda pts: np.full(pts.shape[0], 1e-4),
            noise_sampler=lambda gen, m: gen.standard_normal((m, 1)),
            symmetric_noise=True,
        )
        est, se = premium_mc(model, [2.0], 10**5, RngStream(208))
        assert abs(est[0] - 2.0) < 3.0 * max(se[0], 1e-12) + 1e-9

    def test_sign_conventions_agree_for_symmetric_noise(self):
        def noise(gen, m):
            return gen.standard_normal((m, 1))

        h = _gaussian_density(0.0, 3.0)
        plus = premium_mc(GenericShiftModel(h, noise, symmetric_noise=True),
                          [4.0], 10**5, RngStream(209))
        minus = premium_mc(GenericShiftModel(h, noise, symmetric_noise=False),
                           [4.0], 10**5, RngStream(209))
        # same draws, mirrored usage: estimates agree within joint error bars
        assert abs(plus[0][0] - minus[0][0]) < 3.0 * (plus[1][0] + minus[1][0])

    def test_bivariate_matches_gaussian_closed_form(self):
        sigma = np.array([[1.0, 0.3], [0.3, 2.0]])
        sigma0 = np.array([[2.0, -0.4], [-0.4, 1.0]])
        mu = np.array([0.5, -0.5])
        chol_noise = np.linalg.cholesky(sigma)
        inv0 = np.linalg.inv(sigma0)

        def h(points):
            centered = points - mu
            quad = np.einsum("ij,jk,ik->i", centered, inv0, centered)
            return np.exp(-0.5 * quad)  # normalizing constant cancels

        model = GenericShiftModel(
            prior_density=h,
            noise_sampler=lambda gen, m: gen.standard_normal((m, 2)) @ chol_noise.T,
        )
        x = np.array([3.0, 1.0])
        est, se = premium_mc(model, x, 10**6, RngStream(210))
        exact = premium_gaussian(GaussianShiftModel(mu, sigma, sigma0), x)
        assert np.all(np.abs(est - exact) < 3.0 * se)

    def test_repeated_seeds_stay_within_three_standard_errors(self):
        model = GenericShiftModel(
            prior_density=_gaussian_density(0.0, 3.0),
            noise_sampler=lambda gen, m: gen.standard_normal((m, 1)),
        )
        hits = 0
        reps = 100
        for k in range(reps):
            est, se = premium_mc(model, [4.0], 10**6, RngStream(211, k))
            hits += abs(est[0] - 3.0) < 3.0 * se[0]
        assert hits >= 99

    def test_degenerate_denominator(self):
        model = GenericShiftModel(
            prior_density=lambda pts: np.where(np.abs(pts[:, 0]) < 0.5, 1.0, 0.0),
            noise_sampler=lambda gen, m: gen.standard_normal((m, 1)),
        )
        with pytest.raises(DegenerateDenominatorError):
            premium_mc(model, [100.0], 10**4, RngStream(212))

    def test_minimum_sample_size(self):
        model = GenericShiftModel(
            prior_density=_gaussian_density(0.0, 1.0),
            noise_sampler=lambda gen, m: gen.standard_normal((m, 1)),
        )
        with pytest.raises(ParameterError):
            premium_mc(model, [0.0], 999, RngStream(213))

    def test_deterministic_given_stream(self):
        model = GenericShiftModel(
            prior_density=_gaussian_density(0.0, 3.0),
            noise_sampler=lambda gen, m: gen.standard_normal((m, 1)),
        )
        first = premium_mc(model, [4.0], 10**4, RngStream(214), workers=1)
        second = premium_mc(model, [4.0], 10**4, RngStream(214), workers=4)
        assert np.array_equal(first[0], second[0])
        assert np.array_equal(first[1], second[1])


class TestShiftJointSample:
    def test_zero_noise_collapses(self):
        rows = shift_joint_sample(
            lambda gen, m: gen.standard_normal((m, 2)),
            lambda gen, m: np.zeros((m, 2)),
            1000, RngStream(215))
        assert np.array_equal(rows[:, :2], rows[:, 2:])

    def test_covariance_structure(self):
        sigma = np.array([[1.0, 0.2], [0.2, 0.5]])
        sigma0 = np.array([[0.8, -0.1], [-0.1, 1.2]])
        chol = np.linalg.cholesky(sigma)
        chol0 = np.linalg.cholesky(sigma0)
        n = 10**5
        rows = shift_joint_sample(
            lambda gen, m: gen.standard_normal((m, 2)) @ chol0.T,
            lambda gen, m: gen.standard_normal((m, 2)) @ chol.T,
            n, RngStream(216))
        emp = np.cov(rows, rowvar=False)
        expected = np.block([[sigma + sigma0, sigma0], [sigma0, sigma0]])
        assert np.abs(emp - expected).max() < 5.0 / np.sqrt(n)

    def test_binned_posterior_mean_approaches_premium(self):
        # conditioning oracle, deliberately coarse: average Theta over draws
        # with X near x should approach the closed-form premium
        tau2, sigma2, x = 3.0, 1.0, 2.0
        n = 4 * 10**5
        rows = shift_joint_sample(
            lambda gen, m: np.sqrt(tau2) * gen.standard_normal((m, 1)),
            lambda gen, m: np.sqrt(sigma2) * gen.standard_normal((m, 1)),
            n, RngStream(217))
        near = np.abs(rows[:, 0] - x) < 0.25
        assert near.sum() > 1000
        posterior_mean = rows[near, 1].mean()
        assert abs(posterior_mean - premium_scalar(0.0, sigma2, tau2, x)) < 0.15
