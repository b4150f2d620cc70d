"""Bayesian credibility premiums under random-shift models.

A shift model represents the observation as X = Theta + Y with noise Y
independent of the prior Theta; the premium is the posterior mean
E[Theta | X = x]. Closed forms are available for Gaussian and elliptical
specifications; ``premium_mc`` estimates the generic density-weighted form
by Monte Carlo. Premium formulas follow the row-vector convention
(row vector times matrix on the right).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateDenominatorError, ParameterError, ShapeError
from .linalg import (
    as_matrix,
    as_vector,
    assert_positive_definite,
    assert_positive_semidefinite,
    lu_factor,
    mat_block,
    mat_inverse,
)
from .radial import RadialLaw
from .rng import RngStream, map_blocks
from .samplers import _require_positive


def _frozen_array(obj, field: str, value: np.ndarray) -> None:
    value = value.copy()
    value.setflags(write=False)
    object.__setattr__(obj, field, value)


@dataclass(frozen=True)
class GaussianShiftModel:
    """Prior N(mu, sigma0) with independent noise N(0, sigma).

    sigma and sigma0 must be symmetric positive semidefinite and their sum
    positive definite; the prior covariance alone may be singular.
    """

    mu: np.ndarray
    sigma: np.ndarray
    sigma0: np.ndarray

    def __post_init__(self):
        mu = as_vector(self.mu, "mu")
        sigma = as_matrix(self.sigma, "sigma")
        sigma0 = as_matrix(self.sigma0, "sigma0")
        d = mu.size
        if sigma.shape != (d, d) or sigma0.shape != (d, d):
            raise ShapeError(
                f"sigma and sigma0 must be {d}x{d}, got {sigma.shape} and {sigma0.shape}"
            )
        assert_positive_semidefinite(sigma, "sigma")
        assert_positive_semidefinite(sigma0, "sigma0")
        assert_positive_definite(sigma + sigma0, "sigma + sigma0")
        _frozen_array(self, "mu", mu)
        _frozen_array(self, "sigma", sigma)
        _frozen_array(self, "sigma0", sigma0)

    @property
    def dim(self) -> int:
        return self.mu.size


def premium_scalar(mu: float, sigma2: float, tau2: float, x: float) -> float:
    """Scalar credibility premium x + sigma^2/(sigma^2 + tau^2) * (mu - x)."""
    sigma2 = _require_positive("sigma2", sigma2)
    tau2 = _require_positive("tau2", tau2)
    return float(x) + sigma2 / (sigma2 + tau2) * (float(mu) - float(x))


def premium_gaussian(model: GaussianShiftModel, x, method: str = "sum_inverse") -> np.ndarray:
    """Posterior mean for the Gaussian shift model.

    method="sum_inverse" evaluates x + (mu - x) (sigma + sigma0)^-1 sigma,
    which tolerates a singular prior covariance. method="noise_inverse"
    evaluates the algebraically equal form x + (mu - x)(sigma^-1 sigma0 + I)^-1,
    which additionally requires sigma to be invertible. (Under this row-vector
    convention the noise inverse multiplies sigma0 from the left; the reversed
    product is the column-vector variant and differs whenever the two
    covariances do not commute.)
    """
    x = as_vector(x, "x")
    if x.size != model.dim:
        raise ShapeError(f"x has length {x.size}, expected {model.dim}")
    v = model.mu - x
    if method == "sum_inverse":
        adj = v @ mat_inverse(model.sigma + model.sigma0) @ model.sigma
    elif method == "noise_inverse":
        core = mat_inverse(model.sigma) @ model.sigma0 + np.eye(model.dim)
        adj = v @ mat_inverse(core)
    else:
        raise ParameterError(f"unknown method {method!r}")
    return x + adj


def build_cstar(c) -> np.ndarray:
    """Mixing matrix of (Theta + Y, Theta) given the mixing matrix of (Y, Theta).

    For the 2d x 2d matrix C with index blocks I = first d, J = last d:
    the first d columns become C[:, I] + C[:, J] and the last d stay C[:, J].
    """
    c = as_matrix(c, "C")
    n = c.shape[0]
    if c.shape[1] != n or n % 2 != 0:
        raise ShapeError(f"C must be square with even dimension, got {c.shape}")
    d = n // 2
    i_idx = list(range(d))
    j_idx = list(range(d, n))
    top = np.hstack([mat_block(c, i_idx, i_idx) + mat_block(c, i_idx, j_idx),
                     mat_block(c, i_idx, j_idx)])
    bottom = np.hstack([mat_block(c, j_idx, i_idx) + mat_block(c, j_idx, j_idx),
                        mat_block(c, j_idx, j_idx)])
    return np.vstack([top, bottom])


@dataclass(frozen=True)
class EllipticalShiftModel:
    """Elliptical prior-plus-noise model (Y, Theta) = R U C + nu in 2d dims.

    ``nu`` must vanish on its first d coordinates (the noise offset); the
    premium formula is derived only for that case and other inputs are
    rejected. ``radial`` is carried for sampling contexts and is assumed to
    have finite mean; the closed-form premium never reads it.
    """

    c: np.ndarray
    nu: np.ndarray
    radial: RadialLaw

    def __post_init__(self):
        c = as_matrix(self.c, "C")
        nu = as_vector(self.nu, "nu")
        n = c.shape[0]
        if c.shape[1] != n or n % 2 != 0:
            raise ShapeError(f"C must be square with even dimension, got {c.shape}")
        if nu.size != n:
            raise ShapeError(f"nu has length {nu.size}, expected {n}")
        d = n // 2
        if np.any(nu[:d] != 0.0):
            raise ParameterError("nu must be exactly zero on its first d coordinates")
        if not isinstance(self.radial, RadialLaw):
            raise ParameterError("radial must be a RadialLaw")
        cstar = build_cstar(c)
        b = cstar.T @ cstar
        lu_factor(b)  # raises SingularMatrixError when B is rank-deficient
        _frozen_array(self, "c", c)
        _frozen_array(self, "nu", nu)

    @property
    def dim(self) -> int:
        return self.c.shape[0] // 2

    def b_matrix(self) -> np.ndarray:
        cstar = build_cstar(self.c)
        return cstar.T @ cstar


def premium_elliptical(model: EllipticalShiftModel, x) -> np.ndarray:
    """Posterior mean mu + (x - mu) B_II^-1 B_IJ with B = (C*)^T C*, mu = nu_J."""
    x = as_vector(x, "x")
    d = model.dim
    if x.size != d:
        raise ShapeError(f"x has length {x.size}, expected {d}")
    b = model.b_matrix()
    i_idx = list(range(d))
    j_idx = list(range(d, 2 * d))
    b_ii = mat_block(b, i_idx, i_idx)
    b_ij = mat_block(b, i_idx, j_idx)
    mu = model.nu[d:]
    return mu + (x - mu) @ mat_inverse(b_ii) @ b_ij


@dataclass(frozen=True)
class GenericShiftModel:
    """Shift model given only a prior density and a noise sampler.

    ``prior_density`` maps an (m, d) array of points to (m,) nonnegative
    values and must integrate to one (caller contract, not checked).
    ``noise_sampler(generator, m)`` returns (m, d) i.i.d. noise draws.
    Set ``symmetric_noise`` when Y and -Y share a law; the estimator then
    uses the plus-sign form of the premium (mathematically identical,
    exposed for sign-convention testing).
    """

    prior_density: Callable
    noise_sampler: Callable
    symmetric_noise: bool = False


#: Draws with prior density below this level count as carrying no mass.
_DENSITY_FLOOR = 1e-300
#: Minimum number of mass-carrying draws before the ratio estimate is trusted.
_MIN_LIVE_DRAWS = 50


def premium_mc(model: GenericShiftModel, x, n: int, stream: RngStream,
               workers=None) -> tuple[np.ndarray, np.ndarray]:
    """Monte Carlo premium estimate and per-coordinate standard errors.

    Estimates x -+ E[Y h(x -+ Y)] / E[h(x -+ Y)] with a self-normalized
    ratio over one stream of noise draws (numerator and denominator share
    draws, which correlates them and reduces variance). Standard errors
    come from the delta method on the ratio. Raises
    DegenerateDenominatorError when fewer than 50 draws land where the
    prior density exceeds 1e-300 (x far in the prior's tail).
    """
    x = as_vector(x, "x")
    n = int(n)
    if n < 1000:
        raise ParameterError(f"premium_mc needs n >= 1000, got {n}")
    d = x.size
    sign = 1.0 if model.symmetric_noise else -1.0

    def fill(block, lo, hi):
        m = hi - lo
        y = np.asarray(model.noise_sampler(block.generator(), m), dtype=float)
        if y.ndim == 1:
            y = y[:, None]
        if y.shape != (m, d):
            raise ShapeError(f"noise_sampler returned {y.shape}, expected ({m}, {d})")
        h = np.asarray(model.prior_density(x[None, :] + sign * y), dtype=float)
        return np.hstack([y * h[:, None], h[:, None]])

    packed = map_blocks(stream, n, fill, ncols=d + 1, workers=workers)
    yh = packed[:, :d]
    h = packed[:, d]
    if int((h > _DENSITY_FLOOR).sum()) < _MIN_LIVE_DRAWS:
        raise DegenerateDenominatorError(
            "fewer than 50 draws carry prior mass at x; the query point is "
            "too far in the prior's tail for this sample size"
        )
    denom = h.mean()
    if denom <= 0.0:
        raise DegenerateDenominatorError("denominator estimate is not positive")
    numer = yh.mean(axis=0)
    ratio = numer / denom
    # delta method on the ratio of means, per coordinate
    s_uu = yh.var(axis=0)
    s_vv = h.var()
    s_uv = (yh * h[:, None]).mean(axis=0) - numer * denom
    var_ratio = (s_uu - 2.0 * ratio * s_uv + ratio**2 * s_vv) / (n * denom**2)
    se = np.sqrt(np.maximum(var_ratio, 0.0))
    return x + sign * ratio, se


def shift_joint_sample(prior_sampler: Callable, noise_sampler: Callable, n: int,
                       stream: RngStream, workers=None) -> np.ndarray:
    """n rows of (X, Theta) = (Theta + Y, Theta) with Y independent of Theta.

    Both samplers map (generator, m) to an (m, d) array; the output packs X
    in the first d columns and Theta in the last d.
    """

    def draws(sampler, block_stream, m):
        arr = np.asarray(sampler(block_stream.generator(), m), dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] != m:
            raise ShapeError(f"sampler returned shape {arr.shape}, expected ({m}, d)")
        return arr

    def fill(block, lo, hi):
        m = hi - lo
        theta = draws(prior_sampler, block.child(0), m)
        y = draws(noise_sampler, block.child(1), m)
        if theta.shape != y.shape:
            raise ShapeError(
                f"prior and noise draws disagree: {theta.shape} vs {y.shape}"
            )
        return np.hstack([theta + y, theta])

    d = draws(prior_sampler, stream.child(0), 1).shape[1]
    return map_blocks(stream, n, fill, ncols=2 * d, workers=workers)
