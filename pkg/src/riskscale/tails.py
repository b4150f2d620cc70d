"""Random-scale dependence models and their joint-tail behavior.

Covers the Gamma-mixed exponential scale mixture (whose survival copula is
the Clayton/Archimedean family), the MGB2-type positive risk vector
Theta^(1/a_i) * W_i with its conditional-density sampling route, and the
empirical/limit comparison of the joint tail ratio
P(X_1 > c_1 t, X_2 > c_2 t) / P(X_1 > t), whose limit under a regularly
varying mixer is I(c_1, c_2) = E[min(W_1/c_1, W_2/c_2)^(aq)] / E[W_1^(aq)]
(Breiman's lemma).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InsufficientTailDataError,
    ParameterError,
    UnsupportedModelError,
)
from .gof import GofReport, report
from .radial import RadialLaw, regular_variation_index
from .rng import RngStream, map_blocks
from .samplers import _require_positive, gamma_sample


@dataclass(frozen=True)
class ClaytonSpec:
    """Gamma(theta_shape, 1) mixer dividing d unit exponentials."""

    theta_shape: float
    d: int

    def __post_init__(self):
        object.__setattr__(self, "theta_shape",
                           _require_positive("theta_shape", self.theta_shape))
        d = int(self.d)
        if d < 1:
            raise ParameterError(f"d must be >= 1, got {d}")
        object.__setattr__(self, "d", d)


def scale_mixture_exp_sample(spec: ClaytonSpec, n: int, stream: RngStream,
                             workers=None) -> np.ndarray:
    """n rows of (Y_1/Theta, ..., Y_d/Theta), Y_i i.i.d. Exp(1), Theta Gamma."""

    def fill(block, lo, hi):
        m = hi - lo
        gen = block.generator()
        y = gen.exponential(size=(m, spec.d))
        theta = gamma_sample(spec.theta_shape, 1.0, gen, size=m)
        return y / theta[:, None]

    return map_blocks(stream, n, fill, ncols=spec.d, workers=workers)


def archimedean_survival(spec: ClaytonSpec, x) -> float:
    """Joint survival P(X_1 > x_1, ..., X_d > x_d) = (1 + sum x_i)^(-a)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != spec.d:
        raise ParameterError(f"x has length {x.size}, expected {spec.d}")
    if np.any(x < 0.0) or not np.isfinite(x).all():
        raise ParameterError("coordinates must be finite and nonnegative")
    return float((1.0 + x.sum()) ** (-spec.theta_shape))


@dataclass(frozen=True)
class MGB2Model:
    """Positive risks Theta^(1/a_i) * W_i with Gamma-power factors W_i.

    W_i^(a_i) ~ Gamma(p_i, b_i^(-a_i)), realized as W_i = b_i * G^(1/a_i)
    with G ~ Gamma(p_i, 1) (the two parameterizations coincide in law).
    ``theta_law`` is InvGamma(q) in the classical case; any positive law is
    accepted for sampling.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    p: tuple[float, ...]
    theta_law: RadialLaw

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        p = tuple(float(v) for v in self.p)
        if not (len(a) == len(b) == len(p)) or len(a) < 1:
            raise ParameterError("a, b, p must be non-empty lists of equal length")
        for name, vals in (("a", a), ("b", b), ("p", p)):
            for i, v in enumerate(vals):
                if not np.isfinite(v) or v <= 0.0:
                    raise ParameterError(f"{name}[{i}] must be > 0, got {v}")
        if not isinstance(self.theta_law, RadialLaw):
            raise ParameterError("theta_law must be a RadialLaw")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "p", p)

    @property
    def dim(self) -> int:
        return len(self.a)


def _w_factors(model: MGB2Model, gen, m) -> np.ndarray:
    cols = [model.b[i] * gamma_sample(model.p[i], 1.0, gen, size=m) ** (1.0 / model.a[i])
            for i in range(model.dim)]
    return np.column_stack(cols)


def mgb2_sample(model: MGB2Model, n: int, stream: RngStream,
                workers=None) -> np.ndarray:
    """Scale-mixture route: rows (Theta^(1/a_1) W_1, ..., Theta^(1/a_k) W_k)."""

    def fill(block, lo, hi):
        m = hi - lo
        theta = np.asarray(model.theta_law.sample(block.child(0), size=m))
        w = _w_factors(model, block.child(1).generator(), m)
        powers = np.array([1.0 / ai for ai in model.a])
        return theta[:, None] ** powers[None, :] * w

    return map_blocks(stream, n, fill, ncols=model.dim, workers=workers)


def mgb2_conditional_sample(model: MGB2Model, n: int, stream: RngStream,
                            workers=None) -> np.ndarray:
    """Conditional route: draw theta, then X_i = b_i U_i^(1/a_i) with
    U_i | theta ~ Gamma(p_i, 1/theta), realized as theta times a unit-rate
    Gamma draw. Same law as :func:`mgb2_sample`; used as its oracle."""

    def fill(block, lo, hi):
        m = hi - lo
        theta = np.asarray(model.theta_law.sample(block.child(0), size=m))
        gen = block.child(1).generator()
        cols = []
        for i in range(model.dim):
            u = theta * gamma_sample(model.p[i], 1.0, gen, size=m)
            cols.append(model.b[i] * u ** (1.0 / model.a[i]))
        return np.column_stack(cols)

    return map_blocks(stream, n, fill, ncols=model.dim, workers=workers)


@dataclass(frozen=True)
class TailQuery:
    """Joint-tail query: scaling constants, increasing thresholds, sample size."""

    c1: float
    c2: float
    t_grid: tuple[float, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "c1", _require_positive("c1", self.c1))
        object.__setattr__(self, "c2", _require_positive("c2", self.c2))
        grid = tuple(float(t) for t in self.t_grid)
        if len(grid) < 1:
            raise ParameterError("t_grid must be non-empty")
        for t in grid:
            if not np.isfinite(t) or t <= 0.0:
                raise ParameterError(f"thresholds must be positive, got {t}")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ParameterError("t_grid must be strictly increasing")
        object.__setattr__(self, "t_grid", grid)
        n = int(self.n)
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        object.__setattr__(self, "n", n)


#: Minimum exceedances of {X_1 > t} for any ratio estimate.
MIN_EXCEEDANCES = 20
#: Exceedances required before a threshold counts as converged enough to judge.
JUDGE_EXCEEDANCES = 1000


def tail_ratio_empirical(samples, c1: float, c2: float, t: float
                         ) -> tuple[float, float]:
    """Empirical P(X_1 > c_1 t, X_2 > c_2 t) / P(X_1 > t) with its standard error.

    The standard error is the delta-method value for the ratio of the two
    indicator means; for c_1 >= 1 (nested events) it reduces to the familiar
    binomial form sqrt(r (1 - r) / #exceedances).
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] < 2:
        raise ParameterError("samples must be an n x 2 (or wider) matrix")
    c1 = _require_positive("c1", c1)
    c2 = _require_positive("c2", c2)
    t = _require_positive("t", t)
    x1, x2 = samples[:, 0], samples[:, 1]
    n = samples.shape[0]
    joint = (x1 > c1 * t) & (x2 > c2 * t)
    base = x1 > t
    k = int(joint.sum())
    m = int(base.sum())
    if m < MIN_EXCEEDANCES:
        raise InsufficientTailDataError(
            f"only {m} exceedances of t={t:g}; need at least {MIN_EXCEEDANCES}"
        )
    pa, pb = k / n, m / n
    pab = int((joint & base).sum()) / n
    ratio = pa / pb
    var = (pa * (1 - pa) - 2 * ratio * (pab - pa * pb)
           + ratio**2 * pb * (1 - pb)) / (n * pb**2)
    return ratio, float(np.sqrt(max(var, 0.0)))


def _check_limit_regime(model: MGB2Model) -> tuple[float, float]:
    if model.dim < 2:
        raise UnsupportedModelError("the joint tail limit needs at least 2 components")
    if model.a[0] != model.a[1]:
        raise UnsupportedModelError(
            f"the tail limit assumes a_1 = a_2, got {model.a[0]} and {model.a[1]}"
        )
    try:
        q = regular_variation_index(model.theta_law)
    except ParameterError as exc:
        raise UnsupportedModelError(str(exc)) from exc
    return model.a[0], q


def tail_dependence_limit(model: MGB2Model, c1: float, c2: float, n: int,
                          stream: RngStream, workers=None) -> tuple[float, float]:
    """Monte Carlo estimate of I(c_1, c_2) = E[min(W_1/c_1, W_2/c_2)^(aq)] / E[W_1^(aq)].

    Requires a_1 = a_2 and a regularly varying mixing law (Pareto or
    inverse-Gamma), whose index q enters the moment exponent. The W factors
    are Gamma powers, so every moment used here is finite. Standard error by
    the delta method on the ratio of means.
    """
    a, q = _check_limit_regime(model)
    c1 = _require_positive("c1", c1)
    c2 = _require_positive("c2", c2)
    aq = a * q

    def fill(block, lo, hi):
        m = hi - lo
        w = _w_factors(model, block.generator(), m)
        num = np.minimum(w[:, 0] / c1, w[:, 1] / c2) ** aq
        den = w[:, 0] ** aq
        return np.column_stack([num, den])

    vals = map_blocks(stream, int(n), fill, ncols=2, workers=workers)
    num, den = vals[:, 0], vals[:, 1]
    nn = num.size
    ratio = num.mean() / den.mean()
    s_uu = num.var()
    s_vv = den.var()
    s_uv = (num * den).mean() - num.mean() * den.mean()
    var = (s_uu - 2 * ratio * s_uv + ratio**2 * s_vv) / (nn * den.mean() ** 2)
    return float(ratio), float(np.sqrt(max(var, 0.0)))


def tail_convergence_table(model: MGB2Model, query: TailQuery, stream: RngStream,
                           workers=None) -> list[dict]:
    """Per-threshold comparison rows of empirical ratio vs the limit estimate.

    One sample matrix is shared by all thresholds (shared random numbers),
    so the empirical column is monotone-comparable across the grid.
    Thresholds whose exceedance count falls below the minimum are skipped.
    """
    _check_limit_regime(model)
    samples = mgb2_sample(model, query.n, stream.child(0), workers=workers)
    limit, limit_se = tail_dependence_limit(model, query.c1, query.c2, query.n,
                                            stream.child(1), workers=workers)
    rows = []
    for t in query.t_grid:
        try:
            ratio, se = tail_ratio_empirical(samples, query.c1, query.c2, t)
        except InsufficientTailDataError:
            continue
        exceed = int((samples[:, 0] > t).sum())
        rows.append({"t": t, "empirical_ratio": ratio, "stderr": se,
                     "limit_estimate": limit, "limit_stderr": limit_se,
                     "exceedances": exceed})
    if not rows:
        raise InsufficientTailDataError(
            "no threshold in the grid kept enough exceedances"
        )
    return rows


def judge_convergence(rows: list[dict], n: int) -> GofReport:
    """Verdict over a convergence table: the largest threshold holding at
    least 1000 exceedances (bounded relative error) must agree with the limit
    within max(10% of the limit, 3 combined standard errors)."""
    judged = [r for r in rows if r["exceedances"] >= JUDGE_EXCEEDANCES]
    if not judged:
        raise InsufficientTailDataError(
            f"no threshold reached {JUDGE_EXCEEDANCES} exceedances; "
            "increase n or lower the grid"
        )
    row = judged[-1]
    stat = abs(row["empirical_ratio"] - row["limit_estimate"])
    combined_se = float(np.hypot(row["stderr"], row["limit_stderr"]))
    threshold = max(0.1 * abs(row["limit_estimate"]), 3.0 * combined_se)
    return report("breiman_tail_limit", stat, threshold, n)


def breiman_convergence_check(model: MGB2Model, query: TailQuery,
                              stream: RngStream, workers=None) -> GofReport:
    """Compare the empirical tail ratio against the limit I(c_1, c_2)."""
    rows = tail_convergence_table(model, query, stream, workers=workers)
    return judge_convergence(rows, query.n)
