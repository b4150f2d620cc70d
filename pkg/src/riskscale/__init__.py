"""riskscale: simulation and verification of random-shift / random-scale risk models."""

from .config import RunConfig, parse_config
from .credibility import (
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
from .dirichlet import (
    LpSpec,
    RandomPSpec,
    WeightedSpec,
    angular_marginal_cdf,
    angular_sample,
    beta_gamma_sample,
    lp_dirichlet_sample,
    random_p_sample,
    random_scale_sequence_sample,
    weighted_sample,
)
from .errors import (
    ConfigError,
    DegenerateDenominatorError,
    InsufficientTailDataError,
    ParameterError,
    RiskscaleError,
    ShapeError,
    SingularMatrixError,
    UnsupportedModelError,
)
from .gof import GofReport, ks_critical, ks_one_sample, ks_two_sample
from .radial import (
    ChiSquareSqrt,
    ExternalHook,
    GammaPower,
    InvGamma,
    Pareto,
    PointMass,
    RadialLaw,
)
from .rng import RngStream
from .samplers import (
    bernoulli_pm1,
    beta_sample,
    gamma_sample,
    inv_gamma_sample,
    normal_sample,
    pareto_sample,
    y_marginal_sample,
)
from .tails import (
    ClaytonSpec,
    MGB2Model,
    TailQuery,
    archimedean_survival,
    breiman_convergence_check,
    judge_convergence,
    mgb2_conditional_sample,
    mgb2_sample,
    scale_mixture_exp_sample,
    tail_convergence_table,
    tail_dependence_limit,
    tail_ratio_empirical,
)
from .verify import VerifyReport, builtin_verify_suite, render_report

__version__ = "0.1.0"
