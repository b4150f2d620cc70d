"""Batch command line front end.

Usage: ``riskscale <command> --config <path> [--seed N] [--out <path>]``
with commands sample, premium, taildep, and verify. Results are CSV files
(17 significant digits, '.' decimal separator) or, for verify, a line-per-
check report. Identical configuration and seed produce byte-identical
output. The RISKSCALE_THREADS environment variable caps the worker count.

Exit status: 0 ok, 1 verification check failed, 2 usage or parse error,
3 numeric/model error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import RunConfig, parse_config
from .credibility import (
    EllipticalShiftModel,
    GaussianShiftModel,
    premium_elliptical,
    premium_gaussian,
)
from .dirichlet import (
    LpSpec,
    RandomPSpec,
    WeightedSpec,
    lp_dirichlet_sample,
    random_p_sample,
    weighted_sample,
)
from .errors import ConfigError, RiskscaleError
from .radial import PointMass
from .rng import RngStream
from .tails import ClaytonSpec, MGB2Model, TailQuery, mgb2_sample, \
    scale_mixture_exp_sample, tail_convergence_table
from .verify import builtin_verify_suite, render_report

SPHERE_AUDIT_TOL = 1e-12


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _csv(header: list[str], rows: list[list[float]]) -> str:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _run_sample(config: RunConfig, stream: RngStream, workers) -> str:
    model = config.model
    if isinstance(model, tuple):  # Dirichlet kinds carry (spec, radial law)
        spec, radial = model
        if isinstance(spec, LpSpec):
            rows = lp_dirichlet_sample(spec, radial, config.n, stream, workers=workers)
        elif isinstance(spec, WeightedSpec):
            rows = weighted_sample(spec, radial, config.n, stream, workers=workers)
        else:
            assert isinstance(spec, RandomPSpec)
            rows = random_p_sample(spec, radial, config.n, stream, workers=workers)
        if config.audit:
            _sphere_audit(spec, radial, rows)
    elif isinstance(model, MGB2Model):
        rows = mgb2_sample(model, config.n, stream, workers=workers)
    else:
        assert isinstance(model, ClaytonSpec)
        rows = scale_mixture_exp_sample(model, config.n, stream, workers=workers)
    header = [f"x{i + 1}" for i in range(rows.shape[1])]
    return _csv(header, rows.tolist())


def _sphere_audit(spec, radial: PointMass, rows: np.ndarray) -> None:
    base = spec.base if isinstance(spec, WeightedSpec) else spec
    scaled = np.abs(rows) / radial.value
    deviation = float(np.abs((scaled ** base.p).sum(axis=1) - 1.0).max())
    if deviation > SPHERE_AUDIT_TOL:
        raise RiskscaleError(
            f"sphere self-audit failed: max deviation {deviation:.3e} "
            f"exceeds {SPHERE_AUDIT_TOL:g}"
        )


def _run_premium(config: RunConfig) -> str:
    if isinstance(config.model, GaussianShiftModel):
        value = premium_gaussian(config.model, config.x)
    else:
        assert isinstance(config.model, EllipticalShiftModel)
        value = premium_elliptical(config.model, config.x)
    header = [f"p{i + 1}" for i in range(value.size)]
    return _csv(header, [list(value)])


def _run_taildep(config: RunConfig, stream: RngStream, workers) -> str:
    query = TailQuery(c1=config.c1, c2=config.c2, t_grid=config.t_grid, n=config.n)
    rows = tail_convergence_table(config.model, query, stream, workers=workers)
    header = ["t", "empirical_ratio", "stderr", "limit_estimate", "limit_stderr"]
    table = [[r["t"], r["empirical_ratio"], r["stderr"],
              r["limit_estimate"], r["limit_stderr"]] for r in rows]
    return _csv(header, table)


def run(config: RunConfig, workers: int | None = None) -> int:
    """Execute a validated configuration; returns the process exit status."""
    stream = RngStream(config.seed)
    if config.command == "verify":
        result = builtin_verify_suite(config.seed, workers=workers)
        _write(config.output_path, render_report(result))
        return 0 if result.overall_pass else 1
    if config.command == "sample":
        text = _run_sample(config, stream, workers)
    elif config.command == "premium":
        text = _run_premium(config)
    else:
        text = _run_taildep(config, stream, workers)
    _write(config.output_path, text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskscale",
        description="Sample risk models, evaluate credibility premiums, and "
                    "verify distributional identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in (
        ("sample", "draw model samples to CSV"),
        ("premium", "evaluate a closed-form credibility premium"),
        ("taildep", "tabulate empirical vs limiting joint tail ratios"),
        ("verify", "run the built-in verification suite"),
    ):
        cmd = sub.add_parser(name, help=blurb)
        cmd.add_argument("--config", required=True, help="path to a key=value file")
        cmd.add_argument("--seed", type=int, default=None,
                         help="override the seed from the config file")
        cmd.add_argument("--out", default=None,
                         help="output path (default: config 'out' key or stdout)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"riskscale: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        config = parse_config(text, command=args.command, seed=args.seed,
                              output_path=args.out)
        return run(config)
    except ConfigError as exc:
        print(f"riskscale: config error: {exc}", file=sys.stderr)
        return 2
    except RiskscaleError as exc:
        print(f"riskscale: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
