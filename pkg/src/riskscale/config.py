"""Flat key-value run configurations.

The format is one dotted key per line, ``key = value``, with ``#`` comments
and blank lines ignored. Lists are comma-separated, matrices use ``;``
between rows (``1,0;0,2``), and scaling laws are written ``name:params``
(for example ``point_mass:1``, ``gamma_power:2,0.5,0.5``, ``pareto:2``,
``chi_square_sqrt:4``, ``inv_gamma:2``). Unknown keys are rejected, and
every diagnostic names the offending key and line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .credibility import EllipticalShiftModel, GaussianShiftModel
from .dirichlet import LpSpec, RandomPSpec, WeightedSpec
from .errors import ConfigError, RiskscaleError
from .radial import ChiSquareSqrt, GammaPower, InvGamma, Pareto, PointMass, RadialLaw
from .tails import ClaytonSpec, MGB2Model

COMMANDS = ("sample", "premium", "taildep", "verify")

SAMPLE_KINDS = ("lp_dirichlet", "weighted_dirichlet", "random_p_dirichlet",
                "mgb2", "clayton")
PREMIUM_KINDS = ("gaussian_shift", "elliptical_shift")
TAILDEP_KINDS = ("mgb2",)


@dataclass(frozen=True)
class RunConfig:
    """Validated run description handed to the dispatcher."""

    command: str
    seed: int
    model: object | None = None
    n: int | None = None
    output_path: str | None = None
    x: tuple[float, ...] | None = None
    c1: float | None = None
    c2: float | None = None
    t_grid: tuple[float, ...] | None = None
    audit: bool = False


@dataclass
class _Entry:
    value: str
    line: int
    used: bool = field(default=False)


class _Doc:
    """Parsed key table with line tracking and typed accessors."""

    def __init__(self, text: str):
        self.entries: dict[str, _Entry] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not key:
                raise ConfigError(f"line {lineno}: empty key")
            if key in self.entries:
                raise ConfigError(
                    f"line {lineno}: duplicate key {key!r} "
                    f"(first seen on line {self.entries[key].line})"
                )
            self.entries[key] = _Entry(value, lineno)

    def take(self, key: str, required: bool = True) -> str | None:
        entry = self.entries.get(key)
        if entry is None:
            if required:
                raise ConfigError(f"missing required key {key!r}")
            return None
        entry.used = True
        return entry.value

    def fail(self, key: str, message: str):
        entry = self.entries.get(key)
        where = f"line {entry.line}: " if entry else ""
        raise ConfigError(f"{where}{key}: {message}")

    def reject_unused(self):
        for key, entry in self.entries.items():
            if not entry.used:
                raise ConfigError(f"line {entry.line}: unknown key {key!r}")


def _parse_float(doc: _Doc, key: str, required=True) -> float | None:
    raw = doc.take(key, required)
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        doc.fail(key, f"expected a number, got {raw!r}")


def _parse_int(doc: _Doc, key: str, required=True) -> int | None:
    raw = doc.take(key, required)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        doc.fail(key, f"expected an integer, got {raw!r}")


def _parse_bool(doc: _Doc, key: str) -> bool:
    raw = doc.take(key, required=False)
    if raw is None:
        return False
    lowered = raw.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    doc.fail(key, f"expected true/false, got {raw!r}")


def _parse_floats(doc: _Doc, key: str, required=True) -> tuple[float, ...] | None:
    raw = doc.take(key, required)
    if raw is None:
        return None
    try:
        return tuple(float(part) for part in raw.split(","))
    except ValueError:
        doc.fail(key, f"expected comma-separated numbers, got {raw!r}")


def _parse_matrix(doc: _Doc, key: str) -> list[list[float]]:
    raw = doc.take(key)
    try:
        rows = [[float(v) for v in row.split(",")] for row in raw.split(";")]
    except ValueError:
        doc.fail(key, f"expected rows like '1,0;0,1', got {raw!r}")
    if len({len(r) for r in rows}) != 1:
        doc.fail(key, "rows have unequal lengths")
    return rows


_LAW_ARITY = {
    "point_mass": (PointMass, 1),
    "gamma_power": (GammaPower, 3),
    "chi_square_sqrt": (ChiSquareSqrt, 1),
    "pareto": (Pareto, 1),
    "inv_gamma": (InvGamma, 1),
}


def _parse_law(doc: _Doc, key: str) -> RadialLaw:
    raw = doc.take(key)
    name, _, params = raw.partition(":")
    name = name.strip()
    if name not in _LAW_ARITY:
        doc.fail(key, f"unknown law {name!r}; choose from {sorted(_LAW_ARITY)}")
    cls, arity = _LAW_ARITY[name]
    try:
        values = [float(v) for v in params.split(",")] if params else []
    except ValueError:
        doc.fail(key, f"law parameters must be numbers, got {params!r}")
    if len(values) != arity:
        doc.fail(key, f"{name} takes {arity} parameter(s), got {len(values)}")
    try:
        return cls(*values)
    except RiskscaleError as exc:
        doc.fail(key, str(exc))


def _build_model(doc: _Doc, command: str):
    if command == "verify":
        return None
    kind = doc.take("model.kind")
    allowed = {"sample": SAMPLE_KINDS, "premium": PREMIUM_KINDS,
               "taildep": TAILDEP_KINDS}[command]
    if kind not in allowed:
        doc.fail("model.kind",
                 f"kind {kind!r} is not valid for {command!r}; choose from {allowed}")
    try:
        if kind == "lp_dirichlet":
            spec = LpSpec(alphas=_parse_floats(doc, "model.alphas"),
                          p=_parse_float(doc, "model.p"))
            return spec, _parse_law(doc, "model.radial")
        if kind == "weighted_dirichlet":
            base = LpSpec(alphas=_parse_floats(doc, "model.alphas"),
                          p=_parse_float(doc, "model.p"))
            spec = WeightedSpec(base=base, qs=_parse_floats(doc, "model.qs"))
            return spec, _parse_law(doc, "model.radial")
        if kind == "random_p_dirichlet":
            spec = RandomPSpec(alphas=_parse_floats(doc, "model.alphas"),
                               p_law=_parse_law(doc, "model.p_law"))
            return spec, _parse_law(doc, "model.radial")
        if kind == "mgb2":
            return MGB2Model(a=_parse_floats(doc, "model.a"),
                             b=_parse_floats(doc, "model.b"),
                             p=_parse_floats(doc, "model.p"),
                             theta_law=_parse_law(doc, "model.theta"))
        if kind == "clayton":
            return ClaytonSpec(theta_shape=_parse_float(doc, "model.theta_shape"),
                               d=_parse_int(doc, "model.d"))
        if kind == "gaussian_shift":
            return GaussianShiftModel(mu=_parse_floats(doc, "model.mu"),
                                      sigma=_parse_matrix(doc, "model.sigma"),
                                      sigma0=_parse_matrix(doc, "model.sigma0"))
        if kind == "elliptical_shift":
            return EllipticalShiftModel(c=_parse_matrix(doc, "model.c"),
                                        nu=_parse_floats(doc, "model.nu"),
                                        radial=_parse_law(doc, "model.radial"))
    except ConfigError:
        raise
    except RiskscaleError as exc:
        raise ConfigError(f"model: {exc}") from exc
    raise ConfigError(f"unhandled model kind {kind!r}")  # pragma: no cover


def parse_config(text: str, command: str | None = None,
                 seed: int | None = None, output_path: str | None = None) -> RunConfig:
    """Parse and validate a configuration document.

    ``command``, ``seed``, and ``output_path`` may be supplied by the caller
    (the command line); file keys must agree with a caller-supplied command.
    """
    doc = _Doc(text)

    file_command = doc.take("command", required=False)
    if command is None:
        command = file_command
    elif file_command is not None and file_command != command:
        doc.fail("command",
                 f"file says {file_command!r} but {command!r} was requested")
    if command is None:
        raise ConfigError("missing required key 'command'")
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; choose from {COMMANDS}")

    file_seed = _parse_int(doc, "seed", required=False)
    if seed is None:
        seed = file_seed
    if seed is None:
        raise ConfigError("missing required key 'seed'")

    out = doc.take("out", required=False)
    if output_path is not None:
        out = output_path

    model = _build_model(doc, command)

    n = x = c1 = c2 = t_grid = None
    audit = False
    if command == "sample":
        n = _parse_int(doc, "n")
        if n < 1:
            doc.fail("n", f"must be >= 1, got {n}")
        audit = _parse_bool(doc, "audit")
        if audit:
            kind_ok = isinstance(model, tuple) and isinstance(model[1], PointMass) \
                and isinstance(model[0], (LpSpec, WeightedSpec))
            if not kind_ok:
                doc.fail("audit", "sphere audit needs a fixed-exponent Dirichlet "
                                  "kind with a point_mass radial law")
    elif command == "premium":
        x = _parse_floats(doc, "x")
        dim = model.dim
        if len(x) != dim:
            doc.fail("x", f"length {len(x)} does not match model dimension {dim}")
    elif command == "taildep":
        n = _parse_int(doc, "n")
        if n < 1:
            doc.fail("n", f"must be >= 1, got {n}")
        c1 = _parse_float(doc, "c1")
        c2 = _parse_float(doc, "c2")
        t_grid = _parse_floats(doc, "t_grid")

    doc.reject_unused()
    return RunConfig(command=command, seed=seed, model=model, n=n,
                     output_path=out, x=x, c1=c1, c2=c2, t_grid=t_grid,
                     audit=audit)
