"""Experiment configuration: defaults, ``key = value`` files and overrides."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from ..errors import ConfigError

__all__ = ["ExperimentConfig", "load_config", "parse_config_text", "METHODS", "PROBLEMS"]

METHODS = ("zo-scgs", "zscg")
PROBLEMS = ("quadratic_simplex", "l1_distance", "max_affine")
NOISE_KINDS = ("none", "constant", "sign_of_first_coordinate", "bounded_sine")


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment; ``auto`` fields are resolved from the problem.

    ``regime = auto`` means smooth for the quadratic and non-smooth otherwise.
    ``noise_delta = auto`` means ``epsilon**2 / sqrt(dim)``.
    ``zscg_gamma = auto`` reuses the sliding method's smoothing radius.
    """

    problem: str = "quadratic_simplex"
    dim: int = 100
    seed: int = 0
    lambda_min: float = 1.0
    lambda_max: float = 10.0
    pieces: int = 0
    xi_scale: float = 0.0
    methods: tuple[str, ...] = METHODS
    regime: str = "auto"
    epsilon: float = 0.1
    p: int = 1
    budget: int = 1_000_000
    batch: str = "theory"
    noise: str = "none"
    noise_delta: str = "auto"
    max_inner: str = "auto"
    zscg_gamma: str = "auto"
    zscg_step_numerator: float = 2.0
    zscg_step_shift: float = 2.0
    zscg_directions: str = "gaussian"
    f_star: str = "analytic"
    workers: int = 1
    out: str = "results"

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ConfigError(f"problem must be one of {PROBLEMS}, got {self.problem!r}")
        if self.dim < 2:
            raise ConfigError("dim must be >= 2")
        bad = [m for m in self.methods if m not in METHODS]
        if bad or not self.methods:
            raise ConfigError(f"unknown method(s) {bad}; expected a subset of {METHODS}")
        if self.regime not in ("auto", "smooth", "nonsmooth"):
            raise ConfigError(f"regime must be auto, smooth or nonsmooth, got {self.regime!r}")
        if self.regime == "smooth" and self.problem != "quadratic_simplex":
            raise ConfigError("the smooth regime needs a smooth problem")
        if self.p not in (1, 2):
            raise ConfigError("p must be 1 or 2")
        if not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")
        if self.budget < 1:
            raise ConfigError("budget must be >= 1")
        if self.batch != "theory":
            try:
                b = int(self.batch)
            except ValueError:
                raise ConfigError(f"batch must be 'theory' or a positive integer, got {self.batch!r}") from None
            if b < 1:
                raise ConfigError("fixed batch must be >= 1")
        if self.noise not in NOISE_KINDS:
            raise ConfigError(f"noise must be one of {NOISE_KINDS}, got {self.noise!r}")
        for name in ("noise_delta", "zscg_gamma", "max_inner"):
            value = getattr(self, name)
            if value != "auto":
                try:
                    ok = float(value) >= 0
                except ValueError:
                    ok = False
                if not ok:
                    raise ConfigError(f"{name} must be 'auto' or a non-negative number, got {value!r}")
        if self.zscg_directions not in ("gaussian", "sphere"):
            raise ConfigError("zscg_directions must be gaussian or sphere")
        if self.f_star not in ("analytic", "reference"):
            raise ConfigError("f_star must be analytic or reference")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    @property
    def resolved_regime(self) -> str:
        if self.regime != "auto":
            return self.regime
        return "smooth" if self.problem == "quadratic_simplex" else "nonsmooth"

    @property
    def fixed_batch(self) -> int | None:
        return None if self.batch == "theory" else int(self.batch)

    @property
    def resolved_noise_delta(self) -> float:
        if self.noise_delta == "auto":
            return self.epsilon**2 / math.sqrt(self.dim)
        return float(self.noise_delta)

    def with_overrides(self, **kwargs) -> "ExperimentConfig":
        return replace(self, **_coerce_all(kwargs))

    def to_text(self) -> str:
        lines = []
        for key, value in asdict(self).items():
            if isinstance(value, (tuple, list)):
                value = ",".join(value)
            lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _coerce(key: str, raw):
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown config key {key!r}")
    kind = _FIELD_TYPES[key]
    if not isinstance(raw, str):
        if kind.startswith("tuple"):
            return tuple(raw)
        if kind == "str":
            return str(raw)
        return raw
    raw = raw.strip()
    try:
        if kind == "int":
            return int(float(raw)) if "e" in raw.lower() else int(raw)
        if kind == "float":
            return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as {kind}") from None
    if kind.startswith("tuple"):
        return tuple(s.strip() for s in raw.split(",") if s.strip())
    return raw


def _coerce_all(values: dict) -> dict:
    return {k: _coerce(k, v) for k, v in values.items()}


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        values[key.strip()] = value.strip()
    return _coerce_all(values)


def load_config(path=None, **overrides) -> ExperimentConfig:
    values = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from None
        values.update(parse_config_text(text))
    values.update(_coerce_all({k: v for k, v in overrides.items() if v is not None}))
    return ExperimentConfig(**values)
