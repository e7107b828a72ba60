"""JSON run configuration.

The file is a flat object (only the distribution descriptor nests), so
sweep scripts in any language can write one. All randomness in a run
flows from the single ``seed`` field.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .distributions import UniformOffers, validate_assumptions
from .errors import ConfigError
from .params import ExtensionSpec, MarketParams

_DEFAULTS = {
    "delta_belief": None,   # falls back to delta_true
    "len_belief": None,     # falls back to len_true
    "distribution": {"type": "uniform", "low": 0.0, "high": 1.0},
    "tol": 1e-12,
    "max_iter": 100_000,
    "max_periods": 2_000,
    "seed": 0,
    "spells": 1_000_000,
}
_REQUIRED = ("beta", "z", "c", "N", "delta_true", "len_true")

# Field blamed when a cross-field solver assumption fails.
_ASSUMPTION_FIELD = {
    "w_low < (1 - beta) * z + beta * mean_wage": "z",
    "z > 0": "z",
    "z + c < w_high": "c",
    "0 < beta < 1": "beta",
    "c > 0": "c",
}


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs for one CLI run."""

    beta: float
    z: float
    c: float
    n_periods: int
    delta_true: float
    len_true: int
    delta_belief: float
    len_belief: int
    distribution: UniformOffers
    tol: float
    max_iter: int
    max_periods: int
    seed: int
    spells: int

    @property
    def params(self) -> MarketParams:
        return MarketParams(beta=self.beta, z=self.z, c=self.c,
                            n_periods=self.n_periods)

    @property
    def truth(self) -> ExtensionSpec:
        return ExtensionSpec(delta=self.delta_true, length=self.len_true)

    @property
    def belief(self) -> ExtensionSpec:
        return ExtensionSpec(delta=self.delta_belief, length=self.len_belief)


def _require_number(data, field, lo=None, hi=None, lo_open=False, hi_open=False):
    value = data[field]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(field, f"expected a number, got {value!r}")
    value = float(value)
    if lo is not None and (value <= lo if lo_open else value < lo):
        raise ConfigError(field, f"value {value} below the admissible range")
    if hi is not None and (value >= hi if hi_open else value > hi):
        raise ConfigError(field, f"value {value} above the admissible range")
    return value


def _require_int(data, field, lo):
    value = data[field]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(field, f"expected an integer, got {value!r}")
    if value < lo:
        raise ConfigError(field, f"value {value} must be at least {lo}")
    return value


def _build_distribution(descriptor):
    if not isinstance(descriptor, dict) or "type" not in descriptor:
        raise ConfigError("distribution", "expected an object with a 'type' key")
    if descriptor["type"] != "uniform":
        raise ConfigError("distribution",
                          f"unsupported type {descriptor['type']!r}")
    low = descriptor.get("low", 0.0)
    high = descriptor.get("high", 1.0)
    if not isinstance(low, (int, float)) or not isinstance(high, (int, float)):
        raise ConfigError("distribution", "low and high must be numbers")
    if not low < high:
        raise ConfigError("distribution", "low must be strictly less than high")
    return UniformOffers(low=float(low), high=float(high))


def parse_config(path=None, overrides=None) -> RunConfig:
    """Load, merge, and validate a run configuration.

    ``overrides`` (a mapping using the same keys as the file) wins over
    the file, which wins over defaults. Raises ConfigError naming the
    offending field on any problem.
    """
    data = dict(_DEFAULTS)
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError("config", f"cannot read {path}: {exc}") from exc
        try:
            loaded = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"malformed JSON in {path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config", "top-level JSON value must be an object")
        data.update(loaded)
    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})

    known = set(_DEFAULTS) | set(_REQUIRED)
    for key in data:
        if key not in known:
            raise ConfigError(key, "unknown configuration key")
    for key in _REQUIRED:
        if key not in data or data[key] is None:
            raise ConfigError(key, "required field is missing")

    beta = _require_number(data, "beta", lo=0.0, hi=1.0, lo_open=True, hi_open=True)
    z = _require_number(data, "z", lo=0.0, lo_open=True)
    c = _require_number(data, "c", lo=0.0, lo_open=True)
    n_periods = _require_int(data, "N", lo=0)
    delta_true = _require_number(data, "delta_true", lo=0.0, hi=1.0)
    len_true = _require_int(data, "len_true", lo=1)
    if data["delta_belief"] is None:
        data["delta_belief"] = delta_true
    if data["len_belief"] is None:
        data["len_belief"] = len_true
    delta_belief = _require_number(data, "delta_belief", lo=0.0, hi=1.0)
    len_belief = _require_int(data, "len_belief", lo=1)
    tol = _require_number(data, "tol", lo=0.0, lo_open=True)
    max_iter = _require_int(data, "max_iter", lo=1)
    max_periods = _require_int(data, "max_periods", lo=1)
    seed = _require_int(data, "seed", lo=0)
    spells = _require_int(data, "spells", lo=1)
    dist = _build_distribution(data["distribution"])

    params = MarketParams(beta=beta, z=z, c=c, n_periods=n_periods)
    for violation in validate_assumptions(dist, params):
        raise ConfigError(_ASSUMPTION_FIELD.get(violation, "config"),
                          f"solver assumption violated: {violation}")

    return RunConfig(beta=beta, z=z, c=c, n_periods=n_periods,
                     delta_true=delta_true, len_true=len_true,
                     delta_belief=delta_belief, len_belief=len_belief,
                     distribution=dist, tol=tol, max_iter=max_iter,
                     max_periods=max_periods, seed=seed, spells=spells)
